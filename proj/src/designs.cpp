#include <srlab/designs.hpp>

#include <random>
#include <utility>

#include <srlab/bounds.hpp>

namespace srlab {

namespace {

// digits of every coordinate, concatenated: F_{q^m}^k -> F_q^{mk}
std::vector<uint16_t> base_digits(const FieldPtr& ext, unsigned m,
                                  const std::vector<uint16_t>& row) {
    if (m == 1) return row;
    std::vector<uint16_t> out;
    out.reserve(row.size() * m);
    for (uint16_t e : row) {
        std::vector<uint16_t> d = ext->digits(e);
        out.insert(out.end(), d.begin(), d.end());
    }
    return out;
}

uint16_t power_basis_alpha(const FieldPtr& ext, unsigned m) {
    if (m == 1) return 1;
    std::vector<uint16_t> e1(m, 0);
    e1[1] = 1;
    return ext->from_digits(e1);
}

// F_q-structure of an F_{q^m}-row set: every row times every generator power
void insert_ext_span(RowSpace& acc, const FieldPtr& ext, unsigned m,
                     const std::vector<std::vector<uint16_t>>& rows) {
    const uint16_t alpha = power_basis_alpha(ext, m);
    for (const auto& r : rows) {
        std::vector<uint16_t> scaled = r;
        for (unsigned u = 0; u < m; ++u) {
            acc.insert(base_digits(ext, m, scaled));
            if (u + 1 < m)
                for (auto& e : scaled) e = ext->mul(e, alpha);
        }
    }
}

// All s-dimensional subspaces of F^k, one reduced echelon basis each.
void foreach_subspace(const FieldPtr& ext, unsigned k, unsigned s,
                      const std::function<void(const std::vector<std::vector<uint16_t>>&)>& fn) {
    if (s == 0) {
        fn({});
        return;
    }
    const uint16_t q = ext->q();
    std::vector<unsigned> piv(s);
    for (unsigned i = 0; i < s; ++i) piv[i] = i;
    while (true) {
        std::vector<bool> is_piv(k, false);
        for (unsigned p : piv) is_piv[p] = true;
        std::vector<std::pair<unsigned, unsigned>> cells;
        for (unsigned i = 0; i < s; ++i)
            for (unsigned c = piv[i] + 1; c < k; ++c)
                if (!is_piv[c]) cells.emplace_back(i, c);
        std::vector<std::vector<uint16_t>> rows(s, std::vector<uint16_t>(k, 0));
        for (unsigned i = 0; i < s; ++i) rows[i][piv[i]] = 1;
        std::vector<uint16_t> odo(cells.size(), 0);
        while (true) {
            fn(rows);
            size_t pos = 0;
            while (pos < cells.size()) {
                auto [ri, ci] = cells[pos];
                if (++odo[pos] == q) {
                    odo[pos] = 0;
                    rows[ri][ci] = 0;
                    ++pos;
                } else {
                    rows[ri][ci] = odo[pos];
                    break;
                }
            }
            if (pos == cells.size()) break;
        }
        int i = int(s) - 1;
        while (i >= 0 && piv[i] == k - s + unsigned(i)) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = unsigned(i) + 1; j < s; ++j) piv[j] = piv[j - 1] + 1;
    }
}

} // namespace

SystemH::SystemH(FieldPtr ext, unsigned k,
                 std::vector<std::vector<std::vector<uint16_t>>> block_bases)
    : ext_(std::move(ext)), k_(k), bases_(std::move(block_bases)) {
    if (k_ == 0) throw InvalidDimension("ambient dimension must be positive");
    m_ = ext_->is_prime_field() ? 1 : ext_->degree_over_base();
    base_ = ext_->is_prime_field() ? ext_ : ext_->base();
    if (bases_.empty()) throw PreconditionViolation("a system needs at least one block");
    RowSpace span(ext_, k_);
    for (const auto& basis : bases_) {
        if (basis.empty()) throw PreconditionViolation("a block basis may not be empty");
        RowSpace indep(base_, size_t(m_) * k_);
        for (const auto& v : basis) {
            if (v.size() != k_)
                throw DimensionMismatch("block vector length differs from the ambient k");
            for (uint16_t e : v)
                if (e >= ext_->q()) throw IndexOutOfRange("element index outside the extension");
            if (!indep.insert(base_digits(ext_, m_, v)))
                throw PreconditionViolation("block basis vectors are dependent over the base field");
            span.insert(v);
        }
    }
    if (span.dim() != k_)
        throw PreconditionViolation("blocks do not span the ambient space over the extension");
}

const std::vector<std::vector<uint16_t>>& SystemH::block_basis(unsigned i) const {
    if (i >= bases_.size()) throw IndexOutOfRange("block index out of range");
    return bases_[i];
}

unsigned SystemH::total_dim() const {
    unsigned n = 0;
    for (const auto& b : bases_) n += unsigned(b.size());
    return n;
}

Shape SystemH::shape() const {
    Shape sh;
    for (const auto& b : bases_) {
        sh.rows.push_back(m_);
        sh.cols.push_back(unsigned(b.size()));
    }
    return sh;
}

SystemH code_to_system(const SumRankCode& c) {
    std::vector<std::vector<uint16_t>> gen = extension_generator(c);
    const unsigned m = c.shape().rows[0];
    FieldPtr ext = m == 1 ? c.field() : canonical_extension(c.field(), m);
    const unsigned k = unsigned(gen.size());
    std::vector<std::vector<std::vector<uint16_t>>> bases;
    size_t col = 0;
    for (unsigned i = 0; i < c.shape().blocks(); ++i) {
        std::vector<std::vector<uint16_t>> basis;
        for (unsigned j = 0; j < c.shape().cols[i]; ++j, ++col) {
            std::vector<uint16_t> v(k);
            for (unsigned r = 0; r < k; ++r) v[r] = gen[r][col];
            basis.push_back(std::move(v));
        }
        bases.push_back(std::move(basis));
    }
    return SystemH(std::move(ext), k, std::move(bases));
}

SumRankCode system_to_code(const SystemH& H) {
    const unsigned k = H.k();
    const unsigned m = H.m();
    const Shape sh = H.shape();
    const FieldPtr& ext = H.ext();
    const uint16_t alpha = power_basis_alpha(ext, m);
    std::vector<SumRankWord> words;
    for (unsigned r = 0; r < k; ++r) {
        std::vector<uint16_t> row;
        row.reserve(H.total_dim());
        for (unsigned i = 0; i < H.blocks(); ++i)
            for (const auto& v : H.block_basis(i)) row.push_back(v[r]);
        std::vector<uint16_t> scaled = std::move(row);
        for (unsigned u = 0; u < m; ++u) {
            words.push_back(from_vector_form(scaled, sh, ext));
            if (u + 1 < m)
                for (auto& e : scaled) e = ext->mul(e, alpha);
        }
    }
    return SumRankCode::from_span(H.base(), sh, words);
}

DesignCheck design_check(const SystemH& H, DesignParams p, uint64_t budget) {
    const unsigned k = H.k();
    if (p.s >= k)
        throw PreconditionViolation("subspace dimension " + std::to_string(p.s) +
                                    " must be below the ambient k = " + std::to_string(k));
    BigInt count = gaussian_binomial(k, p.s, uint16_t(H.ext()->q()));
    if (count > budget)
        throw EnumerationBudgetExceeded("scan of " + count.str() +
                                        " subspaces exceeds the enumeration budget");
    const FieldPtr& ext = H.ext();
    const FieldPtr& base = H.base();
    const unsigned m = H.m();
    const size_t width = size_t(m) * k;
    std::vector<std::vector<std::vector<uint16_t>>> hrows(H.blocks());
    for (unsigned i = 0; i < H.blocks(); ++i)
        for (const auto& v : H.block_basis(i)) hrows[i].push_back(base_digits(ext, m, v));

    DesignCheck out{true, 0, {}};
    bool first = true;
    foreach_subspace(ext, k, p.s, [&](const std::vector<std::vector<uint16_t>>& w) {
        RowSpace wq(base, width);
        insert_ext_span(wq, ext, m, w);
        unsigned sum = 0;
        for (unsigned i = 0; i < H.blocks(); ++i) {
            RowSpace joint = wq;
            unsigned grew = 0;
            for (const auto& hr : hrows[i])
                if (joint.insert(hr)) ++grew;
            sum += H.block_dim(i) - grew; // dim(H + W) growth gives the intersection
        }
        if (first || sum > out.max_sum) {
            first = false;
            out.max_sum = sum;
            out.witness = w;
        }
    });
    out.verdict = out.max_sum <= p.A;
    return out;
}

SystemDistanceCheck system_distance_check(const SumRankCode& c, uint64_t budget) {
    SystemH H = code_to_system(c);
    const unsigned n = c.shape().total_cols();
    const unsigned d = c.min_distance(budget);
    const unsigned k = H.k();
    DesignCheck dc = design_check(H, DesignParams{k - 1, n - d}, budget);
    return SystemDistanceCheck{n, d, k, dc.max_sum, dc.max_sum == n - d, dc.verdict};
}

BigInt design_list_size(const SumRankCode& c, uint64_t budget) {
    const unsigned n = c.shape().total_cols();
    const unsigned d = c.min_distance(budget);
    return boost::multiprecision::pow(BigInt(c.field()->q()), n - d);
}

PeriodicSubspace::PeriodicSubspace(FieldPtr ext, unsigned k, unsigned s,
                                   std::vector<std::vector<uint16_t>> m_basis,
                                   std::vector<std::vector<uint16_t>> offsets)
    : ext_(std::move(ext)), k_(k), s_(s), m_basis_(std::move(m_basis)),
      offsets_(std::move(offsets)) {
    if (k_ == 0) throw InvalidDimension("ambient dimension must be positive");
    if (s_ >= k_)
        throw PreconditionViolation("periodicity dimension s must be below the ambient k");
    if (offsets_.empty()) throw PreconditionViolation("a periodic subspace needs a block");
    for (const auto& o : offsets_) {
        if (o.size() != k_) throw DimensionMismatch("offset length differs from the ambient k");
        for (uint16_t e : o)
            if (e >= ext_->q()) throw IndexOutOfRange("element index outside the extension");
    }
    RowSpace span(ext_, k_);
    for (const auto& v : m_basis_) {
        if (v.size() != k_)
            throw DimensionMismatch("basis vector length differs from the ambient k");
        for (uint16_t e : v)
            if (e >= ext_->q()) throw IndexOutOfRange("element index outside the extension");
        if (!span.insert(v))
            throw PreconditionViolation("periodicity basis vectors are dependent");
    }
    if (span.dim() > s_)
        throw PreconditionViolation("periodicity subspace exceeds dimension s");
}

PeriodicSubspace random_periodic_subspace(const FieldPtr& ext, unsigned k, unsigned t,
                                          unsigned s, unsigned dim_m, uint64_t seed) {
    if (dim_m > s) throw PreconditionViolation("requested dimension exceeds s");
    if (s >= k) throw PreconditionViolation("periodicity dimension s must be below the ambient k");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint16_t> pick(0, uint16_t(ext->q() - 1));
    RowSpace span(ext, k);
    std::vector<std::vector<uint16_t>> basis;
    while (basis.size() < dim_m) {
        std::vector<uint16_t> v(k);
        for (auto& e : v) e = pick(rng);
        if (span.insert(v)) basis.push_back(std::move(v));
    }
    std::vector<std::vector<uint16_t>> offs(t, std::vector<uint16_t>(k, 0));
    for (auto& o : offs)
        for (auto& e : o) e = pick(rng);
    return PeriodicSubspace(ext, k, s, std::move(basis), std::move(offs));
}

TraceCheck periodic_trace_check(const PeriodicSubspace& T, const SystemH& H,
                                unsigned limit, uint64_t budget) {
    if (!T.ext()->same(*H.ext()))
        throw FieldMismatch("periodic subspace lives over a different extension");
    if (T.k() != H.k()) throw DimensionMismatch("ambient dimensions differ");
    if (T.blocks() != H.blocks()) throw ShapeMismatch("block counts differ");
    const FieldPtr& ext = H.ext();
    const FieldPtr& base = H.base();
    const unsigned m = H.m();
    const unsigned k = H.k();
    const uint16_t q = base->q();
    const unsigned dim_m = unsigned(T.m_basis().size());
    BigInt m_size = boost::multiprecision::pow(BigInt(ext->q()), dim_m);
    if (m_size > budget)
        throw EnumerationBudgetExceeded("periodicity subspace of " + m_size.str() +
                                        " elements exceeds the enumeration budget");

    // all elements of M, by coefficient odometer over the extension
    std::vector<std::vector<uint16_t>> elems;
    std::vector<uint16_t> coeff(dim_m, 0);
    while (true) {
        std::vector<uint16_t> v(k, 0);
        for (unsigned j = 0; j < dim_m; ++j) {
            if (!coeff[j]) continue;
            for (unsigned c = 0; c < k; ++c)
                v[c] = ext->add(v[c], ext->mul(coeff[j], T.m_basis()[j][c]));
        }
        elems.push_back(std::move(v));
        size_t pos = 0;
        while (pos < dim_m && ++coeff[pos] == ext->q()) coeff[pos++] = 0;
        if (pos == dim_m) break;
    }

    TraceCheck out{BigInt(1), 0, true, true};
    for (unsigned i = 0; i < H.blocks(); ++i) {
        RowSpace h(base, size_t(m) * k);
        for (const auto& v : H.block_basis(i)) h.insert(base_digits(ext, m, v));
        const auto& off = T.offsets()[i];
        uint64_t hits = 0;
        bool has_zero = false;
        for (const auto& e : elems) {
            std::vector<uint16_t> x(k);
            bool zero = true;
            for (unsigned c = 0; c < k; ++c) {
                x[c] = ext->add(off[c], e[c]);
                if (x[c]) zero = false;
            }
            if (h.contains(base_digits(ext, m, x))) {
                ++hits;
                if (zero) has_zero = true;
            }
        }
        if (hits == 0) {
            out.size = 0;
            out.log_size = 0;
            out.linear = false;
            break;
        }
        unsigned e = 0;
        uint64_t rest = hits;
        while (rest % q == 0) {
            rest /= q;
            ++e;
        }
        if (rest != 1) throw Error("trace set size is not a power of q");
        out.size *= BigInt(hits);
        out.log_size += e;
        out.linear = out.linear && has_zero;
    }
    out.verdict = out.size <= boost::multiprecision::pow(BigInt(q), limit);
    return out;
}

} // namespace srlab
