#include "srlab/sumrank.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "srlab/errors.hpp"

namespace srlab {

unsigned Shape::total_cols() const {
    unsigned n = 0;
    for (unsigned c : cols) n += c;
    return n;
}

size_t Shape::ambient_coords() const {
    size_t n = 0;
    for (size_t i = 0; i < cols.size(); ++i) n += size_t(rows[i]) * cols[i];
    return n;
}

bool Shape::uniform_rows() const {
    for (unsigned r : rows)
        if (r != rows[0]) return false;
    return true;
}

bool Shape::uniform_cols() const {
    for (unsigned c : cols)
        if (c != cols[0]) return false;
    return true;
}

bool Shape::cols_nonincreasing() const {
    for (size_t i = 1; i < cols.size(); ++i)
        if (cols[i] > cols[i - 1]) return false;
    return true;
}

Shape uniform_shape(unsigned rows, unsigned block_cols, unsigned blocks) {
    return Shape{std::vector<unsigned>(blocks, rows),
                 std::vector<unsigned>(blocks, block_cols)};
}

namespace {

void validate_shape(const Shape& s) {
    if (s.rows.size() != s.cols.size() || s.cols.empty())
        throw ShapeMismatch("shape needs matching, nonempty row and column lists");
    for (size_t i = 0; i < s.cols.size(); ++i)
        if (s.rows[i] == 0 || s.cols[i] == 0)
            throw ShapeMismatch("block dimensions must be positive");
}

void require_shape(const SumRankWord& x, const Shape& s) {
    if (x.blocks.size() != s.cols.size())
        throw ShapeMismatch("block count mismatch");
    for (size_t i = 0; i < x.blocks.size(); ++i)
        if (x.blocks[i].rows() != s.rows[i] || x.blocks[i].cols() != s.cols[i])
            throw ShapeMismatch("block " + std::to_string(i) + " has wrong dimensions");
}

} // namespace

Shape SumRankWord::shape() const {
    Shape s;
    for (const Matrix& b : blocks) {
        s.rows.push_back(b.rows());
        s.cols.push_back(b.cols());
    }
    return s;
}

bool SumRankWord::is_zero() const {
    for (const Matrix& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

std::vector<uint16_t> SumRankWord::flat() const {
    std::vector<uint16_t> v;
    for (const Matrix& b : blocks) {
        const auto& f = b.flat();
        v.insert(v.end(), f.begin(), f.end());
    }
    return v;
}

SumRankWord zero_word(const FieldPtr& f, const Shape& shape) {
    validate_shape(shape);
    SumRankWord w;
    for (size_t i = 0; i < shape.cols.size(); ++i)
        w.blocks.emplace_back(f, shape.rows[i], shape.cols[i]);
    return w;
}

SumRankWord word_from_flat(const FieldPtr& f, const Shape& shape,
                           const std::vector<uint16_t>& v) {
    if (v.size() != shape.ambient_coords())
        throw ShapeMismatch("flat length does not match the shape");
    SumRankWord w = zero_word(f, shape);
    size_t at = 0;
    for (Matrix& b : w.blocks) {
        for (unsigned i = 0; i < b.rows(); ++i)
            for (unsigned j = 0; j < b.cols(); ++j) b(i, j) = v[at++];
    }
    return w;
}

unsigned sumrank_weight(const SumRankWord& x) {
    unsigned w = 0;
    for (const Matrix& b : x.blocks) w += b.rank();
    return w;
}

unsigned sumrank_distance(const SumRankWord& x, const SumRankWord& y) {
    if (x.blocks.size() != y.blocks.size()) throw ShapeMismatch("block count mismatch");
    unsigned w = 0;
    for (size_t i = 0; i < x.blocks.size(); ++i) w += (x.blocks[i] - y.blocks[i]).rank();
    return w;
}

std::vector<uint16_t> to_vector_form(const SumRankWord& x, const FieldPtr& ext) {
    const unsigned m = ext->degree_over_base();
    std::vector<uint16_t> out;
    for (const Matrix& b : x.blocks) {
        if (b.rows() != m)
            throw ShapeMismatch("block rows must equal the extension degree");
        if (m > 1 && !ext->base()->same(*b.field()))
            throw ShapeMismatch("extension does not sit over the block field");
        if (m == 1 && !ext->same(*b.field()))
            throw ShapeMismatch("degree-one form needs the same field");
        std::vector<uint16_t> digits(m);
        for (unsigned j = 0; j < b.cols(); ++j) {
            for (unsigned u = 0; u < m; ++u) digits[u] = b(u, j);
            out.push_back(ext->from_digits(digits));
        }
    }
    return out;
}

SumRankWord from_vector_form(const std::vector<uint16_t>& v, const Shape& shape,
                             const FieldPtr& ext) {
    validate_shape(shape);
    const unsigned m = ext->degree_over_base();
    if (v.size() != shape.total_cols())
        throw ShapeMismatch("vector length does not match the shape");
    FieldPtr base = m == 1 ? ext : ext->base();
    SumRankWord w = zero_word(base, shape);
    size_t at = 0;
    for (Matrix& b : w.blocks) {
        if (b.rows() != m)
            throw ShapeMismatch("block rows must equal the extension degree");
        for (unsigned j = 0; j < b.cols(); ++j) {
            std::vector<uint16_t> digits = ext->digits(v[at++]);
            for (unsigned u = 0; u < m; ++u) b(u, j) = digits[u];
        }
    }
    return w;
}

Matrix phi_pad(const Matrix& c, unsigned target_rows) {
    if (c.rows() > target_rows)
        throw TooManyRows("matrix already has more than the target rows");
    if (c.rows() == target_rows) return c;
    return Matrix::vconcat(c, Matrix(c.field(), target_rows - c.rows(), c.cols()));
}

SumRankCode::SumRankCode(FieldPtr field, Shape shape, std::vector<SumRankWord> basis)
    : F_(std::move(field)),
      shape_(std::move(shape)),
      basis_(std::move(basis)),
      span_(F_, shape_.ambient_coords()) {
    validate_shape(shape_);
    for (const SumRankWord& w : basis_) {
        require_shape(w, shape_);
        for (const Matrix& b : w.blocks)
            if (!b.field()->same(*F_)) throw FieldMismatch("block over a different field");
        if (!span_.insert(w.flat()))
            throw PreconditionViolation("basis words are linearly dependent");
    }
}

SumRankCode SumRankCode::from_span(FieldPtr field, Shape shape,
                                   const std::vector<SumRankWord>& words) {
    validate_shape(shape);
    RowSpace space(field, shape.ambient_coords());
    for (const SumRankWord& w : words) {
        require_shape(w, shape);
        space.insert(w.flat());
    }
    std::vector<SumRankWord> basis;
    basis.reserve(space.dim());
    for (const auto& row : space.rows())
        basis.push_back(word_from_flat(field, shape, row));
    return SumRankCode(std::move(field), std::move(shape), std::move(basis));
}

BigInt SumRankCode::cardinality() const {
    return boost::multiprecision::pow(BigInt(F_->q()), dim());
}

bool SumRankCode::contains(const SumRankWord& w) const {
    require_shape(w, shape_);
    return span_.contains(w.flat());
}

const std::vector<std::vector<uint16_t>>& SumRankCode::reduced_rows() const {
    return span_.rows();
}

std::vector<uint16_t> SumRankCode::residual(const std::vector<uint16_t>& flat) const {
    return span_.residual(flat);
}

namespace {

// DFS over offset + all F_q-combinations of the given flat rows; the pure
// offset comes first
void flat_span_foreach(const FieldPtr& F, const std::vector<std::vector<uint16_t>>& rows,
                       std::vector<uint16_t> acc,
                       const std::function<bool(const std::vector<uint16_t>&)>& fn) {
    const uint16_t q = F->q();
    const size_t width = acc.size();
    bool stop = false;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (stop) return;
        if (i == rows.size()) {
            if (!fn(acc)) stop = true;
            return;
        }
        rec(i + 1);
        for (uint16_t c = 1; c < q && !stop; ++c) {
            // step the accumulator from (c-1) to c times rows[i]
            row_axpy(*F, acc.data(), rows[i].data(), F->sub(c, uint16_t(c - 1)), width);
            rec(i + 1);
        }
        if (!stop) row_axpy(*F, acc.data(), rows[i].data(), F->neg(uint16_t(q - 1)), width);
    };
    rec(0);
}

} // namespace

void SumRankCode::span_foreach(uint64_t budget,
                               const std::function<bool(const SumRankWord&)>& fn) const {
    if (cardinality() > budget)
        throw EnumerationBudgetExceeded("span of size q^" + std::to_string(dim()) +
                                        " exceeds the enumeration budget");
    std::vector<std::vector<uint16_t>> rows;
    rows.reserve(basis_.size());
    for (const auto& w : basis_) rows.push_back(w.flat());
    flat_span_foreach(F_, rows, std::vector<uint16_t>(shape_.ambient_coords(), 0),
                      [&](const std::vector<uint16_t>& v) {
                          return fn(word_from_flat(F_, shape_, v));
                      });
}

namespace {

// sum of per-block ranks of a flat word, using preallocated scratch blocks
unsigned flat_weight(const Shape& shape, std::vector<Matrix>& scratch,
                     const std::vector<uint16_t>& v) {
    unsigned w = 0;
    size_t at = 0;
    for (size_t b = 0; b < scratch.size(); ++b) {
        Matrix& m = scratch[b];
        for (unsigned i = 0; i < shape.rows[b]; ++i)
            for (unsigned j = 0; j < shape.cols[b]; ++j) m(i, j) = v[at++];
        w += m.rank();
    }
    return w;
}

std::vector<Matrix> make_scratch(const FieldPtr& f, const Shape& shape) {
    std::vector<Matrix> scratch;
    for (size_t i = 0; i < shape.cols.size(); ++i)
        scratch.emplace_back(f, shape.rows[i], shape.cols[i]);
    return scratch;
}

} // namespace

namespace {

// Multiplication by the canonical generator alpha of the degree-m extension,
// written in the power basis: it acts on digit columns as a left factor.
Matrix alpha_mult_matrix(const FieldPtr& base, unsigned m, const FieldPtr& ext) {
    Matrix mult(base, m, m);
    std::vector<uint16_t> e1(m, 0);
    e1[1] = 1;
    uint16_t alpha = ext->from_digits(e1);
    for (unsigned u = 0; u < m; ++u) {
        std::vector<uint16_t> au(m, 0);
        au[u] = 1;
        std::vector<uint16_t> col = ext->digits(ext->mul(alpha, ext->from_digits(au)));
        for (unsigned r = 0; r < m; ++r) mult(r, u) = col[r];
    }
    return mult;
}

} // namespace

std::optional<unsigned> SumRankCode::k_over_extension() const {
    if (ext_k_) return *ext_k_;
    std::optional<unsigned> result;
    if (shape_.uniform_rows()) {
        const unsigned m = shape_.rows[0];
        if (m == 1) {
            result = dim();
        } else {
            try {
                FieldPtr ext = canonical_extension(F_, m);
                Matrix mult = alpha_mult_matrix(F_, m, ext);
                bool closed = true;
                for (const SumRankWord& w : basis_) {
                    SumRankWord scaled;
                    for (const Matrix& b : w.blocks) scaled.blocks.push_back(mult * b);
                    if (!contains(scaled)) { closed = false; break; }
                }
                if (closed && dim() % m == 0) result = dim() / m;
            } catch (const OrderCapExceeded&) {
                result = std::nullopt; // extension too large to certify
            }
        }
    }
    ext_k_ = result;
    return result;
}

namespace {

// Flats of the basis reordered as w, alpha w, ..., alpha^{m-1} w per
// extension-scalar generator; valid only for closure-certified codes.
std::vector<std::vector<uint16_t>> aligned_word_flats(const SumRankCode& c, unsigned m,
                                                      const Matrix& mult) {
    RowSpace acc(c.field(), c.shape().ambient_coords());
    std::vector<std::vector<uint16_t>> out;
    for (const SumRankWord& b : c.basis()) {
        if (out.size() == c.dim()) break;
        if (acc.contains(b.flat())) continue;
        SumRankWord w = b;
        for (unsigned s = 0; s < m; ++s) {
            std::vector<uint16_t> fl = w.flat();
            if (!acc.insert(fl))
                throw Error("extension-scalar orbit collapsed unexpectedly");
            out.push_back(std::move(fl));
            SumRankWord next;
            for (const Matrix& blk : w.blocks) next.blocks.push_back(mult * blk);
            w = std::move(next);
        }
    }
    if (out.size() != c.dim())
        throw Error("extension alignment failed to exhaust the code");
    return out;
}

} // namespace

unsigned SumRankCode::min_distance(uint64_t budget) const {
    if (min_distance_) return *min_distance_;
    if (basis_.empty()) throw PreconditionViolation("the zero code has no distance");
    const uint16_t q = F_->q();
    std::vector<Matrix> scratch = make_scratch(F_, shape_);
    unsigned best = ~0u;

    std::optional<unsigned> k = k_over_extension();
    if (k && shape_.rows[0] >= 2) {
        // weight is invariant under nonzero extension scalars, so one word
        // per projective point suffices: leading coefficient fixed to 1
        const unsigned m = shape_.rows[0];
        BigInt reps = 0;
        for (unsigned r0 = 0; r0 < *k; ++r0)
            reps += boost::multiprecision::pow(BigInt(q), m * (*k - 1 - r0));
        if (reps > budget)
            throw EnumerationBudgetExceeded("projective scan of " + reps.str() +
                                            " words exceeds the enumeration budget");
        FieldPtr ext = canonical_extension(F_, m);
        Matrix mult = alpha_mult_matrix(F_, m, ext);
        std::vector<std::vector<uint16_t>> aligned = aligned_word_flats(*this, m, mult);
        for (unsigned r0 = 0; r0 < *k && best > 1; ++r0) {
            std::vector<std::vector<uint16_t>> suffix(aligned.begin() + (r0 + 1) * m,
                                                      aligned.end());
            flat_span_foreach(F_, suffix, aligned[r0 * m],
                              [&](const std::vector<uint16_t>& v) {
                                  unsigned w = flat_weight(shape_, scratch, v);
                                  if (w < best) best = w;
                                  return best > 1;
                              });
        }
        min_distance_ = best;
        return best;
    }

    if (cardinality() > budget)
        throw EnumerationBudgetExceeded("span of size q^" + std::to_string(dim()) +
                                        " exceeds the enumeration budget");
    std::vector<std::vector<uint16_t>> rows;
    for (const auto& w : basis_) rows.push_back(w.flat());
    bool first = true;
    flat_span_foreach(F_, rows, std::vector<uint16_t>(shape_.ambient_coords(), 0),
                      [&](const std::vector<uint16_t>& v) {
                          if (first) { // zero word
                              first = false;
                              return true;
                          }
                          unsigned w = flat_weight(shape_, scratch, v);
                          if (w < best) best = w;
                          return best > 1;
                      });
    min_distance_ = best;
    return best;
}

SumRankCode construction1_code(const RankCode& first,
                               const std::vector<unsigned>& m_list) {
    if (first.ambient_rows() != 2)
        throw BadFirstBlock("first-block code must have two rows");
    if (first.min_distance() != 2)
        throw BadFirstBlock("first-block code must have distance two");
    unsigned prev = 2;
    for (unsigned m : m_list) {
        if (m < 1 || m > prev)
            throw PreconditionViolation("free-block rows must be non-increasing and in [1, 2]");
        prev = m;
    }
    const FieldPtr& f = first.field();
    const unsigned w = first.ambient_cols();
    Shape shape;
    shape.rows.push_back(2);
    shape.cols.push_back(w);
    for (unsigned m : m_list) {
        shape.rows.push_back(m);
        shape.cols.push_back(w);
    }
    const unsigned t = shape.blocks();

    std::vector<SumRankWord> basis;
    for (const Matrix& b : first.basis()) {
        SumRankWord word = zero_word(f, shape);
        word.blocks[0] = b;
        basis.push_back(std::move(word));
    }
    const uint16_t minus_one = f->neg(1);
    for (unsigned i = 1; i < t; ++i)
        for (unsigned r = 0; r < shape.rows[i]; ++r)
            for (unsigned c = 0; c < w; ++c) {
                SumRankWord word = zero_word(f, shape);
                Matrix unit(f, shape.rows[i], w);
                unit(r, c) = 1;
                word.blocks[0] = phi_pad(unit, 2).scale(minus_one);
                word.blocks[i] = std::move(unit);
                basis.push_back(std::move(word));
            }
    return SumRankCode(f, std::move(shape), std::move(basis));
}

namespace {

// all rank-one rows x cols matrices: normalized column vector (first
// nonzero entry 1) times arbitrary nonzero row vector
std::vector<Matrix> rank_one_matrices(const FieldPtr& f, unsigned rows, unsigned cols) {
    const uint16_t q = f->q();
    std::vector<std::vector<uint16_t>> us;
    {
        std::vector<uint16_t> u(rows, 0);
        uint64_t total = 1;
        for (unsigned i = 0; i < rows; ++i) total *= q;
        for (uint64_t code = 1; code < total; ++code) {
            uint64_t r = code;
            for (unsigned i = 0; i < rows; ++i) { u[i] = uint16_t(r % q); r /= q; }
            unsigned lead = 0;
            while (u[lead] == 0) ++lead;
            if (u[lead] == 1) us.push_back(u);
        }
    }
    std::vector<Matrix> out;
    std::vector<uint16_t> v(cols, 0);
    uint64_t total = 1;
    for (unsigned j = 0; j < cols; ++j) total *= q;
    for (uint64_t code = 1; code < total; ++code) {
        uint64_t r = code;
        for (unsigned j = 0; j < cols; ++j) { v[j] = uint16_t(r % q); r /= q; }
        for (const auto& u : us) {
            Matrix m(f, rows, cols);
            for (unsigned i = 0; i < rows; ++i)
                if (u[i] != 0)
                    for (unsigned j = 0; j < cols; ++j) m(i, j) = f->mul(u[i], v[j]);
            out.push_back(std::move(m));
        }
    }
    return out;
}

} // namespace

DistanceVerdict construction1_distance(const RankCode& first, const SumRankCode& code,
                                       uint64_t budget, uint64_t seed) {
    if (code.cardinality() <= budget)
        return DistanceVerdict{code.min_distance(budget), ScanMode::exhaustive};

    const Shape& shape = code.shape();
    unsigned found = 2;

    // no nonzero first-block word may have rank below 2
    bool skip = true;
    first.span_foreach(budget, [&](const Matrix& w) {
        if (skip) { skip = false; return true; }
        if (w.rank() < 2) { found = 1; return false; }
        return true;
    });

    // no padded rank-one free-block word may lie in the first-block code
    for (unsigned i = 1; i < shape.blocks() && found == 2; ++i)
        for (const Matrix& r1 : rank_one_matrices(first.field(), shape.rows[i],
                                                  shape.cols[i]))
            if (first.contains(phi_pad(r1, 2))) { found = 1; break; }

    // a weight-2 word exists: a rank-one free word plus its padded negative,
    // or any first-block basis word when there are no free blocks (two rows
    // cap its rank at 2, and the scan above put it at 2 or more)
    if (shape.blocks() > 1) {
        SumRankWord witness = zero_word(code.field(), shape);
        Matrix unit(code.field(), shape.rows[1], shape.cols[1]);
        unit(0, 0) = 1;
        witness.blocks[1] = unit;
        witness.blocks[0] = phi_pad(unit, 2).scale(code.field()->neg(1));
        if (!code.contains(witness) || sumrank_weight(witness) != 2)
            throw Error("construction1 lost its weight-2 witness");
    }

    // seeded sampling across the whole span as a final spot-check
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint16_t> coeff(0, uint16_t(code.field()->q() - 1));
    std::vector<Matrix> scratch = make_scratch(code.field(), shape);
    std::vector<std::vector<uint16_t>> basis_flats;
    for (const SumRankWord& b : code.basis()) basis_flats.push_back(b.flat());
    for (int s = 0; s < 20000 && found == 2; ++s) {
        std::vector<uint16_t> flat(shape.ambient_coords(), 0);
        bool nonzero = false;
        for (const auto& bf : basis_flats) {
            uint16_t c = coeff(rng);
            if (c == 0) continue;
            nonzero = true;
            row_axpy(*code.field(), flat.data(), bf.data(), c, flat.size());
        }
        if (!nonzero) continue;
        if (flat_weight(shape, scratch, flat) < 2) found = 1;
    }
    return DistanceVerdict{found, ScanMode::proof_guided_partial};
}

namespace {

// Basis reordered as w, alpha w, ..., alpha^{m-1} w per extension-scalar
// generator when the code is closed under them; stored order otherwise.
// Index-aligned bases of this kind make construction2 spans closed under
// the extension scalars too, which the stored orders generally do not.
std::vector<Matrix> extension_aligned_basis(const RankCode& code) {
    const unsigned m = code.ambient_rows();
    if (m == 1) return code.basis();
    FieldPtr ext;
    try {
        ext = canonical_extension(code.field(), m);
    } catch (const OrderCapExceeded&) {
        return code.basis();
    }
    Matrix mult = alpha_mult_matrix(code.field(), m, ext);
    for (const Matrix& b : code.basis())
        if (!code.contains(mult * b)) return code.basis();

    RowSpace acc(code.field(), size_t(code.ambient_rows()) * code.ambient_cols());
    std::vector<Matrix> aligned;
    for (const Matrix& b : code.basis()) {
        if (aligned.size() == code.dim()) break;
        if (acc.contains(b.flat())) continue;
        Matrix w = b;
        for (unsigned s = 0; s < m; ++s) {
            if (!acc.insert(w.flat()))
                throw Error("extension-scalar orbit collapsed unexpectedly");
            aligned.push_back(w);
            w = mult * w;
        }
    }
    if (aligned.size() != code.dim())
        throw Error("extension alignment failed to exhaust the code");
    return aligned;
}

} // namespace

SumRankCode construction2_code(const std::vector<RankCode>& components,
                               const RankCode& tail,
                               const std::vector<std::vector<unsigned>>& pairing) {
    const unsigned d = tail.dim();
    if (!pairing.empty() && pairing.size() != components.size())
        throw PreconditionViolation("one pairing per component, or none");
    for (size_t i = 0; i < components.size(); ++i) {
        const RankCode& comp = components[i];
        if (!comp.field()->same(*tail.field()))
            throw FieldMismatch("component over a different field");
        if (comp.ambient_rows() != tail.ambient_rows())
            throw ShapeMismatch("component row count differs from the tail");
        if (comp.dim() != d)
            throw BasisSizeMismatch("component basis size differs from the tail");
        if (!pairing.empty()) {
            std::vector<bool> seen(d, false);
            if (pairing[i].size() != d)
                throw PreconditionViolation("pairing must permute the basis indices");
            for (unsigned p : pairing[i]) {
                if (p >= d || seen[p])
                    throw PreconditionViolation("pairing must permute the basis indices");
                seen[p] = true;
            }
        }
    }
    Shape shape;
    std::vector<std::vector<Matrix>> comp_bases;
    for (const RankCode& comp : components) {
        shape.rows.push_back(comp.ambient_rows());
        shape.cols.push_back(comp.ambient_cols());
        comp_bases.push_back(extension_aligned_basis(comp));
    }
    shape.rows.push_back(tail.ambient_rows());
    shape.cols.push_back(tail.ambient_cols());
    std::vector<Matrix> tail_basis = extension_aligned_basis(tail);

    std::vector<SumRankWord> basis;
    for (unsigned j = 0; j < d; ++j) {
        SumRankWord word;
        for (size_t i = 0; i < components.size(); ++i) {
            unsigned jj = pairing.empty() ? j : pairing[i][j];
            word.blocks.push_back(comp_bases[i][jj]);
        }
        word.blocks.push_back(tail_basis[j]);
        basis.push_back(std::move(word));
    }
    return SumRankCode(tail.field(), std::move(shape), std::move(basis));
}

BigInt sr_singleton_bound(const std::vector<unsigned>& block_cols, unsigned m,
                          unsigned d, uint16_t q) {
    if (block_cols.empty() || m == 0) throw ShapeMismatch("empty shape");
    unsigned total_min = 0;
    for (size_t i = 0; i < block_cols.size(); ++i) {
        if (block_cols[i] == 0) throw ShapeMismatch("block lengths must be positive");
        if (i > 0 && block_cols[i] > block_cols[i - 1])
            throw ShapeMismatch("block lengths must be non-increasing");
        total_min += std::min(m, block_cols[i]);
    }
    if (d < 1 || d > total_min)
        throw DistanceOutOfRange("distance must lie in [1, sum of min(m, n_i)]");
    unsigned rem = d - 1;
    size_t j = 0;
    while (rem >= std::min(m, block_cols[j])) {
        rem -= std::min(m, block_cols[j]);
        ++j;
    }
    unsigned suffix = 0;
    for (size_t i = j; i < block_cols.size(); ++i) suffix += block_cols[i];
    unsigned exponent = m * suffix - std::max(m, block_cols[j]) * rem;
    return boost::multiprecision::pow(BigInt(q), exponent);
}

bool is_msrd(const SumRankCode& c, unsigned distance) {
    const Shape& s = c.shape();
    unsigned m;
    std::vector<unsigned> lens;
    if (s.uniform_rows()) {
        m = s.rows[0];
        lens = s.cols;
    } else if (s.uniform_cols()) {
        m = s.cols[0];
        lens = s.rows;
    } else {
        throw ShapeMismatch("no uniform side to read as the extension degree");
    }
    std::sort(lens.begin(), lens.end(), std::greater<unsigned>());
    return c.cardinality() == sr_singleton_bound(lens, m, distance, c.field()->q());
}

bool is_msrd(const SumRankCode& c) { return is_msrd(c, c.min_distance()); }

std::vector<std::vector<uint16_t>> extension_generator(const SumRankCode& c) {
    std::optional<unsigned> k = c.k_over_extension();
    if (!k)
        throw NotExtensionLinear("code is not certified linear over the row extension");
    const unsigned m = c.shape().rows[0];
    std::vector<std::vector<uint16_t>> rows;
    if (m == 1) {
        for (const SumRankWord& w : c.basis()) rows.push_back(to_vector_form(w, c.field()));
        return rows;
    }
    FieldPtr ext = canonical_extension(c.field(), m);
    Matrix mult = alpha_mult_matrix(c.field(), m, ext);
    std::vector<std::vector<uint16_t>> aligned = aligned_word_flats(c, m, mult);
    for (unsigned r = 0; r < *k; ++r) {
        SumRankWord w = word_from_flat(c.field(), c.shape(), aligned[size_t(r) * m]);
        rows.push_back(to_vector_form(w, ext));
    }
    return rows;
}

namespace {

// Bijection between cosets of a code and the values of a canonical residual
// at the non-pivot coordinates, packed as a base-q key.
struct CosetIndexer {
    FieldPtr F;
    size_t width;
    std::vector<size_t> free_pos; // non-pivot coordinates
    uint64_t count;               // q^{free_pos.size()}

    CosetIndexer(const SumRankCode& c, uint64_t max_cosets) : F(c.field()) {
        width = c.shape().ambient_coords();
        std::vector<bool> is_pivot(width, false);
        for (const auto& row : c.reduced_rows()) {
            size_t lead = 0;
            while (row[lead] == 0) ++lead;
            is_pivot[lead] = true;
        }
        for (size_t i = 0; i < width; ++i)
            if (!is_pivot[i]) free_pos.push_back(i);
        BigInt total =
            boost::multiprecision::pow(BigInt(F->q()), unsigned(free_pos.size()));
        if (total > max_cosets)
            throw EnumerationBudgetExceeded("coset count q^" +
                                            std::to_string(free_pos.size()) +
                                            " exceeds the enumeration budget");
        count = uint64_t(total);
    }

    uint64_t pack(const std::vector<uint16_t>& residual) const {
        uint64_t key = 0;
        for (size_t i = free_pos.size(); i-- > 0;)
            key = key * F->q() + residual[free_pos[i]];
        return key;
    }

    std::vector<uint16_t> unpack(uint64_t key) const {
        std::vector<uint16_t> v(width, 0);
        for (size_t p : free_pos) {
            v[p] = uint16_t(key % F->q());
            key /= F->q();
        }
        return v;
    }
};

// every single-block rank-one word, embedded in flat coordinates
std::vector<std::vector<uint16_t>> weight_one_moves(const FieldPtr& f, const Shape& shape) {
    std::vector<std::vector<uint16_t>> moves;
    size_t offset = 0;
    for (unsigned b = 0; b < shape.blocks(); ++b) {
        for (const Matrix& r1 : rank_one_matrices(f, shape.rows[b], shape.cols[b])) {
            std::vector<uint16_t> flat(shape.ambient_coords(), 0);
            const auto& entries = r1.flat();
            std::copy(entries.begin(), entries.end(), flat.begin() + offset);
            moves.push_back(std::move(flat));
        }
        offset += size_t(shape.rows[b]) * shape.cols[b];
    }
    return moves;
}

} // namespace

unsigned covering_radius(const SumRankCode& c, uint64_t budget) {
    // Adding one rank-one block word changes the sum-rank weight by at most
    // one, and every weight-w word splits into w of them, so breadth-first
    // distance from the zero coset equals the minimum weight in a coset.
    CosetIndexer idx(c, budget);
    if (idx.count == 1) return 0;
    std::vector<std::vector<uint16_t>> moves = weight_one_moves(c.field(), c.shape());
    const FieldPtr& F = c.field();

    // pre-reduce the moves: residuals add coordinate-wise
    for (auto& mv : moves) mv = c.residual(mv);

    std::vector<uint8_t> seen(idx.count, 0);
    std::vector<uint64_t> frontier{0};
    seen[0] = 1;
    uint64_t reached = 1;
    unsigned radius = 0;
    std::vector<uint16_t> step(idx.width);
    while (reached < idx.count) {
        std::vector<uint64_t> next;
        for (uint64_t key : frontier) {
            std::vector<uint16_t> base = idx.unpack(key);
            for (const auto& mv : moves) {
                for (size_t p : idx.free_pos) step[p] = F->add(base[p], mv[p]);
                uint64_t nk = idx.pack(step);
                if (!seen[nk]) {
                    seen[nk] = 1;
                    ++reached;
                    next.push_back(nk);
                }
            }
        }
        if (next.empty())
            throw Error("coset graph is disconnected; this cannot happen");
        ++radius;
        frontier = std::move(next);
    }
    return radius;
}

ListCheck list_decodable_check(const SumRankCode& c, unsigned tau, uint64_t budget,
                               uint64_t samples, uint64_t seed) {
    const Shape& shape = c.shape();
    const FieldPtr& F = c.field();
    const size_t width = shape.ambient_coords();
    if (c.cardinality() > budget)
        throw EnumerationBudgetExceeded("codeword enumeration alone exceeds the budget");
    const uint64_t n_codewords = uint64_t(c.cardinality());

    std::vector<std::vector<uint16_t>> codewords;
    codewords.reserve(n_codewords);
    {
        std::vector<std::vector<uint16_t>> rows;
        for (const auto& w : c.basis()) rows.push_back(w.flat());
        flat_span_foreach(F, rows, std::vector<uint16_t>(width, 0),
                          [&](const std::vector<uint16_t>& v) {
                              codewords.push_back(v);
                              return true;
                          });
    }

    std::vector<Matrix> scratch = make_scratch(F, shape);
    std::vector<uint16_t> diff(width);
    auto occupancy = [&](const std::vector<uint16_t>& center) {
        uint64_t hits = 0;
        for (const auto& cw : codewords) {
            for (size_t i = 0; i < width; ++i) diff[i] = F->sub(center[i], cw[i]);
            if (flat_weight(shape, scratch, diff) <= tau) ++hits;
        }
        return hits;
    };

    // ball occupancy is constant on cosets of the code, so walking one
    // representative per coset is exact
    bool exact = true;
    std::optional<CosetIndexer> idx;
    try {
        idx.emplace(c, budget / std::max<uint64_t>(n_codewords, 1));
    } catch (const EnumerationBudgetExceeded&) {
        if (samples == 0) throw;
        exact = false;
    }

    uint64_t best = 0;
    if (exact) {
        for (uint64_t key = 0; key < idx->count; ++key)
            best = std::max(best, occupancy(idx->unpack(key)));
    } else {
        // the zero center anchors the lower bound at a ball around a codeword
        best = occupancy(std::vector<uint16_t>(width, 0));
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint16_t> coord(0, uint16_t(F->q() - 1));
        std::vector<uint16_t> center(width);
        for (uint64_t s = 0; s < samples; ++s) {
            for (auto& x : center) x = coord(rng);
            best = std::max(best, occupancy(center));
        }
    }
    return {best, exact};
}

} // namespace srlab
