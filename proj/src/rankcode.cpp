#include "srlab/rankcode.hpp"

#include <set>
#include <string>

#include "srlab/errors.hpp"

namespace srlab {

namespace {

Matrix unflatten(const FieldPtr& f, unsigned rows, unsigned cols,
                 const std::vector<uint16_t>& v) {
    Matrix m(f, rows, cols);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j) m(i, j) = v[size_t(i) * cols + j];
    return m;
}

RowSpace flatten_all(const FieldPtr& f, unsigned rows, unsigned cols,
                     const std::vector<Matrix>& words) {
    RowSpace space(f, size_t(rows) * cols);
    for (const Matrix& w : words) {
        if (w.rows() != rows || w.cols() != cols || !w.field()->same(*f))
            throw ShapeMismatch("word does not match the ambient space");
        space.insert(w.flat());
    }
    return space;
}

} // namespace

RankCode::RankCode(FieldPtr field, unsigned rows, unsigned cols,
                   std::vector<Matrix> basis)
    : F_(std::move(field)),
      rows_(rows),
      cols_(cols),
      basis_(std::move(basis)),
      span_(F_, size_t(rows) * cols) {
    if (rows_ == 0 || cols_ == 0) throw DimensionMismatch("empty ambient space");
    for (const Matrix& b : basis_) {
        if (b.rows() != rows_ || b.cols() != cols_ || !b.field()->same(*F_))
            throw ShapeMismatch("basis word does not match the ambient space");
        if (!span_.insert(b.flat()))
            throw PreconditionViolation("basis words are linearly dependent");
    }
}

RankCode RankCode::from_span(FieldPtr field, unsigned rows, unsigned cols,
                             const std::vector<Matrix>& words) {
    RowSpace space = flatten_all(field, rows, cols, words);
    std::vector<Matrix> basis;
    basis.reserve(space.dim());
    for (const auto& row : space.rows())
        basis.push_back(unflatten(field, rows, cols, row));
    return RankCode(std::move(field), rows, cols, std::move(basis));
}

BigInt RankCode::cardinality() const {
    return boost::multiprecision::pow(BigInt(F_->q()), dim());
}

bool RankCode::contains(const Matrix& w) const {
    if (w.rows() != rows_ || w.cols() != cols_ || !w.field()->same(*F_))
        throw ShapeMismatch("word does not match the ambient space");
    return span_.contains(w.flat());
}

void RankCode::span_foreach(uint64_t budget,
                            const std::function<bool(const Matrix&)>& fn) const {
    if (cardinality() > budget)
        throw EnumerationBudgetExceeded("span of size q^" + std::to_string(dim()) +
                                        " exceeds the enumeration budget");
    const uint16_t q = F_->q();
    bool stop = false;
    std::function<void(size_t, const Matrix&)> rec = [&](size_t i, const Matrix& acc) {
        if (stop) return;
        if (i == basis_.size()) {
            if (!fn(acc)) stop = true;
            return;
        }
        rec(i + 1, acc);
        for (uint16_t c = 1; c < q && !stop; ++c) {
            Matrix t = acc;
            t.add_scaled_in_place(basis_[i], c);
            rec(i + 1, t);
        }
    };
    rec(0, Matrix(F_, rows_, cols_));
}

unsigned RankCode::min_distance(uint64_t budget) const {
    if (min_distance_) return *min_distance_;
    if (basis_.empty()) throw PreconditionViolation("the zero code has no distance");
    unsigned best = rows_ < cols_ ? rows_ : cols_;
    bool first = true;
    span_foreach(budget, [&](const Matrix& w) {
        if (first) { // zero word comes first
            first = false;
            return true;
        }
        unsigned r = w.rank();
        if (r < best) best = r;
        return best > 1;
    });
    min_distance_ = best;
    return best;
}

RankCode code_from_orbit(const Matrix& w, const OrthoGroup& g) {
    if (w.cols() != g.form().size())
        throw DimensionMismatch("generator matrix width must match the form size");
    if (w.rank() != w.rows())
        throw PreconditionViolation("generator matrix must have full row rank");
    const FieldPtr& f = w.field();
    std::set<std::vector<uint16_t>> orbit;
    std::vector<Matrix> words;
    for (const Matrix& t : g.elements()) {
        Matrix x = w * t;
        if (orbit.insert(x.flat()).second) words.push_back(x);
    }
    RankCode code = RankCode::from_span(f, w.rows(), w.cols(), words);
    // the orbit plus zero is linear exactly when it fills its own span
    BigInt set_size = BigInt(orbit.size()) + 1;
    if (set_size != code.cardinality())
        throw OrbitNotLinear("orbit of size " + std::to_string(orbit.size()) +
                             " plus zero is not an F_q-subspace");
    return code;
}

SumResult code_sum(const RankCode& a, const RankCode& b) {
    if (a.ambient_rows() != b.ambient_rows() || a.ambient_cols() != b.ambient_cols() ||
        !a.field()->same(*b.field()))
        throw ShapeMismatch("summands live in different ambient spaces");
    std::vector<Matrix> words = a.basis();
    words.insert(words.end(), b.basis().begin(), b.basis().end());
    RankCode sum = RankCode::from_span(a.field(), a.ambient_rows(), a.ambient_cols(),
                                       words);
    bool direct = sum.dim() == a.dim() + b.dim();
    return SumResult{std::move(sum), direct};
}

BigInt singleton_rank_bound(unsigned m, unsigned n_cols, unsigned d, uint16_t q) {
    unsigned lo = m < n_cols ? m : n_cols;
    unsigned hi = m < n_cols ? n_cols : m;
    if (d < 1 || d > lo)
        throw InvalidDistance("distance must lie in [1, min(m, n)]");
    return boost::multiprecision::pow(BigInt(q), hi * (lo - d + 1));
}

bool is_mrd(const RankCode& c) {
    unsigned d = c.min_distance();
    return c.cardinality() ==
           singleton_rank_bound(c.ambient_rows(), c.ambient_cols(), d, c.field()->q());
}

namespace {

// n x width matrix with an identity block starting at column `at`
Matrix placed_identity(const FieldPtr& f, unsigned n, unsigned width, unsigned at) {
    Matrix m(f, n, width);
    for (unsigned i = 0; i < n; ++i) m(i, at + i) = 1;
    return m;
}

} // namespace

RankCode c1_family(const FieldPtr& field, unsigned n, unsigned extra_cols,
                   unsigned f_index) {
    if (n < 1) throw PreconditionViolation("block size must be at least 1");
    if (extra_cols > 2) throw PreconditionViolation("column padding is 0, 1, or 2");
    Matrix ag = companion_matrix(find_primitive_poly(field, n, f_index));
    AVariant variant = extra_cols == 0   ? AVariant::A1
                       : extra_cols == 1 ? AVariant::A2
                                         : AVariant::A3;
    FormKind kind = extra_cols == 0   ? FormKind::S2v
                    : extra_cols == 1 ? FormKind::S2v1_1
                                      : FormKind::S2v2;
    auto g1 = OrthoGroup::cyclic(build_a_matrix(ag, variant),
                                 form_matrix(kind, n, field));
    const unsigned width = 2 * n + extra_cols;
    RankCode c1 = code_from_orbit(placed_identity(field, n, width, 0), g1);
    RankCode c11 = code_from_orbit(placed_identity(field, n, width, n), g1);
    return code_sum(c1, c11).code;
}

RankCode c2_family(const FieldPtr& field, unsigned n, unsigned extra_cols,
                   unsigned f_index, unsigned g_index, bool allow_identical) {
    if (n < 1) throw PreconditionViolation("block size must be at least 1");
    if (extra_cols > 2) throw PreconditionViolation("column padding is 0, 1, or 2");
    Matrix a1 = build_a_matrix(companion_matrix(find_primitive_poly(field, n, f_index)),
                               AVariant::A1);
    Matrix b1 = build_a_matrix(companion_matrix(find_primitive_poly(field, n, g_index)),
                               AVariant::A1);
    FormKind kind = extra_cols == 0   ? FormKind::S2v
                    : extra_cols == 1 ? FormKind::S2v1_1
                                      : FormKind::S2v2;
    auto g2 = OrthoGroup::abelian_product(a1, b1, paired_form(kind, n, field),
                                          allow_identical);
    const unsigned width = 4 * n + extra_cols;
    RankCode d1 = code_from_orbit(placed_identity(field, n, width, 0), g2);
    RankCode d11 = code_from_orbit(placed_identity(field, n, width, 2 * n), g2);
    RankCode d1p = code_from_orbit(placed_identity(field, n, width, n), g2);
    RankCode d11p = code_from_orbit(placed_identity(field, n, width, 3 * n), g2);
    RankCode dsum1 = code_sum(d1, d11).code;
    RankCode dsum2 = code_sum(d1p, d11p).code;
    return code_sum(dsum1, dsum2).code;
}

RankCode gabidulin_code(const FieldPtr& field, unsigned n, unsigned k) {
    if (n < 1) throw PreconditionViolation("block size must be at least 1");
    if (k < 1 || k > n) throw InvalidDimension("dimension must lie in [1, n]");
    FieldPtr ext = canonical_extension(field, n);
    const uint16_t q = field->q();
    // power basis 1, x, ..., x^{n-1} of the extension
    std::vector<uint16_t> basis_pts(n);
    for (unsigned j = 0; j < n; ++j) {
        std::vector<uint16_t> digits(n, 0);
        digits[j] = 1;
        basis_pts[j] = ext->from_digits(digits);
    }
    std::vector<Matrix> words;
    uint64_t qi = 1;
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned s = 0; s < n; ++s) {
            uint16_t scale = basis_pts[s];
            Matrix m(field, n, n);
            for (unsigned j = 0; j < n; ++j) {
                uint16_t val = ext->mul(scale, ext->pow(basis_pts[j], qi));
                std::vector<uint16_t> digits = ext->digits(val);
                for (unsigned r = 0; r < n; ++r) m(r, j) = digits[r];
            }
            words.push_back(std::move(m));
        }
        qi *= q;
    }
    RankCode code = RankCode::from_span(field, n, n, words);
    if (code.dim() != n * k)
        throw Error("linearized-polynomial words are unexpectedly dependent");
    return code;
}

bool choice_invariance_check(const FieldPtr& field, unsigned n) {
    RankCode a = c1_family(field, n, 0, 0);
    RankCode b = c1_family(field, n, 0, 1);
    return a.ambient_rows() == b.ambient_rows() &&
           a.ambient_cols() == b.ambient_cols() && a.dim() == b.dim() &&
           a.min_distance() == b.min_distance() && is_mrd(a) == is_mrd(b);
}

} // namespace srlab
