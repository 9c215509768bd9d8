#include "srlab/matrix.hpp"

#include <random>
#include <set>
#include <sstream>

namespace srlab {

Matrix::Matrix(FieldPtr f, unsigned rows, unsigned cols)
    : F_(std::move(f)), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {
    if (!F_) throw PreconditionViolation("matrix without a field");
    if (rows == 0 || cols == 0) throw InvalidDimension("matrix dimensions must be positive");
}

Matrix Matrix::identity(const FieldPtr& f, unsigned n) {
    Matrix m(f, n, n);
    for (unsigned i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

uint16_t Matrix::at(unsigned r, unsigned c) const {
    if (r >= rows_ || c >= cols_) throw IndexOutOfRange("matrix index out of range");
    return (*this)(r, c);
}

void Matrix::set(unsigned r, unsigned c, uint16_t v) {
    if (r >= rows_ || c >= cols_) throw IndexOutOfRange("matrix index out of range");
    if (v >= F_->q()) throw IndexOutOfRange("entry index out of range");
    (*this)(r, c) = v;
}

static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (!a.field()->same(*b.field())) throw FieldMismatch("matrices over different fields");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("matrix shapes differ");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r = a;
    r.add_in_place(b);
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r = a;
    const Field& F = *a.F_;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = F.sub(r.a_[i], b.a_[i]);
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!a.field()->same(*b.field())) throw FieldMismatch("matrices over different fields");
    if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
    const Field& F = *a.F_;
    const uint64_t q = F.q();
    const uint16_t* mul = F.mul_raw();
    const uint16_t* add = F.add_raw();
    Matrix r(a.F_, a.rows(), b.cols());
    for (unsigned i = 0; i < a.rows(); ++i) {
        for (unsigned k = 0; k < a.cols(); ++k) {
            const uint16_t aik = a(i, k);
            if (aik == 0) continue;
            const uint16_t* mrow = mul + size_t(aik) * q;
            for (unsigned j = 0; j < b.cols(); ++j) {
                uint16_t t = mrow[b(k, j)];
                r(i, j) = add[size_t(r(i, j)) * q + t];
            }
        }
    }
    return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.field()->same(*b.field()) && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.a_ < b.a_;
}

Matrix Matrix::scale(uint16_t c) const {
    Matrix r(F_, rows_, cols_);
    const uint64_t q = F_->q();
    const uint16_t* mrow = F_->mul_raw() + size_t(c) * q;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mrow[a_[i]];
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(F_, cols_, rows_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::pow(uint64_t k) const {
    if (rows_ != cols_) throw DimensionMismatch("powers need a square matrix");
    Matrix r = identity(F_, rows_);
    Matrix b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

void Matrix::add_in_place(const Matrix& b) {
    require_same_shape(*this, b);
    const Field& F = *F_;
    const uint64_t q = F.q();
    const uint16_t* add = F.add_raw();
    for (size_t i = 0; i < a_.size(); ++i) a_[i] = add[size_t(a_[i]) * q + b.a_[i]];
}

void Matrix::add_scaled_in_place(const Matrix& b, uint16_t c) {
    require_same_shape(*this, b);
    row_axpy(*F_, a_.data(), b.a_.data(), c, a_.size());
}

void row_axpy(const Field& F, uint16_t* dst, const uint16_t* src, uint16_t c, size_t len) {
    if (c == 0) return;
    const uint64_t q = F.q();
    const uint16_t* add = F.add_raw();
    const uint16_t* mrow = F.mul_raw() + size_t(c) * q;
    for (size_t i = 0; i < len; ++i) dst[i] = add[size_t(dst[i]) * q + mrow[src[i]]];
}

// in-place row reduction on a scratch buffer; returns rank
static unsigned eliminate(const Field& F, std::vector<uint16_t>& a, unsigned rows, unsigned cols) {
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned pivot = rows;
        for (unsigned r = rank; r < rows; ++r)
            if (a[size_t(r) * cols + c] != 0) { pivot = r; break; }
        if (pivot == rows) continue;
        if (pivot != rank)
            for (unsigned j = c; j < cols; ++j)
                std::swap(a[size_t(pivot) * cols + j], a[size_t(rank) * cols + j]);
        const uint16_t inv = F.inv(a[size_t(rank) * cols + c]);
        for (unsigned j = c; j < cols; ++j)
            a[size_t(rank) * cols + j] = F.mul(inv, a[size_t(rank) * cols + j]);
        for (unsigned r = rank + 1; r < rows; ++r) {
            const uint16_t f = a[size_t(r) * cols + c];
            if (f == 0) continue;
            const uint16_t nf = F.neg(f);
            row_axpy(F, &a[size_t(r) * cols + c], &a[size_t(rank) * cols + c], nf, cols - c);
        }
        ++rank;
    }
    return rank;
}

unsigned Matrix::rank() const {
    std::vector<uint16_t> buf = a_;
    return eliminate(*F_, buf, rows_, cols_);
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse needs a square matrix");
    const unsigned n = rows_;
    const Field& F = *F_;
    // Gauss-Jordan on [A | I]
    std::vector<uint16_t> a(size_t(n) * 2 * n, 0);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) a[size_t(i) * 2 * n + j] = (*this)(i, j);
        a[size_t(i) * 2 * n + n + i] = 1;
    }
    for (unsigned c = 0; c < n; ++c) {
        unsigned pivot = n;
        for (unsigned r = c; r < n; ++r)
            if (a[size_t(r) * 2 * n + c] != 0) { pivot = r; break; }
        if (pivot == n) throw SingularMatrix("matrix is singular");
        if (pivot != c)
            for (unsigned j = 0; j < 2 * n; ++j)
                std::swap(a[size_t(pivot) * 2 * n + j], a[size_t(c) * 2 * n + j]);
        const uint16_t inv = F.inv(a[size_t(c) * 2 * n + c]);
        for (unsigned j = 0; j < 2 * n; ++j)
            a[size_t(c) * 2 * n + j] = F.mul(inv, a[size_t(c) * 2 * n + j]);
        for (unsigned r = 0; r < n; ++r) {
            if (r == c) continue;
            const uint16_t f = a[size_t(r) * 2 * n + c];
            if (f == 0) continue;
            row_axpy(F, &a[size_t(r) * 2 * n], &a[size_t(c) * 2 * n], F.neg(f), 2 * n);
        }
    }
    Matrix out(F_, n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) out(i, j) = a[size_t(i) * 2 * n + n + j];
    return out;
}

bool Matrix::is_zero() const {
    for (uint16_t v : a_)
        if (v != 0) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Matrix Matrix::hconcat(const Matrix& a, const Matrix& b) {
    if (!a.field()->same(*b.field())) throw FieldMismatch("matrices over different fields");
    if (a.rows() != b.rows()) throw DimensionMismatch("row counts differ");
    Matrix r(a.F_, a.rows(), a.cols() + b.cols());
    for (unsigned i = 0; i < a.rows(); ++i) {
        for (unsigned j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (unsigned j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

Matrix Matrix::hconcat(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw PreconditionViolation("nothing to concatenate");
    Matrix r = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) r = hconcat(r, parts[i]);
    return r;
}

Matrix Matrix::vconcat(const Matrix& a, const Matrix& b) {
    if (!a.field()->same(*b.field())) throw FieldMismatch("matrices over different fields");
    if (a.cols() != b.cols()) throw DimensionMismatch("column counts differ");
    Matrix r(a.F_, a.rows() + b.rows(), a.cols());
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (unsigned i = 0; i < b.rows(); ++i)
        for (unsigned j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
    if (!a.field()->same(*b.field())) throw FieldMismatch("matrices over different fields");
    Matrix r(a.F_, a.rows() + b.rows(), a.cols() + b.cols());
    for (unsigned i = 0; i < a.rows(); ++i)
        for (unsigned j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (unsigned i = 0; i < b.rows(); ++i)
        for (unsigned j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
    return r;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& parts) {
    if (parts.empty()) throw PreconditionViolation("nothing to combine");
    Matrix r = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) r = block_diag(r, parts[i]);
    return r;
}

Matrix Matrix::submatrix(unsigned r0, unsigned c0, unsigned nrows, unsigned ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_) throw IndexOutOfRange("submatrix out of range");
    Matrix r(F_, nrows, ncols);
    for (unsigned i = 0; i < nrows; ++i)
        for (unsigned j = 0; j < ncols; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

std::vector<uint16_t> Matrix::row(unsigned r) const {
    if (r >= rows_) throw IndexOutOfRange("row out of range");
    return std::vector<uint16_t>(a_.begin() + size_t(r) * cols_, a_.begin() + size_t(r + 1) * cols_);
}

std::string Matrix::to_text() const {
    std::ostringstream os;
    os << rows_ << " x " << cols_ << " over " << F_->q() << " : ";
    for (unsigned i = 0; i < rows_; ++i) {
        if (i) os << " ; ";
        for (unsigned j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << (*this)(i, j);
        }
    }
    return os.str();
}

Matrix Matrix::from_text(const FieldPtr& f, const std::string& text) {
    std::istringstream is(text);
    unsigned rows = 0, cols = 0;
    uint64_t q = 0;
    std::string tok;
    if (!(is >> rows >> tok >> cols) || tok != "x") throw UsageError("bad matrix text: " + text);
    if (!(is >> tok) || tok != "over" || !(is >> q)) throw UsageError("bad matrix text: " + text);
    if (q != f->q()) throw FieldMismatch("matrix text is over F_" + std::to_string(q));
    if (!(is >> tok) || tok != ":") throw UsageError("bad matrix text: " + text);
    Matrix m(f, rows, cols);
    for (unsigned i = 0; i < rows; ++i) {
        for (unsigned j = 0; j < cols; ++j) {
            if (!(is >> tok) ) throw UsageError("matrix text too short: " + text);
            m.set(i, j, uint16_t(std::stoul(tok)));
        }
        if (i + 1 < rows) {
            if (!(is >> tok) || tok != ";") throw UsageError("bad matrix text: " + text);
        }
    }
    if (is >> tok) throw UsageError("trailing data in matrix text: " + text);
    return m;
}

Matrix Matrix::from_text(const std::string& text) {
    std::istringstream is(text);
    unsigned rows = 0, cols = 0;
    uint64_t q = 0;
    std::string tok;
    if (!(is >> rows >> tok >> cols) || tok != "x") throw UsageError("bad matrix text: " + text);
    if (!(is >> tok) || tok != "over" || !(is >> q)) throw UsageError("bad matrix text: " + text);
    auto fac = factor_u64(q);
    if (fac.size() != 1) throw NonPrimeCharacteristic("matrix text field size is not a prime power");
    return from_text(Field::make(fac[0].first, fac[0].second), text);
}

// ---------------------------------------------------------------- RowSpace

RowSpace::RowSpace(FieldPtr f, size_t width) : F_(std::move(f)), width_(width) {}

void RowSpace::reduce(std::vector<uint16_t>& v) const {
    const Field& F = *F_;
    for (size_t k = 0; k < rows_.size(); ++k) {
        const uint16_t c = v[pivots_[k]];
        if (c != 0) row_axpy(F, v.data(), rows_[k].data(), F.neg(c), width_);
    }
}

bool RowSpace::insert(std::vector<uint16_t> v) {
    if (v.size() != width_) throw DimensionMismatch("row width mismatch");
    reduce(v);
    size_t p = width_;
    for (size_t i = 0; i < width_; ++i)
        if (v[i] != 0) { p = i; break; }
    if (p == width_) return false;
    const uint16_t inv = F_->inv(v[p]);
    for (size_t i = p; i < width_; ++i) v[i] = F_->mul(inv, v[i]);
    // back-substitute into existing rows to keep them fully reduced
    for (size_t k = 0; k < rows_.size(); ++k) {
        const uint16_t c = rows_[k][p];
        if (c != 0) row_axpy(*F_, rows_[k].data(), v.data(), F_->neg(c), width_);
    }
    size_t pos = rows_.size();
    for (size_t k = 0; k < rows_.size(); ++k)
        if (pivots_[k] > p) { pos = k; break; }
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
}

std::vector<uint16_t> RowSpace::residual(std::vector<uint16_t> v) const {
    if (v.size() != width_) throw DimensionMismatch("row width mismatch");
    reduce(v);
    return v;
}

bool RowSpace::contains(std::vector<uint16_t> v) const {
    if (v.size() != width_) throw DimensionMismatch("row width mismatch");
    reduce(v);
    for (uint16_t x : v)
        if (x != 0) return false;
    return true;
}

// ----------------------------------------------------------- companions

Matrix companion_matrix(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("companion of the zero polynomial");
    if (!f.is_monic()) throw NonMonicPolynomial("companion needs a monic polynomial");
    if (f.degree() < 1) throw InvalidDimension("companion needs degree >= 1");
    const unsigned n = unsigned(f.degree());
    const FieldPtr& F = f.field();
    Matrix m(F, n, n);
    for (unsigned i = 0; i + 1 < n; ++i) m(i + 1, i) = 1;
    for (unsigned i = 0; i < n; ++i) m(i, n - 1) = F->neg(f.coeff(i));
    return m;
}

uint64_t matrix_order(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("order needs a square matrix");
    if (m.rank() != m.rows()) throw SingularMatrix("order of a singular matrix");
    uint64_t cap = 1;
    for (unsigned i = 0; i < m.rows(); ++i) {
        cap *= m.field()->q();
        if (cap > (uint64_t(1) << 40)) break; // enough room for any desk-scale order
    }
    Matrix p = m;
    for (uint64_t k = 1; k <= cap; ++k) {
        if (p.is_identity()) return k;
        p = p * m;
    }
    throw OrderCapExceeded("order exceeds q^rows = " + std::to_string(cap));
}

Matrix poly_eval_matrix(const Poly& f, const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("evaluation needs a square matrix");
    if (!f.field()->same(*m.field())) throw FieldMismatch("polynomial over a different field");
    Matrix acc(m.field(), m.rows(), m.cols());
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * m;
        const uint16_t c = f.coeff(unsigned(i));
        if (c != 0)
            for (unsigned d = 0; d < m.rows(); ++d) acc(d, d) = m.field()->add(acc(d, d), c);
    }
    return acc;
}

Poly min_poly(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("minimal polynomial needs a square matrix");
    const unsigned n = m.rows();
    const FieldPtr& F = m.field();
    const size_t w = size_t(n) * n, aug = n + 1;
    // rows: [vec(M^k) | e_k], eliminate on the data part only
    std::vector<std::vector<uint16_t>> rows;
    std::vector<size_t> pivots;
    Matrix p = Matrix::identity(F, n);
    for (unsigned k = 0; k <= n; ++k) {
        std::vector<uint16_t> v(w + aug, 0);
        for (size_t i = 0; i < w; ++i) v[i] = p.flat()[i];
        v[w + k] = 1;
        for (size_t r = 0; r < rows.size(); ++r) {
            const uint16_t c = v[pivots[r]];
            if (c != 0) row_axpy(*F, v.data(), rows[r].data(), F->neg(c), w + aug);
        }
        size_t piv = w;
        for (size_t i = 0; i < w; ++i)
            if (v[i] != 0) { piv = i; break; }
        if (piv == w) {
            std::vector<uint16_t> c(v.begin() + w, v.end());
            Poly g(F, c);
            const uint16_t lead = g.coeff(unsigned(g.degree()));
            if (lead != 1) {
                std::vector<uint16_t> cc = g.coeffs();
                for (auto& x : cc) x = F->mul(x, F->inv(lead));
                g = Poly(F, cc);
            }
            return g;
        }
        const uint16_t inv = F->inv(v[piv]);
        for (size_t i = 0; i < v.size(); ++i) v[i] = F->mul(inv, v[i]);
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        p = p * m;
    }
    throw Error("no dependency among matrix powers; broken elimination");
}

unsigned partial_power_sum_rank(const Matrix& companion, uint64_t a) {
    if (companion.rows() != companion.cols()) throw DimensionMismatch("square matrix expected");
    uint64_t qn = 1;
    for (unsigned i = 0; i < companion.rows(); ++i) qn *= companion.field()->q();
    if (a < 1 || a > qn - 2)
        throw PreconditionViolation("partial sum index " + std::to_string(a) + " outside [1, q^n-2]");
    Matrix sum = Matrix::identity(companion.field(), companion.rows());
    Matrix p = companion;
    for (uint64_t i = 1; i <= a; ++i) {
        sum.add_in_place(p);
        p = p * companion;
    }
    return sum.rank();
}

CompanionPropertyReport companion_property_check(const Matrix& a_g, const Poly& f, uint64_t seed) {
    if (!(a_g == companion_matrix(f)))
        throw NotCompanionOfGivenPolynomial("matrix is not the companion of " + f.to_string());
    const FieldPtr& F = a_g.field();
    const unsigned n = a_g.rows();
    uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= F->q();

    CompanionPropertyReport rep;
    rep.vanishes_on_poly = poly_eval_matrix(f, a_g).is_zero();
    rep.order = matrix_order(a_g);
    rep.order_matches_group = (rep.order == qn - 1);

    // the power set {0} u {A^i}; representable because ord(A) <= q^n - 1
    std::vector<Matrix> powers;
    powers.push_back(Matrix(F, n, n)); // zero
    Matrix p = Matrix::identity(F, n);
    for (uint64_t i = 0; i < rep.order; ++i) {
        powers.push_back(p);
        p = p * a_g;
    }
    std::set<std::vector<uint16_t>> pset;
    for (auto& m : powers) pset.insert(m.flat());

    Matrix total(F, n, n);
    {
        Matrix acc = Matrix::identity(F, n);
        for (uint64_t i = 0; i + 1 < qn; ++i) {
            total.add_in_place(acc);
            acc = acc * a_g;
        }
    }
    rep.full_power_sum_zero = total.is_zero();

    rep.powers_additively_closed = true;
    if (qn <= 81) {
        rep.additive_check_exhaustive = true;
        for (size_t i = 0; i < powers.size() && rep.powers_additively_closed; ++i)
            for (size_t j = i; j < powers.size(); ++j) {
                Matrix s = powers[i];
                s.add_in_place(powers[j]);
                if (!pset.count(s.flat())) { rep.powers_additively_closed = false; break; }
            }
    } else {
        rep.additive_check_exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, powers.size() - 1);
        for (int k = 0; k < 1000; ++k) {
            Matrix s = powers[pick(rng)];
            s.add_in_place(powers[pick(rng)]);
            if (!pset.count(s.flat())) { rep.powers_additively_closed = false; break; }
        }
    }

    // proper partial sums only: the a = q^n - 2 sum is the full sum, zero when
    // the full-power-sum property holds, so full rank can only hold up to q^n - 3
    rep.partial_sums_full_rank = true;
    {
        Matrix sum = Matrix::identity(F, n);
        Matrix acc = a_g;
        for (uint64_t a = 1; a + 3 <= qn; ++a) {
            sum.add_in_place(acc);
            if (sum.rank() != n) { rep.partial_sums_full_rank = false; break; }
            acc = acc * a_g;
        }
    }
    return rep;
}

} // namespace srlab
