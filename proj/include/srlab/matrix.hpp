#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srlab/field.hpp"

namespace srlab {

/// Dense row-major matrix over a table-backed finite field.
class Matrix {
  public:
    Matrix() = default;
    Matrix(FieldPtr f, unsigned rows, unsigned cols); // zero-filled
    static Matrix identity(const FieldPtr& f, unsigned n);

    const FieldPtr& field() const { return F_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    uint16_t operator()(unsigned r, unsigned c) const { return a_[size_t(r) * cols_ + c]; }
    uint16_t& operator()(unsigned r, unsigned c) { return a_[size_t(r) * cols_ + c]; }
    uint16_t at(unsigned r, unsigned c) const;
    void set(unsigned r, unsigned c, uint16_t v);

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
    friend bool operator<(const Matrix& a, const Matrix& b); // ordering for sets

    Matrix scale(uint16_t c) const;
    Matrix transpose() const;
    Matrix pow(uint64_t k) const; // square matrices
    unsigned rank() const;
    Matrix inverse() const; // SingularMatrix when not invertible
    bool is_zero() const;
    bool is_identity() const;

    void add_in_place(const Matrix& b);
    void add_scaled_in_place(const Matrix& b, uint16_t c); // this += c*b

    static Matrix hconcat(const Matrix& a, const Matrix& b);
    static Matrix hconcat(const std::vector<Matrix>& parts);
    static Matrix vconcat(const Matrix& a, const Matrix& b);
    static Matrix block_diag(const Matrix& a, const Matrix& b);
    static Matrix block_diag(const std::vector<Matrix>& parts);
    Matrix submatrix(unsigned r0, unsigned c0, unsigned nrows, unsigned ncols) const;

    const std::vector<uint16_t>& flat() const { return a_; }
    std::vector<uint16_t> row(unsigned r) const;

    /// "rows x cols over q : e .. e ; e .. e" with canonical element indices.
    std::string to_text() const;
    static Matrix from_text(const FieldPtr& f, const std::string& text);
    /// Builds the canonical field F_q from the header of the text form.
    static Matrix from_text(const std::string& text);

  private:
    FieldPtr F_;
    unsigned rows_ = 0, cols_ = 0;
    std::vector<uint16_t> a_;
};

/// dst[i] += c * src[i] for i < len, on raw canonical indices.
void row_axpy(const Field& F, uint16_t* dst, const uint16_t* src, uint16_t c, size_t len);

/// Incremental reduced row space over a field; rows are coordinate vectors of
/// a fixed width.  Used for span bases, membership and intersection ranks.
class RowSpace {
  public:
    RowSpace(FieldPtr f, size_t width);

    /// Reduces v against the space; inserts it when independent.
    /// Returns true iff the dimension grew.
    bool insert(std::vector<uint16_t> v);
    bool contains(std::vector<uint16_t> v) const;
    /// Fully reduced remainder of v; zero at every pivot position.
    std::vector<uint16_t> residual(std::vector<uint16_t> v) const;
    unsigned dim() const { return unsigned(rows_.size()); }
    size_t width() const { return width_; }
    const std::vector<std::vector<uint16_t>>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

  private:
    void reduce(std::vector<uint16_t>& v) const;
    FieldPtr F_;
    size_t width_;
    std::vector<std::vector<uint16_t>> rows_; // normalized, pivot-sorted
    std::vector<size_t> pivots_;
};

/// Companion matrix of a monic polynomial of degree >= 1: ones on the
/// subdiagonal, last column (-a_0, ..., -a_{n-1}).
Matrix companion_matrix(const Poly& f);

/// Multiplicative order with a hard cap of q^rows iterations.
uint64_t matrix_order(const Matrix& m);

/// f(M) via Horner's scheme.
Matrix poly_eval_matrix(const Poly& f, const Matrix& m);

/// Minimal monic polynomial of a square matrix.
Poly min_poly(const Matrix& m);

/// rank(I + A + ... + A^a) for 1 <= a <= q^n - 2.
unsigned partial_power_sum_rank(const Matrix& companion, uint64_t a);

struct CompanionPropertyReport {
    bool vanishes_on_poly = false;       // f(A) = 0
    bool powers_additively_closed = false; // {0} u {A^i} closed under +
    bool additive_check_exhaustive = true; // false when sampled
    bool order_matches_group = false;    // ord(A) = q^n - 1
    uint64_t order = 0;
    bool full_power_sum_zero = false;    // sum of all q^n - 1 powers = 0
    bool partial_sums_full_rank = false; // rank n for every proper partial sum
    bool all() const {
        return vanishes_on_poly && powers_additively_closed && order_matches_group &&
               full_power_sum_zero && partial_sums_full_rank;
    }
};

/// Checks the defining properties of the companion matrix of a primitive
/// polynomial.  The additive-closure check is exhaustive for q^n <= 81 and
/// uses 1000 seeded random pairs otherwise.
CompanionPropertyReport companion_property_check(const Matrix& a_g, const Poly& f,
                                                 uint64_t seed = 0);

} // namespace srlab
