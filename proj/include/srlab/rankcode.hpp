#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "srlab/ortho.hpp"

namespace srlab {

using BigInt = boost::multiprecision::cpp_int;

// F_q-linear space of m x n matrices, stored as a basis only.
class RankCode {
public:
    RankCode(FieldPtr field, unsigned rows, unsigned cols, std::vector<Matrix> basis);

    // reduces an arbitrary generating set to a basis
    static RankCode from_span(FieldPtr field, unsigned rows, unsigned cols,
                              const std::vector<Matrix>& words);

    const FieldPtr& field() const { return F_; }
    unsigned ambient_rows() const { return rows_; }
    unsigned ambient_cols() const { return cols_; }
    const std::vector<Matrix>& basis() const { return basis_; }
    unsigned dim() const { return unsigned(basis_.size()); }
    BigInt cardinality() const; // q^dim
    bool contains(const Matrix& w) const;

    // visits every span element exactly once, the zero word first; stops
    // early when fn returns false; refuses to start past the budget
    void span_foreach(uint64_t budget,
                      const std::function<bool(const Matrix&)>& fn) const;

    // exhaustive minimum rank over nonzero words; cached once computed
    unsigned min_distance(uint64_t budget = kDistanceBudget) const;

    static constexpr uint64_t kDistanceBudget = 10000000;

private:
    FieldPtr F_;
    unsigned rows_;
    unsigned cols_;
    std::vector<Matrix> basis_;
    RowSpace span_;
    mutable std::optional<unsigned> min_distance_;
};

struct SumResult {
    RankCode code;
    bool direct; // the two summands intersect trivially
};

// {w g : g in G} plus the zero word, verified to be F_q-linear
RankCode code_from_orbit(const Matrix& w, const OrthoGroup& g);

SumResult code_sum(const RankCode& a, const RankCode& b);

// q^{max(m,n) (min(m,n) - d + 1)}
BigInt singleton_rank_bound(unsigned m, unsigned n_cols, unsigned d, uint16_t q);

bool is_mrd(const RankCode& c);

// Cyclic-group family: primitive f -> companion -> A1/A2/A3 -> <A> orbit
// codes from (I 0) and (0 I) row generators, then their sum.  extra_cols
// pads the ambient with 0, 1, or 2 zero columns (matching A2/A3).
RankCode c1_family(const FieldPtr& field, unsigned n, unsigned extra_cols,
                   unsigned f_index);

// Product-group family over 4n (+ pad) columns: two primitive polynomials,
// four orbit codes from the block-position row generators, summed.
RankCode c2_family(const FieldPtr& field, unsigned n, unsigned extra_cols,
                   unsigned f_index, unsigned g_index,
                   bool allow_identical = false);

// evaluations of q-linearized polynomials of q-degree < k on the power
// basis of the degree-n extension, written as n x n matrices over F_q
RankCode gabidulin_code(const FieldPtr& field, unsigned n, unsigned k);

// same (shape, size, distance, bound verdict) for primitive indices 0 and 1
bool choice_invariance_check(const FieldPtr& field, unsigned n);

} // namespace srlab
