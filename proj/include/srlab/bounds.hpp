#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "srlab/sumrank.hpp"

namespace srlab {

using Rational = boost::multiprecision::cpp_rational;

// Ordinary binomial coefficient; 0 when r > n.
BigInt binomial(uint64_t n, uint64_t r);

// Number of r-dimensional subspaces of F_q^n.
BigInt gaussian_binomial(unsigned n, unsigned r, uint16_t q);

// gamma_q = prod_{i>=1} (1 - q^{-i})^{-1}, approximated by a truncated
// product with a certified rational sandwich: lower <= gamma_q <= upper and
// upper - lower < tol.
struct GammaEstimate {
    double value;    // midpoint of the sandwich
    unsigned terms;  // factors kept in the truncated product
    Rational lower;
    Rational upper;
};
GammaEstimate gamma_q(uint16_t q, double tol);

// true iff [n r]_q < gamma_q * q^{r(n-r)}, decided rigorously through the
// rational sandwich
bool gaussian_bound_check(unsigned n, unsigned r, uint16_t q);

// tuples (w_1,...,w_t) of non-negative integers summing to `total` with
// every part at most `cap`
struct CompositionSpec {
    unsigned total = 0;
    unsigned parts = 0;
    unsigned cap = 0;
};

enum class CompositionMode {
    dp,          // exact, by dynamic programming
    closed_form, // inclusion-exclusion over ordinary binomials; equals dp
    upper_bound, // C(total + parts - 1, parts - 1), the uncapped count
};

BigInt compositions_count(const CompositionSpec& spec, CompositionMode mode);

enum class RankCountMode {
    exact,       // [cols r]_q * prod_{j<r} (q^rows - q^j)
    plain_bound, // q^{r(rows + cols - r)}; a hypothesis, not a theorem --
                 // the exact count exceeds it at e.g. rows=cols=2, r=1, q=3
    gamma_bound, // ceil(gamma_q * q^{r(rows + cols - r)}); provably dominates
};

BigInt rank_matrix_count(unsigned rows, unsigned cols, unsigned r, uint16_t q,
                         RankCountMode mode);

// instances with exact >= plain_bound, scanned over 1 <= r <= min(rows, cols)
struct RankBoundFinding {
    unsigned rows;
    unsigned cols;
    unsigned r;
    uint16_t q;
    BigInt exact;
    BigInt bound;
};
std::vector<RankBoundFinding> rank_bound_violations(unsigned max_rows,
                                                    unsigned max_cols, uint16_t q);

// C(r+t-1, t-1) * q^{r(n + max cols) - floor(r^2/t)}: an upper bound on the
// number of words at sum-rank distance exactly r from any fixed center (the
// exponent floor rounds the true rational exponent upward).  The
// gamma-corrected variant multiplies by gamma_q^t, which is what makes the
// per-block rank-count step sound.
BigInt sphere_intersection_bound(unsigned r, const Shape& shape, unsigned n,
                                 uint16_t q, bool gamma_corrected = false);

enum class BoundVariant { plain, gamma_corrected };

// 1 + (tau - floor((d-1)/2)) * q^{tau(n + max cols + t - 1)}, the list-size
// bound at decoding radius tau; gamma_corrected multiplies the second term
// by gamma_q^t, rounded up.
BigInt generic_list_bound(unsigned n, const Shape& shape, unsigned d, unsigned tau,
                          uint16_t q, BoundVariant variant);

// The four constructed code families, keyed by their block layout.
enum class Family {
    uniform4, // t blocks of 2 x 4:       [(4|...|4),    2(2t-1), 2]
    uniform8, // t blocks of 2 x 8:       [(8|...|8),    4(2t-1), 2]
    square2n, // t-1 of n x n, one n x 2n: [(n|...|n|2n), 2, t(n-1)+1]
    square4n, // t-1 of n x n, one n x 4n: [(n|...|n|4n), 4, t(n-3)+3]
};

std::string family_name(Family f);

// the constructed code behind a family row
SumRankCode family_code(Family fam, const FieldPtr& field, unsigned n, unsigned t);

struct BoundReport {
    Family family;
    uint16_t q;
    unsigned n; // block rows = extension degree (2 for the uniform families)
    unsigned t; // block count
    Shape shape;
    unsigned d; // minimum distance, by the family formula
    unsigned k; // dimension over F_{q^n}
    unsigned N; // total columns = length over the extension
    unsigned tau; // decoding radius used (= t)
    bool precondition_ok; // floor((d-1)/2) < tau <= N - k
    BigInt general_bound;       // generic_list_bound, plain variant
    BigInt closed_form_bound;   // the family's one-line formula
    bool closed_form_agrees;    // false for uniform8: exponent t(5+t) vs t(9+t)
    BigInt gamma_bound;         // generic_list_bound, gamma-corrected
    BigInt design_bound;        // q^{N-d}
    std::optional<BigInt> brute_force_L; // exact max ball occupancy, if scanned
};

// Filled report for one family instance; throws PreconditionViolation with a
// diagnostic when the parameters are inadmissible or the standing assumption
// floor((d-1)/2) < t <= N-k fails.  brute_budget > 0 additionally builds the
// code and runs the exact list check at radius t when it fits the budget.
BoundReport family_bound_report(Family fam, uint16_t q, unsigned n, unsigned t,
                                uint64_t brute_budget = 0);

struct FamilyRow {
    Family family;
    std::string status; // "ok" or the precondition diagnostic
    std::optional<BoundReport> report;
};

// One row per family at (q, n, t); inadmissible families carry a status
// message instead of numbers.
std::vector<FamilyRow> family_table(uint16_t q, unsigned n, unsigned t,
                                    uint64_t brute_budget = 0);

} // namespace srlab
