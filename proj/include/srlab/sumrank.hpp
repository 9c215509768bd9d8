#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "srlab/rankcode.hpp"

namespace srlab {

// Per-block dimensions of a sum-rank ambient space.
struct Shape {
    std::vector<unsigned> rows;
    std::vector<unsigned> cols;

    unsigned blocks() const { return unsigned(cols.size()); }
    unsigned total_cols() const; // N
    size_t ambient_coords() const;
    bool uniform_rows() const;
    bool uniform_cols() const;
    bool cols_nonincreasing() const;
    friend bool operator==(const Shape& a, const Shape& b) = default;
};

Shape uniform_shape(unsigned rows, unsigned block_cols, unsigned blocks);

struct SumRankWord {
    std::vector<Matrix> blocks;

    Shape shape() const;
    bool is_zero() const;
    std::vector<uint16_t> flat() const;
};

SumRankWord zero_word(const FieldPtr& f, const Shape& shape);
SumRankWord word_from_flat(const FieldPtr& f, const Shape& shape,
                           const std::vector<uint16_t>& v);

unsigned sumrank_weight(const SumRankWord& x);
unsigned sumrank_distance(const SumRankWord& x, const SumRankWord& y);

// Vector form over the degree-m extension of the base field: column j of a
// block becomes the extension element with those digits.  m = block rows.
std::vector<uint16_t> to_vector_form(const SumRankWord& x, const FieldPtr& ext);
SumRankWord from_vector_form(const std::vector<uint16_t>& v, const Shape& shape,
                             const FieldPtr& ext);

// Zero rows appended up to target_rows; rank unchanged.
Matrix phi_pad(const Matrix& c, unsigned target_rows);

// F_q-linear sum-rank code, stored as a basis of words.
class SumRankCode {
public:
    SumRankCode(FieldPtr field, Shape shape, std::vector<SumRankWord> basis);

    static SumRankCode from_span(FieldPtr field, Shape shape,
                                 const std::vector<SumRankWord>& words);

    const FieldPtr& field() const { return F_; }
    const Shape& shape() const { return shape_; }
    const std::vector<SumRankWord>& basis() const { return basis_; }
    unsigned dim() const { return unsigned(basis_.size()); }
    BigInt cardinality() const;
    bool contains(const SumRankWord& w) const;

    void span_foreach(uint64_t budget,
                      const std::function<bool(const SumRankWord&)>& fn) const;

    // exact minimum sum-rank weight over nonzero words; cached.  Scans one
    // word per projective point when extension closure is certified (weight
    // is invariant under nonzero extension scalars), all words otherwise.
    unsigned min_distance(uint64_t budget = kScanBudget) const;

    // dimension over the degree-(uniform rows) extension when the vector
    // form is closed under extension scalars; tested, never assumed
    std::optional<unsigned> k_over_extension() const;

    const std::vector<std::vector<uint16_t>>& reduced_rows() const;

    // Canonical coset representative of a flat vector: the fully reduced
    // remainder against the code's row space.  Linear in the input.
    std::vector<uint16_t> residual(const std::vector<uint16_t>& flat) const;

    static constexpr uint64_t kScanBudget = 10000000;

private:
    FieldPtr F_;
    Shape shape_;
    std::vector<SumRankWord> basis_;
    RowSpace span_;
    mutable std::optional<unsigned> min_distance_;
    mutable std::optional<std::optional<unsigned>> ext_k_;
};

// { (C - sum phi_i(C_i) | C_2 | ... | C_t) } with C from the first-block
// code and the C_i free; first-block code must be 2-row with distance 2.
SumRankCode construction1_code(const RankCode& first,
                               const std::vector<unsigned>& m_list);

enum class ScanMode { exhaustive, proof_guided_partial };

struct DistanceVerdict {
    unsigned distance;
    ScanMode mode;
};

// Distance of a construction1_code output.  Within budget: exhaustive scan.
// Past it: full scan of the first-block code (no nonzero word of rank < 2),
// a membership scan of every padded rank-1 free-block word (none may land in
// the first-block code), a constructed weight-2 witness, and seeded random
// sampling on top.
DistanceVerdict construction1_distance(const RankCode& first,
                                       const SumRankCode& code,
                                       uint64_t budget = SumRankCode::kScanBudget,
                                       uint64_t seed = 1);

// F_q-span of index-paired concatenations (A_{1,j} | ... | A_{t-1,j} | C_j)
// of the component bases and the tail basis.  pairing[i], when given,
// permutes component i's basis order first.
SumRankCode construction2_code(const std::vector<RankCode>& components,
                               const RankCode& tail,
                               const std::vector<std::vector<unsigned>>& pairing = {});

// q^{m sum_{i >= j} n_i - max(m, n_j) delta} at the unique j, delta with
// d - 1 = sum_{i < j} min(m, n_i) + delta; cols must be non-increasing.
BigInt sr_singleton_bound(const std::vector<unsigned>& block_cols, unsigned m,
                          unsigned d, uint16_t q);

// Reads the code in vector form over the uniform-rows extension, or the
// transposed form when only the column count is uniform.
bool is_msrd(const SumRankCode& c);
bool is_msrd(const SumRankCode& c, unsigned distance);

// Generator matrix in vector form: k rows of length total_cols over the
// uniform-rows extension, spanning the code over F_{q^m}.  Demands a
// certified k_over_extension.
std::vector<std::vector<uint16_t>> extension_generator(const SumRankCode& c);

// max over cosets of the minimum sum-rank weight in the coset
unsigned covering_radius(const SumRankCode& c, uint64_t budget = SumRankCode::kScanBudget);

struct ListCheck {
    uint64_t max_occupancy;
    bool exact; // sampled mode only reports a lower bound
};

// max over centers of |ball(center, tau) intersect C|; the occupancy is
// constant on cosets, so exact mode walks one representative per coset
ListCheck list_decodable_check(const SumRankCode& c, unsigned tau,
                               uint64_t budget = SumRankCode::kScanBudget,
                               uint64_t samples = 0, uint64_t seed = 1);

} // namespace srlab
