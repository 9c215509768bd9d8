#pragma once

#include <srlab/sumrank.hpp>

namespace srlab {

/// A tuple of F_q-subspaces H_1, ..., H_t of F_{q^m}^k that together span
/// F_{q^m}^k over the extension.  Each block is stored as an F_q-basis of
/// vectors written in extension-element indices.
class SystemH {
  public:
    SystemH(FieldPtr ext, unsigned k,
            std::vector<std::vector<std::vector<uint16_t>>> block_bases);

    const FieldPtr& ext() const { return ext_; }
    const FieldPtr& base() const { return base_; }
    unsigned k() const { return k_; }
    unsigned m() const { return m_; }
    unsigned blocks() const { return unsigned(bases_.size()); }
    const std::vector<std::vector<uint16_t>>& block_basis(unsigned i) const;
    unsigned block_dim(unsigned i) const { return unsigned(bases_.at(i).size()); }
    /// sum of the block dimensions
    unsigned total_dim() const;
    /// matrix shape of the corresponding sum-rank code: m rows per block
    Shape shape() const;

  private:
    FieldPtr ext_;
    FieldPtr base_;
    unsigned k_;
    unsigned m_;
    std::vector<std::vector<std::vector<uint16_t>>> bases_;
};

/// System read off the columns of a vector-form generator matrix: block i
/// contributes the F_q-span of its columns.  Demands extension linearity
/// and F_q-independent columns within every block.
SystemH code_to_system(const SumRankCode& c);

/// F_q-span of the generator rows obtained by stacking the block bases as
/// column groups; inverse of code_to_system up to basis choice.
SumRankCode system_to_code(const SystemH& H);

struct DesignParams {
    unsigned s; // subspace dimension, below k
    unsigned A; // intersection budget
};

struct DesignCheck {
    bool verdict;     // max_sum <= A
    unsigned max_sum; // max over W of sum_i dim_q(H_i intersect W)
    /// echelon F_{q^m}-basis of a subspace attaining max_sum
    std::vector<std::vector<uint16_t>> witness;
};

/// Exhaustive scan over all s-dimensional F_{q^m}-subspaces W of F_{q^m}^k.
DesignCheck design_check(const SystemH& H, DesignParams p,
                         uint64_t budget = SumRankCode::kScanBudget);

struct SystemDistanceCheck {
    unsigned n;            // code length over the extension
    unsigned d;            // minimum sum-rank distance
    unsigned k;            // dimension over the extension
    unsigned max_sum;      // hyperplane scan result
    bool matches_distance; // max_sum == n - d
    bool design_ok;        // design_check at (k - 1, n - d) passes
};

/// Ties the code's distance to the hyperplane geometry of its system: the
/// worst hyperplane intersection sum must equal n - d exactly.
SystemDistanceCheck system_distance_check(const SumRankCode& c,
                                          uint64_t budget = SumRankCode::kScanBudget);

/// q^{n - d}: list-size bound carried by the subspace-design property.
BigInt design_list_size(const SumRankCode& c,
                        uint64_t budget = SumRankCode::kScanBudget);

/// Product set T = (o_1 + M) x ... x (o_t + M) for a fixed F_{q^m}-subspace
/// M of dimension at most s: every block projection lies in a coset of M.
class PeriodicSubspace {
  public:
    PeriodicSubspace(FieldPtr ext, unsigned k, unsigned s,
                     std::vector<std::vector<uint16_t>> m_basis,
                     std::vector<std::vector<uint16_t>> offsets);

    const FieldPtr& ext() const { return ext_; }
    unsigned k() const { return k_; }
    unsigned s() const { return s_; }
    unsigned blocks() const { return unsigned(offsets_.size()); }
    const std::vector<std::vector<uint16_t>>& m_basis() const { return m_basis_; }
    const std::vector<std::vector<uint16_t>>& offsets() const { return offsets_; }

  private:
    FieldPtr ext_;
    unsigned k_;
    unsigned s_;
    std::vector<std::vector<uint16_t>> m_basis_;
    std::vector<std::vector<uint16_t>> offsets_;
};

/// Seeded stand-in source of periodic subspaces: nothing upstream
/// constructs them, so tests draw random ones.
PeriodicSubspace random_periodic_subspace(const FieldPtr& ext, unsigned k, unsigned t,
                                          unsigned s, unsigned dim_m, uint64_t seed);

struct TraceCheck {
    BigInt size;       // |S| for S = tuples of T landing blockwise in H
    unsigned log_size; // exact log_q |S|; zero when S is empty
    bool linear;       // S closed under addition (contains the zero tuple)
    bool verdict;      // log_size <= limit
};

/// Counts the tuples of T whose block j lands in H_j and compares the size
/// against q^limit.
TraceCheck periodic_trace_check(const PeriodicSubspace& T, const SystemH& H,
                                unsigned limit,
                                uint64_t budget = SumRankCode::kScanBudget);

} // namespace srlab
