#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "srlab/matrix.hpp"

namespace srlab {

// The four nonsingular symmetric forms of index nu over F_q (q odd):
// a hyperbolic part [[0,I],[I,0]] of size 2*nu plus a definite tail of
// size 0, 1, or 2.
enum class FormKind { S2v, S2v1_1, S2v1_z, S2v2 };

std::string form_kind_name(FormKind kind);

struct BilinearForm {
    Matrix matrix;
    FormKind kind;
    unsigned nu = 0;
    uint16_t z = 0;     // non-square entry, when the tail uses one
    bool paired = false; // hyperbolic part laid out as block_diag(S_2n, S_2n)

    unsigned size() const { return matrix.rows(); }
};

// The form exactly as displayed: hyperbolic block of size 2*nu up front,
// then the definite tail (), (1), (z), or diag(1, -z).
BilinearForm form_matrix(FormKind kind, unsigned nu, const FieldPtr& field);

// Same index and tail, but the hyperbolic part is two adjacent copies of
// S_2n.  This is the layout the two-generator product group preserves; the
// single-block layout of the same size is cogredient but not preserved.
BilinearForm paired_form(FormKind kind, unsigned n, const FieldPtr& field);

// T S tT = S
bool is_orthogonal(const Matrix& t, const Matrix& s);
bool is_orthogonal(const Matrix& t, const BilinearForm& s);

// Orthogonal companions of an invertible matrix A:
//   A1 = block_diag(A, tA^-1)         size 2n, preserves S_2n
//   A2 = block_diag(A1, 1)            size 2n+1, preserves S_{2n+1,1}
//   A3 = block_diag(A1, 1, 1)         size 2n+2, preserves S_{2n+2}
enum class AVariant { A1, A2, A3 };

Matrix build_a_matrix(const Matrix& a, AVariant variant);

enum class GroupKind { cyclic, abelian_product };

class OrthoGroup {
public:
    // <a1>, order = matrix_order(a1)
    static OrthoGroup cyclic(const Matrix& a1, const BilinearForm& form);
    // {block_diag(a1^i, b1^j)}, order = ord(a1) * ord(b1); a1 and b1 act on
    // the two hyperbolic blocks of a paired form
    static OrthoGroup abelian_product(const Matrix& a1, const Matrix& b1,
                                      const BilinearForm& form,
                                      bool allow_identical = false);

    GroupKind kind() const { return kind_; }
    uint64_t order() const { return order_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    const BilinearForm& form() const { return form_; }

    // full element list, memoized; throws EnumerationBudgetExceeded past 10^6
    const std::vector<Matrix>& elements() const;
    bool all_elements_orthogonal() const;
    std::map<uint64_t, uint64_t> element_order_histogram() const;
    uint64_t max_element_order() const;
    // true iff some element has order equal to the group order
    bool has_cyclic_generator() const;

    static constexpr uint64_t kEnumerationCap = 1000000;

private:
    OrthoGroup(GroupKind kind, std::vector<Matrix> generators, BilinearForm form,
               uint64_t order);

    GroupKind kind_;
    std::vector<Matrix> generators_;
    BilinearForm form_;
    uint64_t order_;

    struct Memo {
        std::once_flag once;
        std::vector<Matrix> list;
    };
    std::shared_ptr<Memo> memo_;
};

} // namespace srlab
