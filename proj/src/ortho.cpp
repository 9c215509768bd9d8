#include "srlab/ortho.hpp"

#include <numeric>
#include <set>

#include "srlab/errors.hpp"

namespace srlab {

std::string form_kind_name(FormKind kind) {
    switch (kind) {
        case FormKind::S2v: return "S_2v";
        case FormKind::S2v1_1: return "S_2v1_1";
        case FormKind::S2v1_z: return "S_2v1_z";
        case FormKind::S2v2: return "S_2v2";
    }
    throw Error("unknown form kind");
}

namespace {

Matrix hyperbolic_block(const FieldPtr& f, unsigned nu) {
    Matrix s(f, 2 * nu, 2 * nu);
    for (unsigned i = 0; i < nu; ++i) {
        s.set(i, nu + i, 1);
        s.set(nu + i, i, 1);
    }
    return s;
}

Matrix definite_tail(FormKind kind, const FieldPtr& f, uint16_t z) {
    switch (kind) {
        case FormKind::S2v:
            throw Error("hyperbolic form has no definite tail");
        case FormKind::S2v1_1: {
            Matrix d(f, 1, 1);
            d.set(0, 0, f->from_int(1));
            return d;
        }
        case FormKind::S2v1_z: {
            Matrix d(f, 1, 1);
            d.set(0, 0, z);
            return d;
        }
        case FormKind::S2v2: {
            Matrix d(f, 2, 2);
            d.set(0, 0, f->from_int(1));
            d.set(1, 1, f->neg(z));
            return d;
        }
    }
    throw Error("unknown form kind");
}

BilinearForm assemble(FormKind kind, unsigned nu, const FieldPtr& f, Matrix hyper,
                      bool paired) {
    uint16_t z = 0;
    if (kind == FormKind::S2v1_z || kind == FormKind::S2v2) z = nonsquare_z(f).v;
    Matrix m = kind == FormKind::S2v
                   ? std::move(hyper)
                   : Matrix::block_diag(hyper, definite_tail(kind, f, z));
    return BilinearForm{std::move(m), kind, nu, z, paired};
}

} // namespace

BilinearForm form_matrix(FormKind kind, unsigned nu, const FieldPtr& field) {
    if (nu < 1) throw PreconditionViolation("form index must be at least 1");
    return assemble(kind, nu, field, hyperbolic_block(field, nu), false);
}

BilinearForm paired_form(FormKind kind, unsigned n, const FieldPtr& field) {
    if (n < 1) throw PreconditionViolation("form index must be at least 1");
    Matrix s2n = hyperbolic_block(field, n);
    return assemble(kind, 2 * n, field, Matrix::block_diag(s2n, s2n), true);
}

bool is_orthogonal(const Matrix& t, const Matrix& s) {
    if (t.rows() != t.cols()) throw DimensionMismatch("orthogonality needs a square matrix");
    if (s.rows() != s.cols() || s.rows() != t.rows())
        throw DimensionMismatch("matrix and form sizes differ");
    return t * s * t.transpose() == s;
}

bool is_orthogonal(const Matrix& t, const BilinearForm& s) {
    return is_orthogonal(t, s.matrix);
}

Matrix build_a_matrix(const Matrix& a, AVariant variant) {
    if (a.rows() != a.cols()) throw DimensionMismatch("square matrix expected");
    Matrix a1 = Matrix::block_diag(a, a.inverse().transpose());
    if (variant == AVariant::A1) return a1;
    Matrix one = Matrix::identity(a.field(), variant == AVariant::A2 ? 1 : 2);
    return Matrix::block_diag(a1, one);
}

OrthoGroup::OrthoGroup(GroupKind kind, std::vector<Matrix> generators,
                       BilinearForm form, uint64_t order)
    : kind_(kind),
      generators_(std::move(generators)),
      form_(std::move(form)),
      order_(order),
      memo_(std::make_shared<Memo>()) {}

OrthoGroup OrthoGroup::cyclic(const Matrix& a1, const BilinearForm& form) {
    if (!is_orthogonal(a1, form))
        throw NotOrthogonal("generator does not preserve the form");
    uint64_t order = matrix_order(a1);
    return OrthoGroup(GroupKind::cyclic, {a1}, form, order);
}

OrthoGroup OrthoGroup::abelian_product(const Matrix& a1, const Matrix& b1,
                                       const BilinearForm& form,
                                       bool allow_identical) {
    if (a1.rows() != a1.cols() || b1.rows() != b1.cols() || a1.rows() != b1.rows())
        throw DimensionMismatch("the two generators must be square of equal size");
    if (form.size() < 2 * a1.rows() || form.size() > 2 * a1.rows() + 2)
        throw DimensionMismatch("form size must be twice the generator size plus the tail");
    if (a1 == b1 && !allow_identical)
        throw IdenticalGenerators("the two block generators coincide");
    const unsigned tail = form.size() - 2 * a1.rows();
    const FieldPtr& f = a1.field();
    Matrix g1 = Matrix::block_diag(a1, Matrix::identity(f, a1.rows() + tail));
    Matrix g2 = Matrix::block_diag(Matrix::identity(f, a1.rows()), b1);
    if (tail > 0) g2 = Matrix::block_diag(g2, Matrix::identity(f, tail));
    for (const Matrix* g : {&g1, &g2})
        if (!is_orthogonal(*g, form))
            throw NotOrthogonal("generator does not preserve the form");
    if (!(g1 * g2 == g2 * g1)) throw Error("block generators fail to commute");
    uint64_t order = matrix_order(a1) * matrix_order(b1);
    return OrthoGroup(GroupKind::abelian_product, {std::move(g1), std::move(g2)},
                      form, order);
}

const std::vector<Matrix>& OrthoGroup::elements() const {
    if (order_ > kEnumerationCap)
        throw EnumerationBudgetExceeded("group order " + std::to_string(order_) +
                                        " exceeds the enumeration cap");
    std::call_once(memo_->once, [this] {
        std::vector<Matrix> out;
        out.reserve(order_);
        std::set<std::vector<uint16_t>> seen;
        if (kind_ == GroupKind::cyclic) {
            Matrix p = Matrix::identity(generators_[0].field(), generators_[0].rows());
            do {
                if (!seen.insert(p.flat()).second)
                    throw Error("duplicate element during cyclic enumeration");
                out.push_back(p);
                p = p * generators_[0];
            } while (!p.is_identity());
        } else {
            Matrix pa = Matrix::identity(generators_[0].field(), generators_[0].rows());
            do {
                Matrix pb = pa;
                do {
                    if (!seen.insert(pb.flat()).second)
                        throw Error("duplicate element during product enumeration");
                    out.push_back(pb);
                    pb = pb * generators_[1];
                } while (!(pb == pa));
                pa = pa * generators_[0];
            } while (!pa.is_identity());
        }
        if (out.size() != order_)
            throw Error("enumerated " + std::to_string(out.size()) +
                        " elements, expected " + std::to_string(order_));
        memo_->list = std::move(out);
    });
    return memo_->list;
}

bool OrthoGroup::all_elements_orthogonal() const {
    for (const Matrix& m : elements())
        if (!is_orthogonal(m, form_)) return false;
    return true;
}

std::map<uint64_t, uint64_t> OrthoGroup::element_order_histogram() const {
    std::map<uint64_t, uint64_t> hist;
    for (const Matrix& m : elements()) ++hist[matrix_order(m)];
    return hist;
}

uint64_t OrthoGroup::max_element_order() const {
    return element_order_histogram().rbegin()->first;
}

bool OrthoGroup::has_cyclic_generator() const {
    return max_element_order() == order_;
}

} // namespace srlab
