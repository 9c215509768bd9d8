#include <doctest.h>

#include <numeric>
#include <set>

#include "srlab/errors.hpp"
#include "srlab/ortho.hpp"

using namespace srlab;

namespace {

// Orthogonality oracle: check sum_{k,l} T(i,k) S(k,l) T(j,l) = S(i,j)
// entrywise, without going through matrix products.
bool oracle_orthogonal(const Matrix& t, const Matrix& s) {
    const auto& F = t.field();
    const unsigned n = t.rows();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            uint16_t acc = 0;
            for (unsigned k = 0; k < n; ++k)
                for (unsigned l = 0; l < n; ++l)
                    acc = F->add(acc, F->mul(t(i, k), F->mul(s(k, l), t(j, l))));
            if (acc != s(i, j)) return false;
        }
    return true;
}

bool symmetric(const Matrix& m) { return m == m.transpose(); }

Matrix companion_of(const FieldPtr& f, unsigned n, unsigned index = 0) {
    return companion_matrix(find_primitive_poly(f, n, index));
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

} // namespace

TEST_SUITE_BEGIN("ortho");

TEST_CASE("form layouts over F_3") {
    auto f3 = Field::prime(3);

    auto s4 = form_matrix(FormKind::S2v, 2, f3);
    CHECK(s4.matrix.to_text() == "4 x 4 over 3 : 0 0 1 0 ; 0 0 0 1 ; 1 0 0 0 ; 0 1 0 0");
    CHECK(s4.nu == 2);
    CHECK(s4.z == 0);
    CHECK_FALSE(s4.paired);

    auto s3 = form_matrix(FormKind::S2v1_1, 1, f3);
    CHECK(s3.matrix.to_text() == "3 x 3 over 3 : 0 1 0 ; 1 0 0 ; 0 0 1");

    auto s3z = form_matrix(FormKind::S2v1_z, 1, f3);
    CHECK(s3z.z == 2);
    CHECK(s3z.matrix.to_text() == "3 x 3 over 3 : 0 1 0 ; 1 0 0 ; 0 0 2");

    // tail is diag(1, -z); over F_3 with z = 2 that is diag(1, 1)
    auto s4d = form_matrix(FormKind::S2v2, 1, f3);
    CHECK(s4d.z == 2);
    CHECK(s4d.matrix.to_text() == "4 x 4 over 3 : 0 1 0 0 ; 1 0 0 0 ; 0 0 1 0 ; 0 0 0 1");
}

TEST_CASE("form tail uses the field's least non-square") {
    auto f5 = Field::prime(5);
    auto s4d = form_matrix(FormKind::S2v2, 1, f5);
    CHECK(s4d.z == 2);
    CHECK(s4d.matrix(2, 2) == 1);
    CHECK(s4d.matrix(3, 3) == 3); // -2 over F_5

    auto f9 = Field::make(3, 2);
    auto s3z = form_matrix(FormKind::S2v1_z, 1, f9);
    CHECK(s3z.z == nonsquare_z(f9).v);
}

TEST_CASE("forms are symmetric and nonsingular") {
    for (auto q : {3, 5, 7}) {
        auto f = Field::prime(uint16_t(q));
        for (unsigned nu = 1; nu <= 3; ++nu)
            for (auto kind : {FormKind::S2v, FormKind::S2v1_1, FormKind::S2v1_z,
                              FormKind::S2v2}) {
                auto s = form_matrix(kind, nu, f);
                CHECK(symmetric(s.matrix));
                CHECK(s.matrix.rank() == s.size());
                auto p = paired_form(kind, nu, f);
                CHECK(symmetric(p.matrix));
                CHECK(p.matrix.rank() == p.size());
                CHECK(p.nu == 2 * nu);
                CHECK(p.paired);
            }
    }
}

TEST_CASE("paired form is two hyperbolic blocks side by side") {
    auto f3 = Field::prime(3);
    auto p = paired_form(FormKind::S2v, 1, f3);
    CHECK(p.matrix.to_text() == "4 x 4 over 3 : 0 1 0 0 ; 1 0 0 0 ; 0 0 0 1 ; 0 0 1 0");
    auto p1 = paired_form(FormKind::S2v1_1, 1, f3);
    CHECK(p1.size() == 5);
    CHECK(p1.matrix(4, 4) == 1);
    auto p2 = paired_form(FormKind::S2v2, 1, f3);
    CHECK(p2.size() == 6);
    CHECK(p2.matrix(4, 4) == 1);
    CHECK(p2.matrix(5, 5) == f3->neg(2));
}

TEST_CASE("orthogonality check against the oracle") {
    auto f3 = Field::prime(3);
    auto s4 = form_matrix(FormKind::S2v, 2, f3);

    CHECK(is_orthogonal(Matrix::identity(f3, 4), s4));

    Matrix a1 = build_a_matrix(companion_of(f3, 2), AVariant::A1);
    CHECK(is_orthogonal(a1, s4));
    CHECK(oracle_orthogonal(a1, s4.matrix));

    // perturb one entry: no longer orthogonal
    Matrix bad = a1;
    bad(0, 0) = f3->add(bad(0, 0), 1);
    CHECK_FALSE(is_orthogonal(bad, s4));
    CHECK_FALSE(oracle_orthogonal(bad, s4.matrix));

    CHECK_THROWS_AS(is_orthogonal(Matrix::identity(f3, 3), s4), DimensionMismatch);
    CHECK_THROWS_AS(is_orthogonal(Matrix(f3, 2, 3), Matrix::identity(f3, 3)),
                    DimensionMismatch);
}

TEST_CASE("A-variants: shape, order, and form preservation") {
    auto f3 = Field::prime(3);
    Matrix ag = companion_of(f3, 2);

    Matrix a1 = build_a_matrix(ag, AVariant::A1);
    CHECK(a1.rows() == 4);
    CHECK(matrix_order(a1) == 8);
    CHECK(is_orthogonal(a1, form_matrix(FormKind::S2v, 2, f3)));

    Matrix a2 = build_a_matrix(ag, AVariant::A2);
    CHECK(a2.rows() == 5);
    CHECK(matrix_order(a2) == 8);
    CHECK(is_orthogonal(a2, form_matrix(FormKind::S2v1_1, 2, f3)));

    Matrix a3 = build_a_matrix(ag, AVariant::A3);
    CHECK(a3.rows() == 6);
    CHECK(matrix_order(a3) == 8);
    // trailing identity block preserves any diagonal tail, -z included
    CHECK(is_orthogonal(a3, form_matrix(FormKind::S2v2, 2, f3)));

    Matrix a3small = build_a_matrix(companion_of(f3, 1), AVariant::A3);
    CHECK(a3small.rows() == 4);
    CHECK(matrix_order(a3small) == 2);
    CHECK(is_orthogonal(a3small, form_matrix(FormKind::S2v2, 1, f3)));

    CHECK_THROWS_AS(build_a_matrix(Matrix(f3, 2, 2), AVariant::A1), SingularMatrix);
    CHECK_THROWS_AS(build_a_matrix(Matrix(f3, 2, 3), AVariant::A1), DimensionMismatch);
}

TEST_CASE("A1 layout is block_diag(A, transpose of inverse)") {
    for (auto [q, n] : {std::pair<int, int>{3, 2}, {3, 3}, {5, 2}}) {
        auto f = Field::prime(uint16_t(q));
        Matrix ag = companion_of(f, unsigned(n));
        Matrix a1 = build_a_matrix(ag, AVariant::A1);
        CHECK(a1.submatrix(0, 0, n, n) == ag);
        CHECK(a1.submatrix(n, n, n, n) == ag.inverse().transpose());
        CHECK(a1.submatrix(0, n, n, n).is_zero());
        CHECK(a1.submatrix(n, 0, n, n).is_zero());
    }
}

TEST_CASE("cyclic group orders match q^n - 1") {
    struct Case { int q, n; uint64_t order; };
    for (auto c : {Case{3, 2, 8}, Case{5, 1, 4}, Case{3, 3, 26}}) {
        auto f = Field::prime(uint16_t(c.q));
        Matrix a1 = build_a_matrix(companion_of(f, unsigned(c.n)), AVariant::A1);
        auto g = OrthoGroup::cyclic(a1, form_matrix(FormKind::S2v, unsigned(c.n), f));
        CHECK(g.kind() == GroupKind::cyclic);
        CHECK(g.order() == c.order);
        CHECK(g.elements().size() == c.order);
        CHECK(g.all_elements_orthogonal());
        CHECK(g.has_cyclic_generator());
    }
}

TEST_CASE("cyclic group rejects a generator that breaks the form") {
    auto f3 = Field::prime(3);
    auto s4 = form_matrix(FormKind::S2v, 2, f3);
    Matrix bad = Matrix::identity(f3, 4);
    bad(0, 0) = 2;
    CHECK_THROWS_AS(OrthoGroup::cyclic(bad, s4), NotOrthogonal);
}

TEST_CASE("cyclic group elements are distinct and closed") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 2), AVariant::A1);
    auto g = OrthoGroup::cyclic(a1, form_matrix(FormKind::S2v, 2, f3));

    std::set<std::vector<uint16_t>> keys;
    for (const auto& m : g.elements()) keys.insert(m.flat());
    CHECK(keys.size() == g.order());

    for (const auto& x : g.elements()) {
        CHECK(keys.count(x.inverse().flat()) == 1);
        for (const auto& y : g.elements()) CHECK(keys.count((x * y).flat()) == 1);
    }

    // cyclic of order 8: one element of each order 1 and 2, two of order 4,
    // four of order 8
    auto hist = g.element_order_histogram();
    CHECK(hist == std::map<uint64_t, uint64_t>{{1, 1}, {2, 1}, {4, 2}, {8, 4}});
}

TEST_CASE("product group has order (q^n - 1)^2") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 2, 0), AVariant::A1);
    Matrix b1 = build_a_matrix(companion_of(f3, 2, 1), AVariant::A1);
    auto form = paired_form(FormKind::S2v, 2, f3);
    auto g = OrthoGroup::abelian_product(a1, b1, form);

    CHECK(g.kind() == GroupKind::abelian_product);
    CHECK(g.order() == 64);
    CHECK(g.elements().size() == 64);
    std::set<std::vector<uint16_t>> keys;
    for (const auto& m : g.elements()) keys.insert(m.flat());
    CHECK(keys.size() == 64);
    CHECK(g.all_elements_orthogonal());

    // every element order divides q^n - 1; the maximum is q^n - 1, which is
    // less than the group order, so no single generator exists
    auto hist = g.element_order_histogram();
    for (const auto& [ord, count] : hist) CHECK(gcd_u64(ord, 8) == ord);
    CHECK(g.max_element_order() == 8);
    CHECK_FALSE(g.has_cyclic_generator());
}

TEST_CASE("product group multiplication is commutative blockwise") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 2, 0), AVariant::A1);
    Matrix b1 = build_a_matrix(companion_of(f3, 2, 1), AVariant::A1);

    Matrix lhs = Matrix::block_diag(a1, b1) * Matrix::block_diag(a1.pow(2), b1.pow(3));
    Matrix rhs = Matrix::block_diag(a1.pow(2), b1.pow(3)) * Matrix::block_diag(a1, b1);
    CHECK(lhs == rhs);
    CHECK(lhs == Matrix::block_diag(a1.pow(3), b1.pow(4)));
}

TEST_CASE("smallest product group is the Klein four-group") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 1), AVariant::A1);
    // only one primitive polynomial of degree 1 exists over F_3, so reuse it
    auto g = OrthoGroup::abelian_product(a1, a1, paired_form(FormKind::S2v, 1, f3),
                                         /*allow_identical=*/true);
    CHECK(g.order() == 4);
    auto hist = g.element_order_histogram();
    CHECK(hist == std::map<uint64_t, uint64_t>{{1, 1}, {2, 3}});
    CHECK_FALSE(g.has_cyclic_generator());
}

TEST_CASE("product group rejects identical generators unless overridden") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 2), AVariant::A1);
    auto form = paired_form(FormKind::S2v, 2, f3);
    CHECK_THROWS_AS(OrthoGroup::abelian_product(a1, a1, form), IdenticalGenerators);
    auto g = OrthoGroup::abelian_product(a1, a1, form, true);
    CHECK(g.order() == 64);
    CHECK(g.elements().size() == 64);
}

TEST_CASE("product group preserves only the paired layout of the big form") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 2, 0), AVariant::A1);
    Matrix b1 = build_a_matrix(companion_of(f3, 2, 1), AVariant::A1);
    // the single hyperbolic block of size 8 is cogredient to the paired
    // layout but is not preserved by block_diag(a1, b1)
    auto literal = form_matrix(FormKind::S2v, 4, f3);
    CHECK_THROWS_AS(OrthoGroup::abelian_product(a1, b1, literal), NotOrthogonal);
    CHECK_FALSE(is_orthogonal(Matrix::block_diag(a1, b1), literal));
    CHECK(is_orthogonal(Matrix::block_diag(a1, b1), paired_form(FormKind::S2v, 2, f3)));
}

TEST_CASE("product group supports definite tails") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 2, 0), AVariant::A1);
    Matrix b1 = build_a_matrix(companion_of(f3, 2, 1), AVariant::A1);
    for (auto kind : {FormKind::S2v1_1, FormKind::S2v2}) {
        auto g = OrthoGroup::abelian_product(a1, b1, paired_form(kind, 2, f3));
        CHECK(g.order() == 64);
        CHECK(g.all_elements_orthogonal());
    }
}

TEST_CASE("bigger instances stay exhaustive") {
    auto f3 = Field::prime(3);
    Matrix a1 = build_a_matrix(companion_of(f3, 3, 0), AVariant::A1);
    Matrix b1 = build_a_matrix(companion_of(f3, 3, 1), AVariant::A1);
    auto g1 = OrthoGroup::cyclic(a1, form_matrix(FormKind::S2v, 3, f3));
    CHECK(g1.order() == 26);
    CHECK(g1.all_elements_orthogonal());
    auto g2 = OrthoGroup::abelian_product(a1, b1, paired_form(FormKind::S2v, 3, f3));
    CHECK(g2.order() == 676);
    CHECK(g2.elements().size() == 676);
    CHECK(g2.all_elements_orthogonal());

    auto f5 = Field::prime(5);
    Matrix c1 = build_a_matrix(companion_of(f5, 2, 0), AVariant::A1);
    Matrix d1 = build_a_matrix(companion_of(f5, 2, 1), AVariant::A1);
    auto g3 = OrthoGroup::abelian_product(c1, d1, paired_form(FormKind::S2v, 2, f5));
    CHECK(g3.order() == 576);
    CHECK(g3.all_elements_orthogonal());
}

TEST_CASE("element enumeration refuses to exceed the cap") {
    auto f7 = Field::prime(7);
    Matrix a1 = build_a_matrix(companion_of(f7, 4, 0), AVariant::A1);
    Matrix b1 = build_a_matrix(companion_of(f7, 4, 1), AVariant::A1);
    auto g = OrthoGroup::abelian_product(a1, b1, paired_form(FormKind::S2v, 4, f7));
    CHECK(g.order() == uint64_t(2400) * 2400);
    CHECK_THROWS_AS(g.elements(), EnumerationBudgetExceeded);
}

TEST_SUITE_END();
