#include <doctest.h>

#include <random>

#include "srlab/field.hpp"

using namespace srlab;

namespace {

// Independent residue-ring oracle: arithmetic in Z_p[x]/(f) done with plain
// integer vectors, no library code paths.
using IntPoly = std::vector<int>;

IntPoly oracle_mulmod(const IntPoly& a, const IntPoly& b, const IntPoly& f, int p) {
    const int n = int(f.size()) - 1;
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int k = int(prod.size()) - 1; k >= n; --k) {
        int c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < n; ++i) prod[k - n + i] = ((prod[k - n + i] - c * f[i]) % p + p) % p;
    }
    prod.resize(n);
    return prod;
}

bool oracle_is_one(const IntPoly& a) {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

// order of x in Z_p[x]/(f); 0 when x never reaches 1 within p^n steps
long oracle_x_order(const IntPoly& f, int p) {
    const int n = int(f.size()) - 1;
    long cap = 1;
    for (int i = 0; i < n; ++i) cap *= p;
    IntPoly x(n, 0);
    if (n == 1) {
        x[0] = ((-f[0]) % p + p) % p;
    } else {
        x[1] = 1;
    }
    IntPoly acc = x;
    for (long k = 1; k <= cap; ++k) {
        if (oracle_is_one(acc)) return k;
        acc = oracle_mulmod(acc, x, f, p);
    }
    return 0;
}

// primitive monic degree-n polynomials over Z_p in constant-fastest order
std::vector<IntPoly> oracle_primitive_polys(int p, int n) {
    long total = 1;
    for (int i = 0; i < n; ++i) total *= p;
    std::vector<IntPoly> out;
    for (long m = 0; m < total; ++m) {
        IntPoly f(n + 1, 0);
        long r = m;
        for (int i = 0; i < n; ++i) { f[i] = int(r % p); r /= p; }
        f[n] = 1;
        if (oracle_x_order(f, p) == total - 1) out.push_back(f);
    }
    return out;
}

Poly to_poly(const FieldPtr& F, const IntPoly& f) {
    std::vector<uint16_t> c(f.begin(), f.end());
    return Poly(F, c);
}

} // namespace

TEST_SUITE("field") {

TEST_CASE("prime field construction and canonical nonsquare") {
    auto f3 = Field::prime(3);
    CHECK(f3->q() == 3);
    CHECK(f3->characteristic() == 3);
    CHECK(f3->degree() == 1);
    CHECK(nonsquare_z(f3).v == 2);

    auto f5 = Field::prime(5);
    CHECK(nonsquare_z(f5).v == 2);

    CHECK_THROWS_AS(Field::prime(2), EvenCharacteristic);
    CHECK_THROWS_AS(Field::make(2, 1), EvenCharacteristic);
    CHECK_THROWS_AS(Field::prime(9), NonPrimeCharacteristic);
    CHECK_THROWS_AS(Field::prime(15), NonPrimeCharacteristic);
}

TEST_CASE("canonical primitive polynomials match the residue-ring oracle") {
    auto f3 = Field::prime(3);
    auto f5 = Field::prime(5);

    SUBCASE("degree 1 over F_3") {
        auto prim = oracle_primitive_polys(3, 1);
        REQUIRE(!prim.empty());
        CHECK(find_primitive_poly(f3, 1, 0) == to_poly(f3, prim[0]));
        CHECK(find_primitive_poly(f3, 1, 0) == Poly::parse(f3, "x+1"));
    }
    SUBCASE("degree 2 over F_3") {
        auto prim = oracle_primitive_polys(3, 2);
        REQUIRE(prim.size() == 2);
        CHECK(find_primitive_poly(f3, 2, 0) == to_poly(f3, prim[0]));
        CHECK(find_primitive_poly(f3, 2, 1) == to_poly(f3, prim[1]));
        CHECK(find_primitive_poly(f3, 2, 0) == Poly::parse(f3, "x^2+x+2"));
        CHECK_THROWS_AS(find_primitive_poly(f3, 2, 2), IndexOutOfRange);
    }
    SUBCASE("degree 3 over F_3") {
        auto prim = oracle_primitive_polys(3, 3);
        REQUIRE(prim.size() >= 2);
        CHECK(find_primitive_poly(f3, 3, 0) == to_poly(f3, prim[0]));
        CHECK(find_primitive_poly(f3, 3, 1) == to_poly(f3, prim[1]));
        unsigned count = unsigned(prim.size());
        CHECK_THROWS_AS(find_primitive_poly(f3, 3, count), IndexOutOfRange);
    }
    SUBCASE("degree 2 over F_5") {
        auto prim = oracle_primitive_polys(5, 2);
        REQUIRE(prim.size() >= 2);
        CHECK(find_primitive_poly(f5, 2, 0) == to_poly(f5, prim[0]));
        CHECK(find_primitive_poly(f5, 2, 1) == to_poly(f5, prim[1]));
    }
}

TEST_CASE("irreducibility and primitivity predicates") {
    auto f3 = Field::prime(3);
    CHECK(poly_is_irreducible(Poly::parse(f3, "x^2+1")));
    CHECK(poly_is_irreducible(Poly::parse(f3, "x^2+x+2")));
    CHECK_FALSE(poly_is_irreducible(Poly::parse(f3, "x^2+2"))); // (x-1)(x+1)
    CHECK(poly_is_irreducible(Poly::parse(f3, "x")));
    CHECK_FALSE(poly_is_irreducible(Poly::parse(f3, "2")));

    CHECK(poly_is_primitive(Poly::parse(f3, "x^2+x+2")));
    CHECK_FALSE(poly_is_primitive(Poly::parse(f3, "x^2+1"))); // x has order 4
    CHECK(poly_is_primitive(Poly::parse(f3, "x+1")));
    CHECK_FALSE(poly_is_primitive(Poly::parse(f3, "x")));
    CHECK_THROWS_AS(poly_is_primitive(Poly::parse(f3, "2x^2+1")), NonMonicPolynomial);
    CHECK_THROWS_AS(poly_is_irreducible(Poly(f3)), ZeroPolynomial);
}

TEST_CASE("extension field axioms hold exhaustively") {
    auto f9 = Field::make(3, 2);
    REQUIRE(f9->q() == 9);
    CHECK(f9->degree() == 2);
    CHECK(f9->characteristic() == 3);
    REQUIRE(f9->modulus() != nullptr);
    CHECK(*f9->modulus() == Poly::parse(f9->base(), "x^2+x+2"));

    const unsigned q = unsigned(f9->q());
    for (unsigned a = 0; a < q; ++a) {
        CHECK(f9->add(uint16_t(a), 0) == a);
        CHECK(f9->mul(uint16_t(a), 1) == a);
        CHECK(f9->add(uint16_t(a), f9->neg(uint16_t(a))) == 0);
        if (a) CHECK(f9->mul(uint16_t(a), f9->inv(uint16_t(a))) == 1);
        for (unsigned b = 0; b < q; ++b) {
            CHECK(f9->add(uint16_t(a), uint16_t(b)) == f9->add(uint16_t(b), uint16_t(a)));
            CHECK(f9->mul(uint16_t(a), uint16_t(b)) == f9->mul(uint16_t(b), uint16_t(a)));
            // Frobenius is additive in characteristic 3
            uint16_t s = f9->add(uint16_t(a), uint16_t(b));
            CHECK(f9->pow(s, 3) == f9->add(f9->pow(uint16_t(a), 3), f9->pow(uint16_t(b), 3)));
            for (unsigned c = 0; c < q; ++c) {
                uint16_t lhs = f9->mul(uint16_t(a), f9->add(uint16_t(b), uint16_t(c)));
                uint16_t rhs = f9->add(f9->mul(uint16_t(a), uint16_t(b)),
                                       f9->mul(uint16_t(a), uint16_t(c)));
                CHECK(lhs == rhs);
                uint16_t l2 = f9->mul(f9->mul(uint16_t(a), uint16_t(b)), uint16_t(c));
                uint16_t r2 = f9->mul(uint16_t(a), f9->mul(uint16_t(b), uint16_t(c)));
                CHECK(l2 == r2);
            }
        }
    }
}

TEST_CASE("the residue of x is primitive in canonical extensions") {
    auto f9 = Field::make(3, 2);
    // x has digit vector (0,1), i.e. canonical index 3
    CHECK(f9->element_order(3) == 8);
    auto f27 = Field::make(3, 3);
    CHECK(f27->element_order(3) == 26);
    auto f25 = Field::make(5, 2);
    CHECK(f25->element_order(5) == 24);
}

TEST_CASE("digit and residue round trips") {
    for (auto F : {Field::make(3, 2), Field::make(3, 3), Field::make(5, 2)}) {
        for (uint16_t a = 0; a < F->q(); ++a) {
            CHECK(F->from_digits(F->digits(a)) == a);
            auto pc = F->prime_coeffs(a);
            CHECK(pc.size() == F->degree());
            CHECK(F->from_prime_coeffs(pc) == a);
        }
    }
}

TEST_CASE("nonsquare witness is genuinely a nonsquare") {
    for (auto F : {Field::make(3, 1), Field::make(5, 1), Field::make(3, 2), Field::make(3, 3)}) {
        auto z = nonsquare_z(F);
        for (uint16_t w = 0; w < F->q(); ++w) CHECK(F->mul(w, w) != z.v);
        for (uint16_t a = 0; a < z.v; ++a) {
            bool square = false;
            for (uint16_t w = 0; w < F->q(); ++w)
                if (F->mul(w, w) == a) { square = true; break; }
            CHECK(square); // everything below z is a square
        }
    }
}

TEST_CASE("element value semantics and error paths") {
    auto f3 = Field::prime(3);
    auto f5 = Field::prime(5);
    Element a{f3, 2}, b{f3, 2};
    CHECK((a + b).v == 1);
    CHECK((a * b).v == 1);
    CHECK((a - b).v == 0);
    CHECK((a / b).v == 1);
    CHECK((-a).v == 1);
    CHECK(a.pow(4).v == 1);
    CHECK(a.order() == 2);
    CHECK_THROWS_AS(Element(f3, 2) + Element(f5, 2), FieldMismatch);
    CHECK_THROWS_AS(Element(f3, 1) / Element(f3, 0), DivisionByZero);
    CHECK_THROWS_AS(Element(f3, 5), IndexOutOfRange);
    CHECK_THROWS_AS(Element(f3, 0).order(), PreconditionViolation);
}

TEST_CASE("extension construction rejects bad moduli") {
    auto f3 = Field::prime(3);
    CHECK_THROWS_AS(Field::extension(f3, Poly::parse(f3, "x^2+2")), ReducibleModulus);
    CHECK_THROWS_AS(Field::extension(f3, Poly::parse(f3, "2x^2+1")), NonMonicPolynomial);
    auto f5 = Field::prime(5);
    CHECK_THROWS_AS(Field::extension(f5, Poly::parse(f3, "x^2+x+2")), FieldMismatch);
    // non-canonical but valid modulus: x^2+1 gives a field of 9 elements
    auto g9 = Field::extension(f3, Poly::parse(f3, "x^2+1"));
    CHECK(g9->q() == 9);
    CHECK(g9->element_order(3) == 4); // x is not primitive there
    CHECK_FALSE(g9->same(*Field::make(3, 2)));
}

TEST_CASE("tower extensions flatten consistently") {
    auto f9 = Field::make(3, 2);
    auto f81 = canonical_extension(f9, 2);
    CHECK(f81->q() == 81);
    CHECK(f81->degree() == 4);
    CHECK(f81->characteristic() == 3);
    CHECK(f81->base()->same(*f9));
    for (uint16_t a : {uint16_t(0), uint16_t(1), uint16_t(17), uint16_t(80)})
        CHECK(f81->from_prime_coeffs(f81->prime_coeffs(a)) == a);
    CHECK(f81->element_order(f81->generator()) == 80);
}

TEST_CASE("polynomial arithmetic and division invariant") {
    auto f9 = Field::make(3, 2);
    std::mt19937_64 rng(20260814);
    std::uniform_int_distribution<int> deg(0, 6);
    std::uniform_int_distribution<uint16_t> coef(0, uint16_t(f9->q() - 1));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint16_t> ac(deg(rng) + 1), bc(deg(rng) + 1);
        for (auto& c : ac) c = coef(rng);
        for (auto& c : bc) c = coef(rng);
        Poly a(f9, ac), b(f9, bc);
        if (b.is_zero()) {
            CHECK_THROWS_AS(Poly::divmod(a, b), ZeroPolynomial);
            continue;
        }
        auto [quo, rem] = Poly::divmod(a, b);
        CHECK(quo * b + rem == a);
        CHECK(rem.degree() < b.degree());
    }
}

TEST_CASE("polynomial text forms round trip") {
    auto f3 = Field::prime(3);
    Poly f = Poly::parse(f3, "x^2+x+2");
    CHECK(f == Poly(f3, {2, 1, 1}));
    CHECK(f == Poly::parse(f3, "2,1,1"));
    CHECK(f.to_string() == "x^2+x+2");
    CHECK(Poly::parse(f3, f.to_string()) == f);
    CHECK(Poly::parse(f3, "x^3-x+1") == Poly(f3, {1, 2, 0, 1}));
    CHECK(Poly(f3).to_string() == "0");
    CHECK_THROWS_AS(Poly::parse(f3, "x^"), UsageError);
    CHECK_THROWS_AS(Poly::parse(f3, ""), UsageError);
}

TEST_CASE("trial division factorization") {
    using VP = std::vector<std::pair<uint64_t, unsigned>>;
    CHECK(factor_u64(728) == VP{{2, 3}, {7, 1}, {13, 1}});
    CHECK(factor_u64(8) == VP{{2, 3}});
    CHECK(factor_u64(1) == VP{});
    CHECK(factor_u64(97) == VP{{97, 1}});
    CHECK(factor_u64(624) == VP{{2, 4}, {3, 1}, {13, 1}});
}

} // TEST_SUITE
