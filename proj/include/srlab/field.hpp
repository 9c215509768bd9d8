#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "srlab/errors.hpp"

namespace srlab {

class Field;
class Poly;
using FieldPtr = std::shared_ptr<const Field>;

/// Finite field F_q, q = p^e odd, with table-backed arithmetic on canonical
/// element indices 0..q-1.  A field is either a prime field or a one-step
/// extension of a base field by an irreducible modulus polynomial; the index
/// of an extension element with coefficient vector (c_0,...,c_{d-1}) over the
/// base is sum_i idx(c_i) * base_q^i, so index 0 is zero and index 1 is one.
class Field : public std::enable_shared_from_this<Field> {
  public:
    /// Prime field F_p.  Throws EvenCharacteristic / NonPrimeCharacteristic.
    static FieldPtr prime(uint64_t p);

    /// F_{p^e} over the canonical (index 0) primitive modulus when e > 1.
    static FieldPtr make(uint64_t p, unsigned e);

    /// Extension of `base` by a monic irreducible `modulus` over `base`.
    static FieldPtr extension(const FieldPtr& base, const Poly& modulus);

    uint64_t q() const { return q_; }
    uint64_t characteristic() const { return p_; }
    unsigned degree() const { return e_; } // over the prime field
    bool is_prime_field() const { return !base_; }
    const FieldPtr& base() const { return base_; }
    /// Modulus over the base field; nullptr for prime fields.
    const Poly* modulus() const { return modulus_.get(); }
    unsigned degree_over_base() const { return deg_over_base_; }

    bool same(const Field& other) const;

    // element arithmetic on canonical indices
    uint16_t add(uint16_t a, uint16_t b) const { return add_[size_t(a) * q_ + b]; }
    uint16_t sub(uint16_t a, uint16_t b) const { return add_[size_t(a) * q_ + neg_[b]]; }
    uint16_t neg(uint16_t a) const { return neg_[a]; }
    uint16_t mul(uint16_t a, uint16_t b) const { return mul_[size_t(a) * q_ + b]; }
    uint16_t inv(uint16_t a) const;
    uint16_t div(uint16_t a, uint16_t b) const;
    uint16_t pow(uint16_t a, uint64_t k) const;
    /// Multiplicative order; a must be nonzero.
    uint64_t element_order(uint16_t a) const;
    /// Least-index generator of the multiplicative group.
    uint16_t generator() const { return gen_; }

    /// Coefficients over the base field, constant term first, length
    /// degree_over_base() (length 1 for prime fields).
    std::vector<uint16_t> digits(uint16_t a) const;
    uint16_t from_digits(const std::vector<uint16_t>& c) const;
    /// Residues mod p over the prime field, constant-first, length degree().
    std::vector<uint16_t> prime_coeffs(uint16_t a) const;
    uint16_t from_prime_coeffs(const std::vector<uint16_t>& c) const;
    /// Embedding of an integer via the prime subfield.
    uint16_t from_int(int64_t v) const;

    // raw table access for hot loops
    const uint16_t* add_raw() const { return add_.data(); }
    const uint16_t* mul_raw() const { return mul_.data(); }
    const uint16_t* neg_raw() const { return neg_.data(); }

    std::string describe() const;

  private:
    Field() = default;
    void build_mult_structure();

    uint64_t p_ = 0, q_ = 0;
    unsigned e_ = 1, deg_over_base_ = 1;
    FieldPtr base_;
    std::shared_ptr<const Poly> modulus_;
    std::vector<uint16_t> add_, mul_, neg_, inv_, exp_, log_;
    uint16_t gen_ = 0;
};

/// Value-semantic field element: a canonical index plus its field.
struct Element {
    FieldPtr F;
    uint16_t v = 0;

    Element() = default;
    Element(FieldPtr f, uint16_t idx);

    bool is_zero() const { return v == 0; }
    std::vector<uint16_t> coeffs() const { return F->prime_coeffs(v); }
    Element inv() const { return {F, F->inv(v)}; }
    Element pow(uint64_t k) const { return {F, F->pow(v, k)}; }
    uint64_t order() const { return F->element_order(v); }

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b);
    friend Element operator-(const Element& a) { return {a.F, a.F->neg(a.v)}; }
    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
};

/// Dense polynomial over a field, coefficients stored constant-first as
/// canonical indices with trailing zeros trimmed.  The zero polynomial has
/// empty storage and degree() == -1.
class Poly {
  public:
    explicit Poly(FieldPtr f) : F_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<uint16_t> coeffs);

    static Poly x(const FieldPtr& f);
    static Poly constant(const FieldPtr& f, uint16_t c);
    /// Parses "a0,a1,...,an" (canonical indices, constant first) or a human
    /// form like "x^2+x+2" with integer coefficients.
    static Poly parse(const FieldPtr& f, const std::string& text);

    const FieldPtr& field() const { return F_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const;
    uint16_t coeff(unsigned i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<uint16_t>& coeffs() const { return c_; }

    Element eval(const Element& at) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    Poly mod(const Poly& m) const { return divmod(*this, m).second; }

    std::string to_string() const;

  private:
    void trim();
    FieldPtr F_;
    std::vector<uint16_t> c_;
};

/// Trial-division factorization; returns (prime, multiplicity) pairs.
std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t v);

bool poly_is_irreducible(const Poly& f);
/// True iff f is monic irreducible and x generates the multiplicative group
/// of base[x]/(f).
bool poly_is_primitive(const Poly& f);

/// index-th primitive monic polynomial of degree n over `base`, enumerating
/// in lexicographic coefficient order with the constant term varying fastest.
Poly find_primitive_poly(const FieldPtr& base, unsigned n, unsigned index);

/// Least element (in canonical index order) that is not a square.
Element nonsquare_z(const FieldPtr& f);

/// Degree-m extension of `base` by its canonical primitive modulus.
FieldPtr canonical_extension(const FieldPtr& base, unsigned m);

/// F_q with q factored automatically; q must be an odd prime power.
FieldPtr field_of_order(uint64_t q);

} // namespace srlab
