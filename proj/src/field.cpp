#include "srlab/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace srlab {

namespace {

constexpr uint64_t kMaxTableField = 1024; // table-backed arithmetic cap

bool is_prime_u64(uint64_t v) {
    if (v < 2) return false;
    for (uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// square-and-multiply on raw indices, table bootstrap (no log table yet)
uint16_t pow_by_mul(const std::vector<uint16_t>& mul, uint64_t q, uint16_t a, uint64_t k) {
    uint16_t r = 1, b = a;
    while (k) {
        if (k & 1) r = mul[size_t(r) * q + b];
        b = mul[size_t(b) * q + b];
        k >>= 1;
    }
    return r;
}

} // namespace

std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t v) {
    std::vector<std::pair<uint64_t, unsigned>> out;
    for (uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            unsigned m = 0;
            while (v % d == 0) { v /= d; ++m; }
            out.emplace_back(d, m);
        }
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

// ---------------------------------------------------------------- Field

FieldPtr Field::prime(uint64_t p) {
    if (p % 2 == 0) throw EvenCharacteristic("characteristic must be odd, got " + std::to_string(p));
    if (!is_prime_u64(p)) throw NonPrimeCharacteristic(std::to_string(p) + " is not prime");
    if (p > kMaxTableField)
        throw PreconditionViolation("field size " + std::to_string(p) + " exceeds the table cap " +
                                    std::to_string(kMaxTableField));

    static std::map<uint64_t, std::weak_ptr<const Field>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (auto hit = cache[p].lock()) return hit;

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = f->q_ = p;
    f->e_ = f->deg_over_base_ = 1;
    f->add_.resize(p * p);
    f->mul_.resize(p * p);
    f->neg_.resize(p);
    for (uint64_t a = 0; a < p; ++a) {
        f->neg_[a] = uint16_t((p - a) % p);
        for (uint64_t b = 0; b < p; ++b) {
            f->add_[a * p + b] = uint16_t((a + b) % p);
            f->mul_[a * p + b] = uint16_t((a * b) % p);
        }
    }
    f->build_mult_structure();
    cache[p] = f;
    return f;
}

FieldPtr Field::extension(const FieldPtr& base, const Poly& modulus) {
    if (!base) throw PreconditionViolation("null base field");
    if (!modulus.field()->same(*base)) throw FieldMismatch("modulus is not over the base field");
    if (modulus.is_zero()) throw ZeroPolynomial("zero modulus");
    if (!modulus.is_monic()) throw NonMonicPolynomial("modulus must be monic: " + modulus.to_string());
    if (!poly_is_irreducible(modulus)) throw ReducibleModulus("modulus is reducible: " + modulus.to_string());

    const unsigned d = unsigned(modulus.degree());
    const uint64_t qb = base->q();
    uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) {
        q *= qb;
        if (q > kMaxTableField)
            throw PreconditionViolation("extension field exceeds the table cap " +
                                        std::to_string(kMaxTableField));
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->characteristic();
    f->q_ = q;
    f->e_ = base->degree() * d;
    f->deg_over_base_ = d;
    f->base_ = base;
    f->modulus_ = std::make_shared<const Poly>(modulus);

    // digit vectors, little-endian over the base field
    std::vector<std::vector<uint16_t>> dig(q, std::vector<uint16_t>(d, 0));
    for (uint64_t a = 0; a < q; ++a) {
        uint64_t r = a;
        for (unsigned i = 0; i < d; ++i) { dig[a][i] = uint16_t(r % qb); r /= qb; }
    }
    std::vector<uint16_t> mod_digits(d + 1);
    for (unsigned i = 0; i <= d; ++i) mod_digits[i] = modulus.coeff(i);

    f->add_.resize(q * q);
    f->mul_.resize(q * q);
    f->neg_.resize(q);
    std::vector<uint16_t> prod(2 * d - 1), tmp(d);
    for (uint64_t a = 0; a < q; ++a) {
        uint64_t nidx = 0, mult = 1;
        for (unsigned i = 0; i < d; ++i) { nidx += uint64_t(base->neg(dig[a][i])) * mult; mult *= qb; }
        f->neg_[a] = uint16_t(nidx);
        for (uint64_t b = 0; b < q; ++b) {
            uint64_t sidx = 0;
            mult = 1;
            for (unsigned i = 0; i < d; ++i) {
                sidx += uint64_t(base->add(dig[a][i], dig[b][i])) * mult;
                mult *= qb;
            }
            f->add_[a * q + b] = uint16_t(sidx);

            std::fill(prod.begin(), prod.end(), 0);
            for (unsigned i = 0; i < d; ++i) {
                if (dig[a][i] == 0) continue;
                for (unsigned j = 0; j < d; ++j)
                    prod[i + j] = base->add(prod[i + j], base->mul(dig[a][i], dig[b][j]));
            }
            // reduce mod the monic modulus
            for (int k = int(2 * d - 2); k >= int(d); --k) {
                uint16_t c = prod[k];
                if (c == 0) continue;
                prod[k] = 0;
                for (unsigned i = 0; i < d; ++i)
                    prod[k - d + i] = base->sub(prod[k - d + i], base->mul(c, mod_digits[i]));
            }
            uint64_t pidx = 0;
            mult = 1;
            for (unsigned i = 0; i < d; ++i) { pidx += uint64_t(prod[i]) * mult; mult *= qb; }
            f->mul_[a * q + b] = uint16_t(pidx);
        }
    }
    f->build_mult_structure();
    return f;
}

void Field::build_mult_structure() {
    // multiplicative structure: generator, exp/log, inverses
    const uint64_t ord = q_ - 1;
    auto fac = factor_u64(ord);
    gen_ = 0;
    for (uint64_t a = 1; a < q_; ++a) {
        bool generates = true;
        for (auto& [l, m] : fac) {
            (void)m;
            if (pow_by_mul(mul_, q_, uint16_t(a), ord / l) == 1) { generates = false; break; }
        }
        if (generates) { gen_ = uint16_t(a); break; }
    }
    exp_.resize(ord);
    log_.assign(q_, 0);
    uint16_t cur = 1;
    for (uint64_t i = 0; i < ord; ++i) {
        exp_[i] = cur;
        log_[cur] = uint16_t(i);
        cur = mul(cur, gen_);
    }
    inv_.assign(q_, 0);
    for (uint64_t a = 1; a < q_; ++a) inv_[a] = exp_[(ord - log_[a]) % ord];
}

FieldPtr Field::make(uint64_t p, unsigned e) {
    if (e == 0) throw PreconditionViolation("extension degree must be positive");
    auto pf = Field::prime(p);
    if (e == 1) return pf;

    static std::map<std::pair<uint64_t, unsigned>, std::weak_ptr<const Field>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (auto hit = cache[{p, e}].lock()) return hit;
    auto f = Field::extension(pf, find_primitive_poly(pf, e, 0));
    cache[{p, e}] = f;
    return f;
}

bool Field::same(const Field& other) const {
    if (this == &other) return true;
    if (p_ != other.p_ || q_ != other.q_ || e_ != other.e_ || deg_over_base_ != other.deg_over_base_)
        return false;
    if (!base_ != !other.base_) return false;
    if (base_) {
        if (!base_->same(*other.base_)) return false;
        if (modulus_->coeffs() != other.modulus_->coeffs()) return false;
    }
    return true;
}

uint16_t Field::inv(uint16_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return inv_[a];
}

uint16_t Field::div(uint16_t a, uint16_t b) const {
    if (b == 0) throw DivisionByZero("division by zero");
    return mul(a, inv_[b]);
}

uint16_t Field::pow(uint16_t a, uint64_t k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    const uint64_t ord = q_ - 1;
    return exp_[(uint64_t(log_[a]) * (k % ord)) % ord];
}

uint64_t Field::element_order(uint16_t a) const {
    if (a == 0) throw PreconditionViolation("multiplicative order of zero is undefined");
    const uint64_t ord = q_ - 1;
    return ord / std::gcd(ord, uint64_t(log_[a]));
}

std::vector<uint16_t> Field::digits(uint16_t a) const {
    if (!base_) return {a};
    std::vector<uint16_t> out(deg_over_base_);
    uint64_t r = a;
    const uint64_t qb = base_->q();
    for (unsigned i = 0; i < deg_over_base_; ++i) { out[i] = uint16_t(r % qb); r /= qb; }
    return out;
}

uint16_t Field::from_digits(const std::vector<uint16_t>& c) const {
    if (c.size() > deg_over_base_) throw DimensionMismatch("too many digits");
    const uint64_t qb = base_ ? base_->q() : q_;
    uint64_t idx = 0, mult = 1;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= qb) throw IndexOutOfRange("digit out of range");
        if (!base_ && c.size() > 1) throw DimensionMismatch("prime field takes one digit");
        idx += uint64_t(c[i]) * mult;
        mult *= qb;
    }
    return uint16_t(idx);
}

std::vector<uint16_t> Field::prime_coeffs(uint16_t a) const {
    if (!base_) return {a};
    std::vector<uint16_t> out;
    out.reserve(e_);
    for (uint16_t d : digits(a)) {
        auto sub = base_->prime_coeffs(d);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

uint16_t Field::from_prime_coeffs(const std::vector<uint16_t>& c) const {
    if (c.size() != e_) throw DimensionMismatch("expected " + std::to_string(e_) + " residues");
    if (!base_) {
        if (c[0] >= p_) throw IndexOutOfRange("residue out of range");
        return c[0];
    }
    const unsigned step = base_->degree();
    std::vector<uint16_t> dig(deg_over_base_);
    for (unsigned i = 0; i < deg_over_base_; ++i) {
        std::vector<uint16_t> sub(c.begin() + i * step, c.begin() + (i + 1) * step);
        dig[i] = base_->from_prime_coeffs(sub);
    }
    return from_digits(dig);
}

uint16_t Field::from_int(int64_t v) const {
    int64_t r = v % int64_t(p_);
    if (r < 0) r += int64_t(p_);
    if (base_) return base_->from_int(r);
    return uint16_t(r);
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (base_) os << " = F_" << base_->q() << "[x]/(" << modulus_->to_string() << ")";
    return os.str();
}

// ---------------------------------------------------------------- Element

Element::Element(FieldPtr f, uint16_t idx) : F(std::move(f)), v(idx) {
    if (!F) throw PreconditionViolation("element without a field");
    if (v >= F->q()) throw IndexOutOfRange("element index " + std::to_string(v) + " out of range");
}

static void require_same_field(const Element& a, const Element& b) {
    if (!a.F || !b.F || !a.F->same(*b.F)) throw FieldMismatch("elements of different fields");
}

Element operator+(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.F, a.F->add(a.v, b.v)};
}
Element operator-(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.F, a.F->sub(a.v, b.v)};
}
Element operator*(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.F, a.F->mul(a.v, b.v)};
}
Element operator/(const Element& a, const Element& b) {
    require_same_field(a, b);
    return {a.F, a.F->div(a.v, b.v)};
}
bool operator==(const Element& a, const Element& b) {
    require_same_field(a, b);
    return a.v == b.v;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(FieldPtr f, std::vector<uint16_t> coeffs) : F_(std::move(f)), c_(std::move(coeffs)) {
    if (!F_) throw PreconditionViolation("polynomial without a field");
    for (uint16_t c : c_)
        if (c >= F_->q()) throw IndexOutOfRange("coefficient index out of range");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::x(const FieldPtr& f) { return Poly(f, {0, 1}); }

Poly Poly::constant(const FieldPtr& f, uint16_t c) { return Poly(f, {c}); }

bool Poly::is_monic() const { return !c_.empty() && c_.back() == 1; }

Element Poly::eval(const Element& at) const {
    if (!at.F->same(*F_)) throw FieldMismatch("evaluation point in a different field");
    uint16_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, at.v), c_[i]);
    return {F_, acc};
}

Poly operator+(const Poly& a, const Poly& b) {
    if (!a.F_->same(*b.F_)) throw FieldMismatch("polynomials over different fields");
    std::vector<uint16_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.F_->add(a.coeff(unsigned(i)), b.coeff(unsigned(i)));
    return Poly(a.F_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    if (!a.F_->same(*b.F_)) throw FieldMismatch("polynomials over different fields");
    std::vector<uint16_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.F_->sub(a.coeff(unsigned(i)), b.coeff(unsigned(i)));
    return Poly(a.F_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (!a.F_->same(*b.F_)) throw FieldMismatch("polynomials over different fields");
    if (a.is_zero() || b.is_zero()) return Poly(a.F_);
    std::vector<uint16_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = a.F_->add(c[i + j], a.F_->mul(a.c_[i], b.c_[j]));
    }
    return Poly(a.F_, std::move(c));
}

bool operator==(const Poly& a, const Poly& b) {
    if (!a.F_->same(*b.F_)) throw FieldMismatch("polynomials over different fields");
    return a.c_ == b.c_;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (!a.F_->same(*b.F_)) throw FieldMismatch("polynomials over different fields");
    if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
    const auto& F = a.F_;
    std::vector<uint16_t> rem = a.c_;
    if (a.degree() < b.degree()) return {Poly(F), a};
    std::vector<uint16_t> quo(a.degree() - b.degree() + 1, 0);
    const uint16_t lead_inv = F->inv(b.c_.back());
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        uint16_t c = F->mul(rem[k + b.degree()], lead_inv);
        quo[k] = c;
        if (c == 0) continue;
        for (int i = 0; i <= b.degree(); ++i)
            rem[k + i] = F->sub(rem[k + i], F->mul(c, b.c_[i]));
    }
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            os << "x";
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

Poly Poly::parse(const FieldPtr& f, const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw UsageError("empty polynomial text");

    if (s.find('x') == std::string::npos && s.find(',') != std::string::npos) {
        // "a0,a1,...,an" canonical indices, constant first
        std::vector<uint16_t> c;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw UsageError("bad polynomial text: " + text);
            c.push_back(uint16_t(std::stoul(tok)));
        }
        return Poly(f, std::move(c));
    }
    if (s.find('x') == std::string::npos) {
        return Poly::constant(f, f->from_int(std::stoll(s)));
    }

    // human form: signed terms  c | cx | cx^k | x | x^k
    std::vector<uint16_t> c;
    auto put = [&](unsigned deg, int64_t coef) {
        if (c.size() <= deg) c.resize(deg + 1, 0);
        c[deg] = f->add(c[deg], f->from_int(coef));
    };
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') { ++i; }
        else if (s[i] == '-') { sign = -1; ++i; }
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        int64_t coef = (j > i) ? std::stoll(s.substr(i, j - i)) : 1;
        coef *= sign;
        unsigned deg = 0;
        if (j < s.size() && s[j] == 'x') {
            ++j;
            deg = 1;
            if (j < s.size() && s[j] == '^') {
                ++j;
                size_t k = j;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == j) throw UsageError("bad polynomial text: " + text);
                deg = unsigned(std::stoul(s.substr(j, k - j)));
                j = k;
            }
        }
        put(deg, coef);
        i = j;
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw UsageError("bad polynomial text: " + text);
    }
    return Poly(f, std::move(c));
}

// ------------------------------------------------- polynomial predicates

namespace {

Poly poly_powmod(const Poly& base_poly, uint64_t k, const Poly& m) {
    Poly r = Poly::constant(base_poly.field(), 1);
    Poly b = base_poly.mod(m);
    while (k) {
        if (k & 1) r = (r * b).mod(m);
        b = (b * b).mod(m);
        k >>= 1;
    }
    return r;
}

// all monic polynomials of a given degree, enumerated with constant term fastest
template <class Fn> void foreach_monic(const FieldPtr& F, unsigned deg, Fn&& fn) {
    const uint64_t q = F->q();
    uint64_t total = 1;
    for (unsigned i = 0; i < deg; ++i) total *= q;
    std::vector<uint16_t> c(deg + 1, 0);
    c[deg] = 1;
    for (uint64_t m = 0; m < total; ++m) {
        uint64_t r = m;
        for (unsigned i = 0; i < deg; ++i) { c[i] = uint16_t(r % q); r /= q; }
        if (!fn(Poly(F, c))) return;
    }
}

} // namespace

bool poly_is_irreducible(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("irreducibility of the zero polynomial");
    if (f.degree() == 0) return false;
    if (f.degree() == 1) return true;
    bool reducible = false;
    for (unsigned d = 1; d <= unsigned(f.degree()) / 2 && !reducible; ++d) {
        foreach_monic(f.field(), d, [&](const Poly& g) {
            if (f.mod(g).is_zero()) { reducible = true; return false; }
            return true;
        });
    }
    return !reducible;
}

bool poly_is_primitive(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("primitivity of the zero polynomial");
    if (!f.is_monic()) throw NonMonicPolynomial("primitivity is defined for monic polynomials here");
    if (f.degree() < 1) return false;
    if (!poly_is_irreducible(f)) return false;

    const uint64_t q = f.field()->q();
    const unsigned n = unsigned(f.degree());
    uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (qn > (uint64_t(1) << 62) / q) throw PreconditionViolation("q^n too large for order checks");
        qn *= q;
    }
    const uint64_t ord = qn - 1;
    const Poly x = Poly::x(f.field());
    const Poly one = Poly::constant(f.field(), 1);
    if (!(poly_powmod(x, ord, f) == one)) return false;
    for (auto& [l, m] : factor_u64(ord)) {
        (void)m;
        if (poly_powmod(x, ord / l, f) == one) return false;
    }
    return true;
}

Poly find_primitive_poly(const FieldPtr& base, unsigned n, unsigned index) {
    if (n == 0) throw PreconditionViolation("degree must be positive");
    unsigned seen = 0;
    Poly result(base);
    bool found = false;
    foreach_monic(base, n, [&](const Poly& f) {
        if (poly_is_primitive(f)) {
            if (seen == index) { result = f; found = true; return false; }
            ++seen;
        }
        return true;
    });
    if (!found)
        throw IndexOutOfRange("only " + std::to_string(seen) + " primitive polynomials of degree " +
                              std::to_string(n) + " exist, index " + std::to_string(index) +
                              " requested");
    return result;
}

FieldPtr canonical_extension(const FieldPtr& base, unsigned m) {
    if (m == 0) throw PreconditionViolation("extension degree must be positive");
    if (m == 1) return base;
    if (base->is_prime_field()) return Field::make(base->characteristic(), m);
    return Field::extension(base, find_primitive_poly(base, m, 0));
}

Element nonsquare_z(const FieldPtr& f) {
    const uint64_t q = f->q();
    std::vector<bool> is_square(q, false);
    for (uint64_t a = 0; a < q; ++a) is_square[f->mul(uint16_t(a), uint16_t(a))] = true;
    for (uint64_t a = 0; a < q; ++a)
        if (!is_square[a]) return {f, uint16_t(a)};
    throw PreconditionViolation("every element is a square; is the characteristic odd?");
}

FieldPtr field_of_order(uint64_t q) {
    if (q < 3) throw NonPrimeCharacteristic("field order must be an odd prime power");
    auto factors = factor_u64(q);
    if (factors.size() != 1)
        throw NonPrimeCharacteristic("field order " + std::to_string(q) +
                                     " is not a prime power");
    auto [p, e] = factors[0];
    return e == 1 ? Field::prime(p) : Field::make(p, e);
}

} // namespace srlab
