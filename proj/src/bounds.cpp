#include "srlab/bounds.hpp"

#include <algorithm>

#include "srlab/errors.hpp"
#include "srlab/field.hpp"

namespace srlab {

namespace {

BigInt big_pow(uint16_t q, uint64_t e) {
    return boost::multiprecision::pow(BigInt(q), unsigned(e));
}

BigInt ceil_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    return (num + den - 1) / den;
}

Rational rational_pow(const Rational& base, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

void require_block_layout(const Shape& shape, unsigned n) {
    if (shape.cols.empty() || shape.rows.size() != shape.cols.size())
        throw ShapeMismatch("row and column lists must be matching and nonempty");
    for (size_t i = 0; i < shape.cols.size(); ++i) {
        if (shape.rows[i] != n)
            throw ShapeMismatch("every block must have n rows");
        if (shape.cols[i] == 0) throw ShapeMismatch("blocks must be nonempty");
    }
}

} // namespace

BigInt binomial(uint64_t n, uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    BigInt out = 1;
    for (uint64_t i = 1; i <= r; ++i) {
        out *= n - r + i;
        out /= i;
    }
    return out;
}

BigInt gaussian_binomial(unsigned n, unsigned r, uint16_t q) {
    if (r > n) throw RankOutOfRange("subspace dimension exceeds the ambient space");
    if (q < 2) throw PreconditionViolation("q must be at least 2");
    BigInt out = 1;
    for (unsigned i = 1; i <= r; ++i) {
        out *= big_pow(q, n - r + i) - 1;
        out /= big_pow(q, i) - 1; // partial products are [n-r+i, i]_q, integers
    }
    return out;
}

GammaEstimate gamma_q(uint16_t q, double tol) {
    if (q < 2) throw PreconditionViolation("q must be at least 2");
    if (!(tol > 0)) throw PreconditionViolation("tolerance must be positive");
    Rational lower = 1;
    BigInt pw = 1; // q^K
    unsigned terms = 0;
    Rational upper;
    for (;;) {
        ++terms;
        pw *= q;
        lower *= Rational(pw, pw - 1);
        // tail product is at most (1 - sum_{i>K} q^{-i})^{-1}
        const BigInt scale = pw * (q - 1);
        upper = lower * Rational(scale, scale - 1);
        if ((upper - lower).convert_to<double>() < tol) break;
    }
    return {((lower + upper) / 2).convert_to<double>(), terms, lower, upper};
}

bool gaussian_bound_check(unsigned n, unsigned r, uint16_t q) {
    const Rational exact(gaussian_binomial(n, r, q));
    const Rational scale(big_pow(q, uint64_t(r) * (n - r)));
    for (double tol = 1e-12;; tol *= 1e-6) {
        GammaEstimate g = gamma_q(q, tol);
        if (exact < g.lower * scale) return true;
        if (exact >= g.upper * scale) return false;
    }
}

BigInt compositions_count(const CompositionSpec& spec, CompositionMode mode) {
    if (spec.parts == 0) throw PreconditionViolation("at least one part is required");
    switch (mode) {
    case CompositionMode::dp: {
        std::vector<BigInt> count(spec.total + 1, 0);
        count[0] = 1;
        for (unsigned part = 0; part < spec.parts; ++part) {
            std::vector<BigInt> next(spec.total + 1, 0);
            for (unsigned w = 0; w <= spec.total; ++w)
                for (unsigned j = 0; j <= std::min(w, spec.cap); ++j)
                    next[w] += count[w - j];
            count = std::move(next);
        }
        return count[spec.total];
    }
    case CompositionMode::closed_form: {
        BigInt out = 0;
        for (unsigned i = 0; i <= spec.total / (spec.cap + 1); ++i) {
            const BigInt term = binomial(spec.parts, i) *
                                binomial(spec.total + spec.parts - 1 -
                                             (spec.cap + 1) * uint64_t(i),
                                         spec.parts - 1);
            out += (i % 2 == 0) ? term : -term;
        }
        return out;
    }
    case CompositionMode::upper_bound:
        return binomial(spec.total + spec.parts - 1, spec.parts - 1);
    }
    throw PreconditionViolation("unknown composition mode");
}

BigInt rank_matrix_count(unsigned rows, unsigned cols, unsigned r, uint16_t q,
                         RankCountMode mode) {
    if (r > std::min(rows, cols))
        throw RankOutOfRange("rank exceeds the matrix dimensions");
    const uint64_t exponent = uint64_t(r) * (rows + cols - r);
    switch (mode) {
    case RankCountMode::exact: {
        BigInt out = gaussian_binomial(cols, r, q);
        for (unsigned j = 0; j < r; ++j) out *= big_pow(q, rows) - big_pow(q, j);
        return out;
    }
    case RankCountMode::plain_bound:
        return big_pow(q, exponent);
    case RankCountMode::gamma_bound:
        return ceil_rational(gamma_q(q, 1e-12).upper * Rational(big_pow(q, exponent)));
    }
    throw PreconditionViolation("unknown rank count mode");
}

std::vector<RankBoundFinding> rank_bound_violations(unsigned max_rows,
                                                    unsigned max_cols, uint16_t q) {
    std::vector<RankBoundFinding> findings;
    for (unsigned rows = 1; rows <= max_rows; ++rows)
        for (unsigned cols = 1; cols <= max_cols; ++cols)
            for (unsigned r = 1; r <= std::min(rows, cols); ++r) {
                BigInt exact = rank_matrix_count(rows, cols, r, q, RankCountMode::exact);
                BigInt bound =
                    rank_matrix_count(rows, cols, r, q, RankCountMode::plain_bound);
                if (exact >= bound)
                    findings.push_back({rows, cols, r, q, std::move(exact),
                                        std::move(bound)});
            }
    return findings;
}

BigInt sphere_intersection_bound(unsigned r, const Shape& shape, unsigned n,
                                 uint16_t q, bool gamma_corrected) {
    require_block_layout(shape, n);
    const unsigned t = shape.blocks();
    uint64_t max_radius = 0;
    for (unsigned c : shape.cols) max_radius += std::min(n, c);
    if (r > max_radius)
        throw RadiusOutOfRange("radius exceeds the maximal sum-rank weight");
    const unsigned max_cols = *std::max_element(shape.cols.begin(), shape.cols.end());
    const uint64_t exponent =
        uint64_t(r) * (n + max_cols) - uint64_t(r) * r / t; // floored, upward-safe
    const BigInt plain = binomial(uint64_t(r) + t - 1, t - 1) * big_pow(q, exponent);
    if (!gamma_corrected) return plain;
    return ceil_rational(rational_pow(gamma_q(q, 1e-12).upper, t) * Rational(plain));
}

BigInt generic_list_bound(unsigned n, const Shape& shape, unsigned d, unsigned tau,
                          uint16_t q, BoundVariant variant) {
    require_block_layout(shape, n);
    const unsigned t = shape.blocks();
    if (t < 2) throw PreconditionViolation("the bound needs at least two blocks");
    if (d == 0) throw PreconditionViolation("distance must be positive");
    const unsigned half = (d - 1) / 2;
    if (tau <= half)
        throw PreconditionViolation("radius " + std::to_string(tau) +
                                    " must exceed floor((d-1)/2) = " +
                                    std::to_string(half));
    const unsigned max_cols = *std::max_element(shape.cols.begin(), shape.cols.end());
    const BigInt term =
        BigInt(tau - half) * big_pow(q, uint64_t(tau) * (n + max_cols + t - 1));
    if (variant == BoundVariant::plain) return 1 + term;
    return 1 + ceil_rational(rational_pow(gamma_q(q, 1e-12).upper, t) * Rational(term));
}

std::string family_name(Family f) {
    switch (f) {
    case Family::uniform4: return "uniform4";
    case Family::uniform8: return "uniform8";
    case Family::square2n: return "square2n";
    case Family::square4n: return "square4n";
    }
    throw PreconditionViolation("unknown family");
}

namespace {

} // namespace

SumRankCode family_code(Family fam, const FieldPtr& f, unsigned n, unsigned t) {
    switch (fam) {
    case Family::uniform4:
        return construction1_code(c1_family(f, 2, 0, 0),
                                  std::vector<unsigned>(t - 1, 2));
    case Family::uniform8:
        return construction1_code(c2_family(f, 2, 0, 0, 1),
                                  std::vector<unsigned>(t - 1, 2));
    case Family::square2n:
        return construction2_code(
            std::vector<RankCode>(t - 1, gabidulin_code(f, n, 2)),
            c1_family(f, n, 0, 0));
    case Family::square4n:
        return construction2_code(
            std::vector<RankCode>(t - 1, gabidulin_code(f, n, 4)),
            c2_family(f, n, 0, 0, 1));
    }
    throw PreconditionViolation("unknown family");
}

BoundReport family_bound_report(Family fam, uint16_t q, unsigned n, unsigned t,
                                uint64_t brute_budget) {
    if (q < 2) throw PreconditionViolation("q must be at least 2");
    if (t < 2) throw PreconditionViolation("block count t must be at least 2");

    BoundReport rep;
    rep.family = fam;
    rep.q = q;
    rep.t = t;
    rep.tau = t;
    switch (fam) {
    case Family::uniform4:
        rep.n = 2;
        rep.shape = uniform_shape(2, 4, t);
        rep.d = 2;
        rep.k = 2 * (2 * t - 1);
        rep.closed_form_bound = 1 + BigInt(t) * big_pow(q, uint64_t(t) * (5 + t));
        break;
    case Family::uniform8:
        rep.n = 2;
        rep.shape = uniform_shape(2, 8, t);
        rep.d = 2;
        rep.k = 4 * (2 * t - 1);
        rep.closed_form_bound = 1 + BigInt(t) * big_pow(q, uint64_t(t) * (5 + t));
        break;
    case Family::square2n: {
        if (n < 2) throw PreconditionViolation("square2n needs n >= 2");
        rep.n = n;
        rep.shape.rows.assign(t, n);
        rep.shape.cols.assign(t - 1, n);
        rep.shape.cols.push_back(2 * n);
        rep.d = t * (n - 1) + 1;
        rep.k = 2;
        const unsigned half = (rep.d - 1) / 2;
        if (half < t)
            rep.closed_form_bound =
                1 + BigInt(t - half) * big_pow(q, uint64_t(t) * (3 * n + t - 1));
        break;
    }
    case Family::square4n: {
        if (n < 4)
            throw PreconditionViolation("square4n needs n >= 4 for its components");
        rep.n = n;
        rep.shape.rows.assign(t, n);
        rep.shape.cols.assign(t - 1, n);
        rep.shape.cols.push_back(4 * n);
        rep.d = t * (n - 3) + 3;
        rep.k = 4;
        const unsigned half = (rep.d - 1) / 2;
        if (half < t)
            rep.closed_form_bound =
                1 + BigInt(t - half) * big_pow(q, uint64_t(t) * (5 * n + t - 1));
        break;
    }
    }
    rep.N = rep.shape.total_cols();

    const unsigned half = (rep.d - 1) / 2;
    rep.precondition_ok = half < rep.tau && rep.tau <= rep.N - rep.k;
    if (half >= rep.tau)
        throw PreconditionViolation(
            "floor((d-1)/2) = " + std::to_string(half) + " is not below tau = " +
            std::to_string(rep.tau) + " for " + family_name(fam));
    if (rep.tau > rep.N - rep.k)
        throw PreconditionViolation("tau = " + std::to_string(rep.tau) +
                                    " exceeds N - k = " +
                                    std::to_string(rep.N - rep.k) + " for " +
                                    family_name(fam));

    rep.general_bound =
        generic_list_bound(rep.n, rep.shape, rep.d, rep.tau, q, BoundVariant::plain);
    rep.gamma_bound = generic_list_bound(rep.n, rep.shape, rep.d, rep.tau, q,
                                         BoundVariant::gamma_corrected);
    rep.closed_form_agrees = rep.closed_form_bound == rep.general_bound;
    rep.design_bound = big_pow(q, rep.N - rep.d);

    if (brute_budget > 0) {
        SumRankCode code = family_code(fam, field_of_order(q), rep.n, t);
        if (!(code.shape() == rep.shape))
            throw Error("constructed code shape drifted from the family formula");
        try {
            ListCheck check = list_decodable_check(code, rep.tau, brute_budget);
            if (check.exact) rep.brute_force_L = BigInt(check.max_occupancy);
        } catch (const EnumerationBudgetExceeded&) {
        }
    }
    return rep;
}

std::vector<FamilyRow> family_table(uint16_t q, unsigned n, unsigned t,
                                    uint64_t brute_budget) {
    std::vector<FamilyRow> rows;
    for (Family fam : {Family::uniform4, Family::uniform8, Family::square2n,
                       Family::square4n}) {
        FamilyRow row;
        row.family = fam;
        try {
            row.report = family_bound_report(fam, q, n, t, brute_budget);
            row.status = "ok";
        } catch (const PreconditionViolation& e) {
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace srlab
