#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "srlab/bounds.hpp"
#include "srlab/designs.hpp"
#include "srlab/errors.hpp"

using namespace srlab;

namespace {

// t-1 square gabidulin blocks of distance n-1 plus the cyclic-orbit tail
SumRankCode square_family_code(const FieldPtr& f, unsigned n, unsigned t) {
    std::vector<RankCode> comps(t - 1, gabidulin_code(f, n, 2));
    return construction2_code(comps, c1_family(f, n, 0, 0));
}

std::vector<uint16_t> ext_combo(const FieldPtr& ext,
                                const std::vector<std::vector<uint16_t>>& vecs,
                                const std::vector<uint16_t>& coeffs) {
    std::vector<uint16_t> out(vecs.at(0).size(), 0);
    for (size_t j = 0; j < vecs.size(); ++j)
        for (size_t c = 0; c < out.size(); ++c)
            out[c] = ext->add(out[c], ext->mul(coeffs[j], vecs[j][c]));
    return out;
}

// every F_q-combination of the given vectors over F_{q^m}^k, as a set
std::set<std::vector<uint16_t>> span_set(const FieldPtr& ext, uint16_t q,
                                         const std::vector<std::vector<uint16_t>>& basis) {
    std::set<std::vector<uint16_t>> out;
    std::vector<uint16_t> coeffs(basis.size(), 0);
    while (true) {
        out.insert(ext_combo(ext, basis, coeffs));
        size_t pos = 0;
        while (pos < coeffs.size() && ++coeffs[pos] == q) coeffs[pos++] = 0;
        if (pos == coeffs.size()) break;
    }
    return out;
}

unsigned log_base(uint64_t v, uint16_t q) {
    unsigned e = 0;
    while (v > 1) {
        REQUIRE(v % q == 0);
        v /= q;
        ++e;
    }
    return e;
}

// max over all F_{q^m}-lines W of sum_i dim_q(H_i intersect W), by counting
// raw set intersections; lines enumerated from projective representatives
unsigned line_scan_oracle(const SystemH& H) {
    const FieldPtr& ext = H.ext();
    const uint16_t qe = ext->q();
    const uint16_t q = H.base()->q();
    std::vector<std::set<std::vector<uint16_t>>> blocks;
    for (unsigned i = 0; i < H.blocks(); ++i)
        blocks.push_back(span_set(ext, q, H.block_basis(i)));
    std::vector<std::vector<uint16_t>> reps;
    REQUIRE(H.k() == 2);
    for (uint16_t y = 0; y < qe; ++y) reps.push_back({1, y});
    reps.push_back({0, 1});
    unsigned best = 0;
    for (const auto& rep : reps) {
        unsigned sum = 0;
        for (const auto& blk : blocks) {
            uint64_t hits = 0;
            for (uint16_t c = 0; c < qe; ++c)
                if (blk.count({ext->mul(c, rep[0]), ext->mul(c, rep[1])})) ++hits;
            sum += log_base(hits, q);
        }
        best = std::max(best, sum);
    }
    return best;
}

} // namespace

TEST_SUITE_BEGIN("designs");

TEST_CASE("system read off a generator matrix") {
    auto f3 = Field::prime(3);
    auto ext9 = canonical_extension(f3, 2);
    SumRankCode c = square_family_code(f3, 2, 2);

    SystemH H = code_to_system(c);
    CHECK(H.k() == 2);
    CHECK(H.m() == 2);
    CHECK(H.blocks() == 2);
    CHECK(H.block_dim(0) == 2);
    CHECK(H.block_dim(1) == 4);
    CHECK(H.total_dim() == 6);
    CHECK(H.ext()->q() == 9);
    CHECK(H.base()->q() == 3);
    CHECK(H.shape() == c.shape());
    CHECK(H.block_basis(1).size() == 4);
    CHECK_THROWS_AS(H.block_basis(2), IndexOutOfRange);
    // the second block spans all of F_81: its four basis vectors are free
    CHECK(span_set(ext9, 3, H.block_basis(1)).size() == 81);

    SUBCASE("construction validates its inputs") {
        using Bases = std::vector<std::vector<std::vector<uint16_t>>>;
        CHECK_THROWS_AS(SystemH(ext9, 2, Bases{{{1, 0}, {2, 0}}}), PreconditionViolation);
        CHECK_THROWS_AS(SystemH(ext9, 2, Bases{{{1, 0}}}), PreconditionViolation);
        CHECK_THROWS_AS(SystemH(ext9, 2, Bases{{{1, 0, 0}, {0, 1, 0}}}), DimensionMismatch);
        CHECK_THROWS_AS(SystemH(ext9, 2, Bases{{{9, 0}, {0, 1}}}), IndexOutOfRange);
        CHECK_THROWS_AS(SystemH(ext9, 2, Bases{}), PreconditionViolation);
        CHECK_THROWS_AS(SystemH(ext9, 2, Bases{{}}), PreconditionViolation);
        CHECK_THROWS_AS(SystemH(ext9, 0, Bases{{{}}}), InvalidDimension);
    }

    SUBCASE("codes without certified extension linearity are rejected") {
        SumRankCode thick = construction1_code(c2_family(f3, 2, 0, 0, 1), {2});
        CHECK_FALSE(thick.k_over_extension().has_value());
        CHECK_THROWS_AS(code_to_system(thick), NotExtensionLinear);
        std::vector<RankCode> comps(2, gabidulin_code(f3, 4, 4));
        SumRankCode wide = construction2_code(comps, c2_family(f3, 4, 0, 0, 1));
        CHECK_THROWS_AS(code_to_system(wide), NotExtensionLinear);
    }
}

TEST_CASE("round trips between codes and systems") {
    auto f3 = Field::prime(3);
    auto ext9 = canonical_extension(f3, 2);
    SumRankCode c = square_family_code(f3, 2, 2);

    SumRankCode back = system_to_code(code_to_system(c));
    CHECK(back.shape() == c.shape());
    CHECK(back.dim() == c.dim());
    CHECK(back.min_distance() == c.min_distance());
    CHECK(back.k_over_extension() == c.k_over_extension());

    SUBCASE("unit-vector single block generates the full ambient space") {
        SystemH unit(ext9, 2, {{{1, 0}, {0, 1}}});
        SumRankCode full = system_to_code(unit);
        CHECK(full.dim() == 4);
        CHECK(full.cardinality() == 81);
        CHECK(full.min_distance() == 1);
    }

    SUBCASE("prime-field systems take the one-row path") {
        SystemH planes(f3, 2, {{{1, 0}}, {{0, 1}}});
        CHECK(planes.m() == 1);
        CHECK(planes.base()->q() == 3);
        SumRankCode cp = system_to_code(planes);
        CHECK(cp.shape() == (Shape{{1, 1}, {1, 1}}));
        CHECK(cp.dim() == 2);
        CHECK(cp.min_distance() == 1);
        CHECK(cp.k_over_extension() == 2u);
        SystemH again = code_to_system(cp);
        CHECK(again.m() == 1);
        CHECK(again.k() == 2);
        CHECK(again.total_dim() == 2);
    }
}

TEST_CASE("design check against a set-based line oracle") {
    auto f3 = Field::prime(3);
    auto ext9 = canonical_extension(f3, 2);
    SystemH H = code_to_system(square_family_code(f3, 2, 2));

    DesignCheck pass = design_check(H, {1, 3});
    CHECK(pass.verdict);
    CHECK(pass.max_sum == 3);
    CHECK(pass.max_sum == line_scan_oracle(H));

    DesignCheck fail = design_check(H, {1, 2});
    CHECK_FALSE(fail.verdict);
    CHECK(fail.max_sum == 3);
    REQUIRE(fail.witness.size() == 1);
    // the witness attains the reported maximum
    {
        const auto& w = fail.witness[0];
        unsigned sum = 0;
        for (unsigned i = 0; i < H.blocks(); ++i) {
            auto blk = span_set(ext9, 3, H.block_basis(i));
            uint64_t hits = 0;
            for (uint16_t cf = 0; cf < 9; ++cf)
                if (blk.count({ext9->mul(cf, w[0]), ext9->mul(cf, w[1])})) ++hits;
            sum += log_base(hits, 3);
        }
        CHECK(sum == fail.max_sum);
    }

    SUBCASE("zero-dimensional scans see only the zero space") {
        DesignCheck zero = design_check(H, {0, 0});
        CHECK(zero.verdict);
        CHECK(zero.max_sum == 0);
        CHECK(zero.witness.empty());
    }

    SUBCASE("repeated line blocks stack intersections") {
        SystemH lines(ext9, 2, {{{1, 0}}, {{1, 0}}, {{1, 0}}, {{0, 1}}});
        CHECK(design_check(lines, {1, 3}).verdict);
        CHECK(design_check(lines, {1, 3}).max_sum == 3);
        CHECK_FALSE(design_check(lines, {1, 2}).verdict);
        CHECK(line_scan_oracle(lines) == 3);
    }

    SUBCASE("prime-field scan") {
        SystemH planes(f3, 2, {{{1, 0}}, {{0, 1}}});
        DesignCheck dc = design_check(planes, {1, 1});
        CHECK(dc.verdict);
        CHECK(dc.max_sum == 1);
    }

    SUBCASE("preconditions and budget") {
        CHECK_THROWS_AS(design_check(H, {2, 0}), PreconditionViolation);
        auto f3b = Field::prime(3);
        SumRankCode four = construction1_code(c1_family(f3b, 2, 0, 0), {2});
        SystemH H4 = code_to_system(four);
        CHECK_THROWS_AS(design_check(H4, {5, 6}, 100), EnumerationBudgetExceeded);
    }
}

TEST_CASE("distance ties to the hyperplane scan" * doctest::timeout(300)) {
    auto f3 = Field::prime(3);
    SumRankCode c = square_family_code(f3, 2, 2);
    SystemDistanceCheck sc = system_distance_check(c);
    CHECK(sc.n == 6);
    CHECK(sc.d == 3);
    CHECK(sc.k == 2);
    CHECK(sc.max_sum == 3);
    CHECK(sc.matches_distance);
    CHECK(sc.design_ok);
    CHECK(design_list_size(c) == 27);
    CHECK(design_list_size(c) == family_bound_report(Family::square2n, 3, 2, 2).design_bound);

    // 66430 hyperplanes of F_9^6 scanned exhaustively
    SumRankCode four = construction1_code(c1_family(f3, 2, 0, 0), {2});
    SystemDistanceCheck s4 = system_distance_check(four);
    CHECK(s4.n == 8);
    CHECK(s4.d == 2);
    CHECK(s4.k == 6);
    CHECK(s4.max_sum == 6);
    CHECK(s4.matches_distance);
    CHECK(s4.design_ok);
    CHECK(design_list_size(four) == 729);
    CHECK(design_list_size(four) == family_bound_report(Family::uniform4, 3, 2, 2).design_bound);
    CHECK(gaussian_binomial(6, 5, 9) == 66430);
}

TEST_CASE("design checks are invariant under basis and coordinate changes") {
    auto f3 = Field::prime(3);
    auto ext9 = canonical_extension(f3, 2);
    SystemH H = code_to_system(square_family_code(f3, 2, 2));
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<uint16_t> base_pick(0, 2);
    std::uniform_int_distribution<uint16_t> ext_pick(0, 8);

    for (int rep = 0; rep < 4; ++rep) {
        // random F_q-basis change inside every block
        std::vector<std::vector<std::vector<uint16_t>>> rebased;
        for (unsigned i = 0; i < H.blocks(); ++i) {
            const auto& basis = H.block_basis(i);
            std::vector<std::vector<uint16_t>> fresh;
            RowSpace indep(f3, 2 * H.k());
            while (fresh.size() < basis.size()) {
                std::vector<uint16_t> coeffs(basis.size());
                for (auto& cf : coeffs) cf = base_pick(rng);
                auto v = ext_combo(ext9, basis, coeffs);
                std::vector<uint16_t> flat;
                for (uint16_t e : v) {
                    auto dg = ext9->digits(e);
                    flat.insert(flat.end(), dg.begin(), dg.end());
                }
                if (indep.insert(flat)) fresh.push_back(v);
            }
            rebased.push_back(std::move(fresh));
        }
        SystemH Hb(ext9, H.k(), rebased);
        CHECK(design_check(Hb, {1, 3}).max_sum == 3);
        CHECK(design_check(Hb, {1, 3}).verdict);

        // random F_{q^m}-coordinate change of the ambient
        std::vector<std::vector<uint16_t>> A;
        RowSpace inv(ext9, 2);
        while (A.size() < 2) {
            std::vector<uint16_t> row{ext_pick(rng), ext_pick(rng)};
            if (inv.insert(row)) A.push_back(row);
        }
        std::vector<std::vector<std::vector<uint16_t>>> moved;
        for (unsigned i = 0; i < H.blocks(); ++i) {
            std::vector<std::vector<uint16_t>> imgs;
            for (const auto& v : H.block_basis(i)) {
                std::vector<uint16_t> w(2, 0);
                for (unsigned r = 0; r < 2; ++r)
                    for (unsigned cidx = 0; cidx < 2; ++cidx)
                        w[r] = ext9->add(w[r], ext9->mul(A[r][cidx], v[cidx]));
                imgs.push_back(std::move(w));
            }
            moved.push_back(std::move(imgs));
        }
        SystemH Hm(ext9, H.k(), moved);
        CHECK(design_check(Hm, {1, 3}).max_sum == 3);
        CHECK_FALSE(design_check(Hm, {1, 2}).verdict);
    }
}

TEST_CASE("periodic trace sets stay within the design budget") {
    auto f3 = Field::prime(3);
    auto ext9 = canonical_extension(f3, 2);
    SystemH H = code_to_system(square_family_code(f3, 2, 2));
    const std::vector<uint16_t> zero2(2, 0);

    PeriodicSubspace trivial(ext9, 2, 1, {}, {zero2, zero2});
    TraceCheck t0 = periodic_trace_check(trivial, H, 3);
    CHECK(t0.size == 1);
    CHECK(t0.log_size == 0);
    CHECK(t0.linear);
    CHECK(t0.verdict);

    // M = F_9 e_1 meets the budget exactly: 3 * 9 = 27 = q^{n-d}
    PeriodicSubspace line(ext9, 2, 1, {{1, 0}}, {zero2, zero2});
    TraceCheck t1 = periodic_trace_check(line, H, 3);
    CHECK(t1.size == 27);
    CHECK(t1.log_size == 3);
    CHECK(t1.linear);
    CHECK(t1.verdict);
    CHECK_FALSE(periodic_trace_check(line, H, 2).verdict);

    PeriodicSubspace shifted(ext9, 2, 1, {{1, 0}}, {{0, 1}, zero2});
    TraceCheck t2 = periodic_trace_check(shifted, H, 3);
    CHECK(t2.size == 27);
    CHECK_FALSE(t2.linear);
    CHECK(t2.verdict);

    SUBCASE("seeded draws never exceed the budget") {
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            PeriodicSubspace T = random_periodic_subspace(ext9, 2, 2, 1, 1, seed);
            TraceCheck tr = periodic_trace_check(T, H, 3);
            CHECK(tr.verdict);
            CHECK(tr.log_size <= 3);
        }
        PeriodicSubspace s2 = random_periodic_subspace(ext9, 2, 2, 1, 1, 2);
        CHECK(periodic_trace_check(s2, H, 3).size == 9);
    }

    SUBCASE("construction and matching preconditions") {
        using Rows = std::vector<std::vector<uint16_t>>;
        CHECK_THROWS_AS(PeriodicSubspace(ext9, 2, 1, Rows{{1, 0}, {0, 1}}, Rows{zero2}),
                        PreconditionViolation);
        CHECK_THROWS_AS(PeriodicSubspace(ext9, 2, 2, Rows{}, Rows{zero2}),
                        PreconditionViolation);
        CHECK_THROWS_AS(PeriodicSubspace(ext9, 2, 1, Rows{{1, 0}, {2, 0}}, Rows{zero2}),
                        PreconditionViolation);
        CHECK_THROWS_AS(PeriodicSubspace(ext9, 2, 1, Rows{{1, 0}}, Rows{{1, 0, 0}}),
                        DimensionMismatch);
        CHECK_THROWS_AS(PeriodicSubspace(ext9, 2, 1, Rows{{1, 0}}, Rows{}),
                        PreconditionViolation);
        CHECK_THROWS_AS(random_periodic_subspace(ext9, 2, 2, 1, 2, 7), PreconditionViolation);

        SystemH planes(f3, 2, {{{1, 0}}, {{0, 1}}});
        CHECK_THROWS_AS(periodic_trace_check(line, planes, 3), FieldMismatch);
        PeriodicSubspace three(ext9, 2, 1, {{1, 0}}, {zero2, zero2, zero2});
        CHECK_THROWS_AS(periodic_trace_check(three, H, 3), ShapeMismatch);
        CHECK_THROWS_AS(periodic_trace_check(line, H, 3, 5), EnumerationBudgetExceeded);
    }
}

TEST_SUITE_END();
