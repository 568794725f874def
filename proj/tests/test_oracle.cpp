#include "common.hpp"

#include "sublin/error.hpp"
#include "sublin/oracle.hpp"
#include "sublin/suites.hpp"

#include <doctest.h>

#include <cmath>

using namespace sublin;

TEST_CASE("strategy counts") {
    CHECK(peng_strategy_count(2, 2, 2) == 8);
    CHECK(peng_strategy_count(3, 1, 4) == 81);
    CHECK(peng_strategy_count(1, 3, 3) == 1);
    CHECK(peng_strategy_count(3, 3, 3) > kOracleCap);
    CHECK(peng_strategy_count(10, 10, 10) == SIZE_MAX);
}

TEST_CASE("oracles on M0") {
    const testing::M0 m;
    const auto prod = Functional::custom(2, [](auto x) { return x[0] * x[1]; });
    CHECK(oracle_peng(m.seq(2, Semantics::PengForward), prod) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(oracle_peng(m.seq(2, Semantics::PengBackward), prod) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(oracle_qwise(m.seq(2, Semantics::QwiseProduct), prod) == doctest::Approx(0.04).epsilon(1e-13));
    const auto sum = Functional::custom(3, [](auto x) { return x[0] + x[1] + x[2]; });
    CHECK(oracle_qwise(m.seq(3, Semantics::QwiseProduct), sum) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(oracle_qwise(m.seq(2, Semantics::QwiseProduct), Functional::constant(2, 4.5)) == doctest::Approx(4.5));
    CHECK(oracle_peng(m.seq(1, Semantics::PengForward), Functional::coordinate(1, 0)) ==
          doctest::Approx(0.2).epsilon(1e-14));

    // monotone functionals do not profit from adaptivity
    const auto mono = Functional::max_partial_sum(2);
    CHECK(oracle_peng(m.seq(2, Semantics::PengForward), mono) ==
          doctest::Approx(oracle_qwise(m.seq(2, Semantics::QwiseProduct), mono)).epsilon(1e-14));
}

TEST_CASE("oracle orientations differ where the recursion does") {
    const testing::M0 m;
    const auto sq = Functional::max_partial_sum(2).power(2.0);
    const auto fwd = m.seq(2, Semantics::PengForward).with_coordinates({m.x + (-0.2), m.x + (-0.2)});
    CHECK(oracle_peng(fwd, sq) == doctest::Approx(1.4464).epsilon(1e-14));
    CHECK(oracle_peng(fwd.with_semantics(Semantics::PengBackward), sq) == doctest::Approx(1.408).epsilon(1e-14));
}

TEST_CASE("oracle refuses oversized and mismatched models") {
    const testing::M3 m;
    try {
        oracle_peng(m.seq(3, Semantics::PengForward), Functional::max_partial_sum(3));
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
    CHECK_THROWS_AS(oracle_peng(m.seq(2, Semantics::QwiseProduct), Functional::max_partial_sum(2)), Error);
}

TEST_CASE("engine agrees with the oracles on random instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto inst = random_oracle_instance(seed);
        for (Semantics s : {Semantics::PengForward, Semantics::PengBackward, Semantics::QwiseProduct}) {
            const auto model = inst.model.with_semantics(s);
            const double engine = eval_upper(model, inst.f);
            const double oracle = s == Semantics::QwiseProduct ? oracle_qwise(model, inst.f) : oracle_peng(model, inst.f);
            CHECK(std::abs(engine - oracle) <= 1e-12);
        }
    }
}

TEST_CASE("negative dependence scan") {
    const testing::M0 m;
    const auto r = oracle_nd_scan(m.seq(2, Semantics::QwiseProduct), 1, 9, 20);
    CHECK(r.pass());
    CHECK(r.step_pairs > 0);
    CHECK(r.generated_pairs == 20);
    CHECK(r.inapplicable >= 20);
    CHECK(r.worst_margin >= -1e-12);

    // the matching Peng orientation is covered too
    CHECK(oracle_nd_scan(m.seq(2, Semantics::PengForward), 1, 9, 20).pass());
    const testing::M3 t;
    CHECK(oracle_nd_scan(t.seq(2, Semantics::QwiseProduct), 1, 1, 50).pass());
}

TEST_CASE("choquet quadrature oracle") {
    const testing::M0 m;
    CHECK(oracle_choquet(CapacityView(m.p, CapacityMode::Upper), m.x) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(oracle_choquet(CapacityView(m.p, CapacityMode::Upper), constant(m.space, 1.5)) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(oracle_choquet(CapacityView(m.p, CapacityMode::Upper), m.x + 3.0) == doctest::Approx(3.2).epsilon(1e-12));
}
