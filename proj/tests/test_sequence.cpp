#include "common.hpp"

#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace sublin;

namespace {

Functional fn(std::size_t n, Functional::Fn f) { return Functional::custom(n, std::move(f)); }

const Semantics kAll[] = {Semantics::PengForward, Semantics::PengBackward, Semantics::QwiseProduct};

} // namespace

TEST_CASE("semantics names") {
    for (Semantics s : kAll) CHECK(parse_semantics(to_string(s)) == s);
    CHECK(!parse_semantics("peng").has_value());
}

TEST_CASE("M0 product of coordinates") {
    const testing::M0 m;
    const auto prod = fn(2, [](auto x) { return x[0] * x[1]; });
    CHECK(eval_upper(m.seq(2, Semantics::PengForward), prod) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(eval_upper(m.seq(2, Semantics::PengBackward), prod) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(eval_upper(m.seq(2, Semantics::QwiseProduct), prod) == doctest::Approx(0.04).epsilon(1e-13));
    CHECK(eval_lower(m.seq(2, Semantics::PengForward), prod) == doctest::Approx(-0.2).epsilon(1e-14));
    CHECK(eval_lower(m.seq(2, Semantics::QwiseProduct), prod) == doctest::Approx(-0.04).epsilon(1e-13));
}

TEST_CASE("M0 sum of three") {
    const testing::M0 m;
    const auto sum = fn(3, [](auto x) { return x[0] + x[1] + x[2]; });
    for (Semantics s : kAll) CHECK(eval_upper(m.seq(3, s), sum) == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("three-outcome model frozen values") {
    // [forward, backward, qwise] from derive_frozen.py
    const testing::M3 m;
    struct Case {
        Functional f;
        double v[3];
    };
    const Case cases[] = {
        {Functional::max_partial_sum(3), {4.602500000000001, 4.602500000000001, 4.602500000000001}},
        {Functional::sum_power(3, 2.0), {23.991500000000006, 23.991500000000006, 23.347500000000007}},
        {fn(3, [](auto x) { return std::max(0.0, x[0] * x[1] - x[2]); }), {3.372875, 3.3728750000000005, 3.215625000000001}},
        {fn(3, [](auto x) { return x[0] - 2 * x[1] * x[2] + std::abs(x[2] - x[0]); }), {6.37425, 6.78375, 5.62875}},
    };
    for (const auto& c : cases) {
        for (int k = 0; k < 3; ++k) {
            CAPTURE(c.f.label());
            CAPTURE(k);
            CHECK(eval_upper(m.seq(3, kAll[k]), c.f) == doctest::Approx(c.v[k]).epsilon(1e-13));
        }
    }
}

TEST_CASE("single coordinate reduces to the marginal") {
    const testing::M3 m;
    const auto sq = fn(1, [](auto x) { return x[0] * x[0] - x[0]; });
    const double direct = upper_expect(m.p, m.x.map([](double v) { return v * v - v; }));
    for (Semantics s : kAll) CHECK(eval_upper(m.seq(1, s), sq) == doctest::Approx(direct).epsilon(1e-15));
}

TEST_CASE("qwise is dominated by both Peng orientations") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_space(rng, 2, 3);
        const CredalSet p = random_credal_set(rng, s, 1, 3);
        const auto x = random_var(rng, s, -2, 2);
        const std::size_t n = rng.uniform_int(1, 3);
        const double w = rng.uniform(-1, 1);
        const auto f = fn(n, [w](auto z) {
            double acc = 0.0, prod = 1.0;
            for (double v : z) {
                acc += v;
                prod *= v;
            }
            return std::sin(acc) + w * prod;
        });
        const double q = eval_upper(SequenceModel(p, x, n, Semantics::QwiseProduct), f);
        CHECK(q <= eval_upper(SequenceModel(p, x, n, Semantics::PengForward), f) + 1e-12);
        CHECK(q <= eval_upper(SequenceModel(p, x, n, Semantics::PengBackward), f) + 1e-12);
    }
}

TEST_CASE("builtin functionals and post transforms") {
    const std::vector<double> pt{1.0, -3.0, 0.5};
    CHECK(Functional::max_partial_sum(3)(pt) == 1.0);
    CHECK(Functional::max_abs_partial_sum(3)(pt) == 2.0);
    CHECK(Functional::reversed_max_partial_sum(3)(pt) == doctest::Approx(0.5));
    CHECK(Functional::sum_power(3, 3.0)(pt) == doctest::Approx(3.375));
    CHECK(Functional::coordinate(3, 1)(pt) == -3.0);
    CHECK(Functional::coordinate(3, 1).abs().power(2.0)(pt) == doctest::Approx(9.0));
    CHECK(Functional::coordinate(3, 1).positive_part()(pt) == 0.0);
    CHECK(Functional::coordinate(3, 0).scaled(4.0).shifted(-1.0)(pt) == 3.0);
    CHECK(Functional::coordinate(1, 0).lifted(2, 3)(pt) == 0.5);
    CHECK(product(Functional::coordinate(3, 0), Functional::coordinate(3, 1))(pt) == -3.0);
    CHECK(Functional::constant(3, 7.0)(pt) == 7.0);
}

TEST_CASE("constant functional under every semantics") {
    const testing::M3 m;
    for (Semantics s : kAll) CHECK(eval_upper(m.seq(3, s), Functional::constant(3, -1.25)) == doctest::Approx(-1.25));
}

TEST_CASE("arity and budget errors") {
    const testing::M3 m;
    CHECK_THROWS_AS(eval_upper(m.seq(2, Semantics::PengForward), Functional::max_partial_sum(3)), Error);
    EngineOptions tiny;
    tiny.tensor_budget = 10;
    tiny.tuple_budget = 10;
    try {
        eval_upper(m.seq(3, Semantics::PengForward), Functional::max_partial_sum(3), tiny);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
}

TEST_CASE("identical distribution along the sequence") {
    const testing::M0 m;
    const Functional probes[] = {fn(1, [](auto x) { return x[0] * x[0]; }), fn(1, [](auto x) { return x[0]; }),
                                 fn(1, [](auto x) { return std::max(x[0] - 0.2, 0.0); })};
    for (Semantics s : kAll) {
        const auto r = identical_distribution_check(m.seq(3, s), probes);
        CHECK(r.pass);
        for (double v : r.values[0]) CHECK(v == doctest::Approx(1.0));
        for (double v : r.values[1]) CHECK(v == doctest::Approx(0.2));
    }
}

TEST_CASE("monotone functional generator") {
    const testing::M3 m;
    const std::vector<RandomVar> coords{m.x, m.x};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (auto dir : {Monotonicity::Nondecreasing, Monotonicity::Nonincreasing}) {
            const auto spec = generate_monotone_functional(seed, 2, dir);
            const auto f = spec.functional();
            CHECK(is_monotone(f, coords, dir));
            const auto again = generate_monotone_functional(seed, 2, dir).functional();
            const std::vector<double> pt{0.3, -1.1};
            CHECK(f(pt) == again(pt));
            CHECK(f(pt) >= 0.0);
        }
    }
    const auto one = generate_monotone_functional(3, 1, Monotonicity::Nondecreasing);
    for (const auto& term : one.terms)
        for (double s : term[0].slopes) CHECK(s >= 0.0);
}

TEST_CASE("negative dependence on M0") {
    const testing::M0 m;
    const auto phi1 = Functional::coordinate(1, 0).shifted(1.0);
    const auto phi2 = Functional::coordinate(1, 0).shifted(1.0);
    const auto r = nd_check(m.seq(2, Semantics::QwiseProduct), 1, phi1, phi2);
    CHECK(r.lhs == doctest::Approx(1.44));
    CHECK(r.rhs == doctest::Approx(1.44));
    CHECK(r.pass);

    const auto negative = Functional::coordinate(1, 0).shifted(-5.0);
    try {
        nd_check(m.seq(2, Semantics::QwiseProduct), 1, phi1, negative);
        FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PreconditionViolated);
    }
}

TEST_CASE("negative dependence with generated monotone pairs") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_space(rng, 2, 3);
        const CredalSet p = random_credal_set(rng, s, 1, 3);
        const auto x = random_var(rng, s, -2, 2);
        const SequenceModel model(p, x, 3, Semantics::QwiseProduct);
        const auto dir = rng.coin() ? Monotonicity::Nondecreasing : Monotonicity::Nonincreasing;
        const auto f1 = generate_monotone_functional(rng.next(), 1, dir).functional();
        const auto f2 = generate_monotone_functional(rng.next(), 2, dir).functional();
        CHECK(nd_check(model, 1, f1, f2).pass);
    }
}

TEST_CASE("materialize orders X_1 slowest") {
    const testing::M0 m;
    const auto t = materialize(m.seq(2, Semantics::PengForward), fn(2, [](auto x) { return 10 * x[0] + x[1]; }));
    REQUIRE(t.size() == 4);
    CHECK(t[0] == -11.0);
    CHECK(t[1] == -9.0);
    CHECK(t[2] == 9.0);
    CHECK(t[3] == 11.0);
}
