#include "common.hpp"

#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace sublin;

TEST_CASE("upper and lower expectation on M0") {
    const testing::M0 m;
    CHECK(upper_expect(m.p, m.x) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(lower_expect(m.p, m.x) == doctest::Approx(-0.2).epsilon(1e-15));
    const auto d = upper_expect_detail(m.p, m.x);
    CHECK(d.vertex == 1);
    const auto pair = expectation_pair(m.p, m.x);
    CHECK(pair.upper == upper_expect(m.p, m.x));
    CHECK(pair.lower == lower_expect(m.p, m.x));
}

TEST_CASE("constants, singletons and nonnegative variables") {
    const testing::M3 m;
    CHECK(upper_expect(m.p, constant(m.space, -2.5)) == doctest::Approx(-2.5));
    CHECK(lower_expect(m.p, constant(m.space, 4.0)) == doctest::Approx(4.0));
    const CredalSet single(m.space, {m.p.vertex(2)});
    CHECK(upper_expect(single, m.x) == linear_expect(m.p.vertex(2), m.x));
    CHECK(lower_expect(m.p, m.x.abs()) >= 0.0);
}

TEST_CASE("lowest attaining vertex is reported") {
    const testing::M0 m;
    const CredalSet twice(m.space, {m.p.vertex(1), m.p.vertex(1)});
    CHECK(upper_expect_detail(twice, m.x).vertex == 0);
}

TEST_CASE("axioms hold on random credal sets") {
    const testing::M0 m;
    CHECK(check_axioms(m.p, 1000, 1).pass());
    Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_space(rng, 1, 6);
        const CredalSet p = random_credal_set(rng, s, 1, 6);
        const auto r = check_axioms(p, 30, rng.next());
        CHECK_MESSAGE(r.pass(), r.first_counterexample);
        CHECK(r.trials == 30);
    }
}

TEST_CASE("homogeneity at zero and subadditivity equality for one vertex") {
    const testing::M3 m;
    CHECK(upper_expect(m.p, m.x * 0.0) == 0.0);
    const CredalSet single(m.space, {m.p.vertex(0)});
    const RandomVar y(m.space, {3.0, -1.0, 0.5});
    CHECK(upper_expect(single, m.x + y) ==
          doctest::Approx(upper_expect(single, m.x) + upper_expect(single, y)).epsilon(1e-14));
    CHECK(upper_expect(m.p, m.x + y) <= upper_expect(m.p, m.x) + upper_expect(m.p, y) + 1e-12);
}

TEST_CASE("holder") {
    const testing::M0 m;
    const auto one = constant(m.space, 1.0);
    const auto r1 = holder_check(m.p, one, one, 2.5);
    CHECK(r1.pass);
    CHECK(r1.lhs == doctest::Approx(1.0));
    CHECK(r1.rhs == doctest::Approx(1.0));

    const auto r2 = holder_check(m.p, m.x, m.x, 2.0);
    CHECK(r2.lhs == doctest::Approx(1.0));
    CHECK(r2.rhs == doctest::Approx(1.0));
    CHECK(r2.pass);

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_space(rng, 2, 5);
        const CredalSet p = random_credal_set(rng, s, 1, 4);
        const auto x = random_var(rng, s, -3, 3), y = random_var(rng, s, -3, 3);
        const auto r = holder_check(p, x, y, 3.0);
        CHECK(r.pass);
        CHECK(r.slack >= -1e-12);
    }
    CHECK_THROWS_AS(holder_check(m.p, m.x, m.x, 1.0), Error);
}

TEST_CASE("factorization of a nonnegative pair") {
    const testing::M0 m;
    const auto r = factorization_check(m.seq(2, Semantics::PengBackward), 1.0);
    CHECK(r.upper_joint == doctest::Approx(1.44).epsilon(1e-14));
    CHECK(r.upper_product == doctest::Approx(1.44).epsilon(1e-14));
    CHECK(r.lower_joint == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(r.lower_product == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(r.pass());

    const auto pm = make_space({"a", "b"});
    const CredalSet point(pm, {make_measure(pm, {0.3, 0.7})});
    const SequenceModel classical(point, RandomVar(pm, {1.0, 2.0}), 2, Semantics::PengBackward);
    const auto c = factorization_check(classical, 0.0);
    CHECK(c.upper_joint == doctest::Approx(c.upper_product).epsilon(1e-15));
}
