#include "sublin/expectation.hpp"

#include "sublin/error.hpp"
#include "sublin/random.hpp"
#include "sublin/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sublin {

UpperExpectation upper_expect_detail(const CredalSet& p, const RandomVar& x) {
    require_same_space(p.space(), x.space(), "upper_expect");
    UpperExpectation best{linear_expect(p.vertex(0), x), 0};
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double v = linear_expect(p.vertex(i), x);
        if (v > best.value) best = {v, i};
    }
    return best;
}

double upper_expect(const CredalSet& p, const RandomVar& x) { return upper_expect_detail(p, x).value; }

double lower_expect(const CredalSet& p, const RandomVar& x) { return -upper_expect(p, -x); }

ExpectationPair expectation_pair(const CredalSet& p, const RandomVar& x) {
    return {upper_expect(p, x), lower_expect(p, x)};
}

namespace {

std::string describe(const char* axiom, const RandomVar& x, double lhs, double rhs) {
    std::ostringstream os;
    os.precision(17);
    os << axiom << ": lhs=" << lhs << " rhs=" << rhs << " X=[";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "]";
    return os.str();
}

} // namespace

AxiomReport check_axioms(const CredalSet& p, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw Error(ErrorCode::PreconditionViolated, "trials must be >= 1");
    Rng rng(seed);
    AxiomReport rep;
    rep.trials = trials;
    const auto& space = p.space();
    auto note = [&](const std::string& s) {
        if (rep.first_counterexample.empty()) rep.first_counterexample = s;
    };
    for (std::size_t t = 0; t < trials; ++t) {
        const RandomVar x = random_var(rng, space, -10.0, 10.0);
        const RandomVar y = x + random_var(rng, space, -5.0, 0.0); // y <= x
        const RandomVar z = random_var(rng, space, -10.0, 10.0);
        const double lambda = rng.coin(0.1) ? 0.0 : rng.uniform(0.0, 5.0);
        const double c = rng.uniform(-5.0, 5.0);

        const double ex = upper_expect(p, x);
        const double ey = upper_expect(p, y);
        if (ex < ey - 1e-12 * std::max(1.0, std::abs(ey))) {
            ++rep.monotonicity_failures;
            note(describe("monotonicity", x, ey, ex));
        }
        const double ec = upper_expect(p, constant(space, c));
        if (std::abs(ec - c) > 1e-12 * std::max(1.0, std::abs(c))) {
            ++rep.constant_failures;
            note(describe("constant", constant(space, c), ec, c));
        }
        const double exz = upper_expect(p, x + z);
        const double ez = upper_expect(p, z);
        if (exz > ex + ez + 1e-9) {
            ++rep.subadditivity_failures;
            note(describe("subadditivity", x + z, exz, ex + ez));
        }
        const double el = upper_expect(p, x * lambda);
        if (std::abs(el - lambda * ex) > 1e-9 * std::max(1.0, std::abs(lambda * ex))) {
            ++rep.homogeneity_failures;
            note(describe("homogeneity", x * lambda, el, lambda * ex));
        }
    }
    return rep;
}

InequalityReport holder_check(const CredalSet& p, const RandomVar& x, const RandomVar& y, double exponent_p) {
    if (!(exponent_p > 1.0) || !std::isfinite(exponent_p)) {
        throw Error(ErrorCode::BadExponent, "Hoelder exponent must be > 1");
    }
    require_same_space(x.space(), y.space(), "holder_check");
    const double q = exponent_p / (exponent_p - 1.0);
    const double lhs = upper_expect(p, (x * y).abs());
    const double nx = std::pow(upper_expect(p, x.abs().map([&](double v) { return std::pow(v, exponent_p); })),
                               1.0 / exponent_p);
    const double ny = std::pow(upper_expect(p, y.abs().map([&](double v) { return std::pow(v, q); })), 1.0 / q);
    Fingerprint fp;
    fp.add(fingerprint(p)).add(x.values()).add(y.values()).add(exponent_p);
    return make_report("holder", lhs, nx * ny, 1.0, "Hoelder inequality, conjugate exponents", fp.value());
}

FactorizationReport factorization_check(const SequenceModel& model, double shift) {
    if (model.horizon() != 2) throw Error(ErrorCode::ArityMismatch, "factorization_check needs horizon 2");
    if (model.semantics() == Semantics::QwiseProduct) {
        throw Error(ErrorCode::PreconditionViolated, "factorization_check needs Peng semantics");
    }
    std::vector<RandomVar> shifted;
    for (const auto& c : model.coordinates()) {
        RandomVar s = c + shift;
        if (s.min() < 0.0) throw Error(ErrorCode::PrNotNonnegative, "shifted coordinate takes negative values");
        shifted.push_back(std::move(s));
    }
    const SequenceModel m = model.with_coordinates(std::move(shifted));
    const auto x1 = Functional::coordinate(2, 0);
    const auto x2 = Functional::coordinate(2, 1);
    const auto prod = product(x1, x2);

    FactorizationReport rep;
    rep.upper_joint = eval_upper(m, prod);
    rep.upper_product = eval_upper(m, x1) * eval_upper(m, x2);
    rep.lower_joint = eval_lower(m, prod);
    rep.lower_product = eval_lower(m, x1) * eval_lower(m, x2);
    Fingerprint fp;
    fp.add(m.fingerprint());
    rep.upper = make_report("factorization_upper", std::abs(rep.upper_joint - rep.upper_product), 0.0, 1.0,
                            "independence product rule, upper", fp.value());
    rep.lower = make_report("factorization_lower", std::abs(rep.lower_joint - rep.lower_product), 0.0, 1.0,
                            "independence product rule, lower", fp.value());
    return rep;
}

} // namespace sublin
