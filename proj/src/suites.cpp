#include "sublin/suites.hpp"

#include "sublin/capacity.hpp"
#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/oracle.hpp"
#include "sublin/random.hpp"

#include <algorithm>
#include <cmath>

namespace sublin {

namespace {

const char* const kExtraSuites[] = {"axioms", "closure", "scalar", "capacity", "engine-oracle", "nd"};

InequalityReport count_report(std::string name, std::size_t failures, std::string provenance, std::uint64_t fp,
                              std::uint64_t seed) {
    return make_report(std::move(name), static_cast<double>(failures), 0.0, 1.0, std::move(provenance), fp, seed, 0.0);
}

template <typename Body>
std::vector<InequalityReport> per_trial(const SuiteOptions& o, Body body) {
    std::vector<std::vector<InequalityReport>> slots(o.trials);
    parallel_for(o.trials, o.threads ? o.threads : default_thread_count(),
                 [&](std::size_t i) { body(derive_seed(o.seed, i), slots[i]); });
    std::vector<InequalityReport> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

std::vector<InequalityReport> axioms_suite(const SuiteOptions& o) {
    return per_trial(o, [](std::uint64_t seed, std::vector<InequalityReport>& out) {
        Rng rng(seed);
        const auto space = random_space(rng, 1, 6);
        const CredalSet p = random_credal_set(rng, space, 1, 6);
        const AxiomReport a = check_axioms(p, 20, splitmix64(seed));
        const std::size_t failures =
            a.monotonicity_failures + a.constant_failures + a.subadditivity_failures + a.homogeneity_failures;
        out.push_back(count_report("axioms", failures, "monotonicity, constants, subadditivity, homogeneity",
                                   fingerprint(p), seed));
    });
}

std::vector<InequalityReport> capacity_suite(const SuiteOptions& o) {
    return per_trial(o, [&](std::uint64_t seed, std::vector<InequalityReport>& out) {
        Rng rng(seed);
        const auto space = random_space(rng, 1, 6);
        const CredalSet p = random_credal_set(rng, space, 1, 5);
        const RandomVar x = random_var(rng, space, -5.0, 5.0);
        Fingerprint fp;
        fp.add(fingerprint(p)).add(x.values());
        for (CapacityMode mode : {CapacityMode::Upper, CapacityMode::Lower}) {
            const CapacityView view(p, mode);
            const double a = choquet(view, x).value, b = oracle_choquet(view, x);
            out.push_back(make_report(mode == CapacityMode::Upper ? "choquet_oracle/upper" : "choquet_oracle/lower",
                                      std::abs(a - b), 1e-10, 1.0, "level sum vs quadrature", fp.value(), seed, 0.0));
        }
        auto r1 = mean_choquet_domination(p, x);
        auto r2 = truncated_moment_tail_bound(p, x, 100);
        r1.seed = r2.seed = seed;
        out.push_back(r1);
        out.push_back(r2);
    });
}

std::vector<InequalityReport> engine_oracle_suite(const SuiteOptions& o) {
    return per_trial(o, [](std::uint64_t seed, std::vector<InequalityReport>& out) {
        const OracleInstance inst = random_oracle_instance(seed);
        for (Semantics s : {Semantics::PengForward, Semantics::PengBackward, Semantics::QwiseProduct}) {
            const SequenceModel m = inst.model.with_semantics(s);
            const double engine = eval_upper(m, inst.f);
            const double oracle = s == Semantics::QwiseProduct ? oracle_qwise(m, inst.f) : oracle_peng(m, inst.f);
            out.push_back(make_report("engine_oracle/" + std::string(to_string(s)), std::abs(engine - oracle), 0.0,
                                      1.0, "|engine - oracle| <= 1e-12", m.fingerprint(), seed, 1e-12));
        }
    });
}

std::vector<InequalityReport> nd_suite(const SuiteOptions& o) {
    return per_trial(o, [](std::uint64_t seed, std::vector<InequalityReport>& out) {
        RandomSequenceSpec spec;
        spec.shape.max_outcomes = 3;
        spec.shape.max_vertices = 3;
        spec.min_horizon = spec.max_horizon = 2;
        spec.semantics = {Semantics::QwiseProduct};
        spec.truncated_fraction = 0.0;
        const SequenceModel m = random_sequence_model(seed, spec);
        const NdScanReport r = oracle_nd_scan(m, 1, splitmix64(seed), 1);
        out.push_back(count_report("nd_scan", r.violations, "monotone pairs violating negative dependence",
                                   m.fingerprint(), seed));
    });
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (Theorem t : all_theorems()) out.emplace_back(to_string(t));
    for (const char* s : kExtraSuites) out.emplace_back(s);
    return out;
}

bool is_suite(std::string_view name) {
    const auto names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

OracleInstance random_oracle_instance(std::uint64_t seed) {
    Rng rng(seed);
    std::size_t m = 0, v = 0, n = 0;
    do {
        m = rng.uniform_int(1, 3);
        v = rng.uniform_int(1, 3);
        n = rng.uniform_int(1, 3);
    } while (peng_strategy_count(v, m, n) > kOracleCap);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("w" + std::to_string(i));
    const auto space = make_space(std::move(labels));
    CredalSet p = random_credal_set(rng, space, v, v);
    const RandomVar x = random_var(rng, space, -2.0, 2.0);
    SequenceModel model(std::move(p), x, n, Semantics::PengForward);

    std::vector<double> c(n), w(n);
    for (std::size_t k = 0; k < n; ++k) {
        c[k] = rng.uniform(-1.0, 1.0);
        w[k] = rng.uniform(-2.0, 2.0);
    }
    const double d = rng.uniform(-1.0, 1.0), e = rng.uniform(-1.0, 1.0);
    Functional f = Functional::custom(
        n,
        [c, w, d, e](std::span<const double> z) {
            double lin = 0.0, prod = 1.0, arg = 0.0;
            for (std::size_t k = 0; k < z.size(); ++k) {
                lin += c[k] * z[k];
                prod *= z[k];
                arg += w[k] * z[k];
            }
            return lin + d * prod + e * std::sin(arg) + std::max(0.0, arg);
        },
        "random smooth");
    return {std::move(model), std::move(f)};
}

std::vector<InequalityReport> run_suite(std::string_view name, const SuiteOptions& options, const SequenceModel* fixed) {
    std::vector<InequalityReport> out;
    if (auto t = parse_theorem(name)) {
        return run_theorem_suite(*t, options, fixed);
    } else if (name == "axioms") {
        out = axioms_suite(options);
    } else if (name == "closure") {
        const auto c = closure_soundness_check(options.seed, std::max<std::size_t>(options.trials, 1) * 50);
        out.push_back(count_report("closure_soundness", c.violations, "x <= a + b x^{1-1/p} + c x^{1-2/p} => x <= B",
                                   options.seed, options.seed));
    } else if (name == "scalar") {
        const auto s = scalar_inequality_suite(options.seed, options.trials * 50);
        for (const auto& r : s.results) {
            out.push_back(count_report("scalar/" + r.name, r.violations, "grid and random points", options.seed,
                                       options.seed));
        }
    } else if (name == "capacity") {
        out = capacity_suite(options);
    } else if (name == "engine-oracle") {
        out = engine_oracle_suite(options);
    } else if (name == "nd") {
        out = nd_suite(options);
    } else {
        throw Error(ErrorCode::PreconditionViolated, "unknown suite '" + std::string(name) + "'");
    }
    sort_reports(out);
    return out;
}

} // namespace sublin
