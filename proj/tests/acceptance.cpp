// Acceptance gate: one line per criterion, exit status 0 iff all pass.

#include "sublin/capacity.hpp"
#include "sublin/expectation.hpp"
#include "sublin/inequality.hpp"
#include "sublin/oracle.hpp"
#include "sublin/random.hpp"
#include "sublin/report.hpp"
#include "sublin/slln.hpp"
#include "sublin/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace sublin;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs <= budget_s;
    const bool pass = r.ok && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-22s %6.2fs/%4.0fs  %s%s\n", pass ? "PASS" : "FAIL", id, title, secs, budget_s,
                r.detail.c_str(), in_budget ? "" : " (over budget)");
    std::fflush(stdout);
}

std::size_t count_failed(const std::vector<InequalityReport>& rs) {
    std::size_t n = 0;
    for (const auto& r : rs) n += !r.pass;
    return n;
}

struct M0 {
    SpacePtr space = make_space({"-1", "+1"});
    CredalSet p{space, {make_measure(space, {0.6, 0.4}), make_measure(space, {0.4, 0.6})}};
    RandomVar x{space, {-1.0, 1.0}};
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const char* const kPolicies[] = {"fixed:0", "iid", "periodic:1:2", "greedy:0.1", "schedule:0,1,1"};

// Trajectory CSVs, metadata and the band report for criterion 9 as one string.
std::string band_artifacts(std::size_t threads, bool& all_pass, std::string& detail) {
    const M0 m;
    std::ostringstream bytes;
    all_pass = true;
    double worst = 0.0;
    for (const char* text : kPolicies) {
        const auto policy = SelectionPolicy::parse(text);
        const auto ts = simulate_many(m.p, m.x, policy, 100'000, kSeed, 64, threads);
        const auto band = slln_band_check(ts, m.p, m.x, 0.02);
        all_pass = all_pass && band.pass;
        worst = std::max(worst, band.lhs);
        for (const auto& t : ts) {
            write_trajectory_csv(bytes, t);
            bytes << trajectory_metadata_json(t) << "\n";
        }
        bytes << to_jsonl(band) << "\n";
    }
    detail = fmt("320 trajectories, worst excursion %.4f <= 0.02", worst);
    return bytes.str();
}

} // namespace

int main() {
    const std::size_t threads = default_thread_count();
    SuiteOptions base;
    base.trials = 200;
    base.seed = kSeed;
    base.threads = threads;

    criterion(1, "axioms", 5, [&] {
        SuiteOptions o = base;
        o.trials = 1000;
        const auto rs = run_suite("axioms", o);
        return Outcome{count_failed(rs) == 0 && rs.size() == 1000,
                       fmt("%zu credal sets, %zu with violations", rs.size(), count_failed(rs))};
    });

    criterion(2, "engine/oracle", 30, [&] {
        SuiteOptions o = base;
        o.trials = 500;
        const auto rs = run_suite("engine-oracle", o);
        double worst = 0.0;
        for (const auto& r : rs) worst = std::max(worst, r.lhs);
        return Outcome{count_failed(rs) == 0 && rs.size() == 1500,
                       fmt("500 instances x 3 semantics, max |engine - oracle| = %.3g", worst)};
    });

    criterion(3, "kolmogorov", 20, [&] {
        const auto rs = run_theorem_suite(Theorem::Kolmogorov, base);
        const M0 m;
        const SequenceModel m0(m.p, m.x, 2, Semantics::PengBackward);
        const auto r = kolmogorov_verify(m0, {});
        const bool frozen = std::abs(r.lhs - 1.408) <= 1e-9 && std::abs(r.rhs - 2.24) <= 1e-9 && r.pass;
        return Outcome{count_failed(rs) == 0 && frozen,
                       fmt("%zu random models, %zu failed; M0 lhs %.12g rhs %.12g", rs.size(), count_failed(rs), r.lhs,
                           r.rhs)};
    });

    criterion(4, "rosenthal suite", 120, [&] {
        std::size_t total = 0, failed = 0;
        for (Theorem t : all_theorems()) {
            if (t == Theorem::Kolmogorov) continue;
            const auto rs = run_theorem_suite(t, base);
            total += rs.size();
            failed += count_failed(rs);
        }
        return Outcome{failed == 0, fmt("6 theorems x 200 models, %zu checks, %zu failed", total, failed)};
    });

    criterion(5, "closure soundness", 10, [&] {
        const auto c = closure_soundness_check(kSeed, 10'000);
        return Outcome{c.pass() && c.trials == 10'000, fmt("%zu tuples, %zu violations", c.trials, c.violations)};
    });

    criterion(6, "scalar inequalities", 5, [&] {
        const auto s = scalar_inequality_suite(kSeed, 0);
        bool ok = !s.results.empty();
        std::size_t points = SIZE_MAX, violations = 0;
        for (const auto& r : s.results) {
            ok = ok && r.violations == 0 && r.points >= 10'000;
            points = std::min(points, r.points);
            violations += r.violations;
        }
        return Outcome{ok, fmt("%zu inequalities, >= %zu points each, %zu violations", s.results.size(), points,
                               violations)};
    });

    criterion(7, "capacity/choquet", 30, [&] {
        const auto rs = run_suite("capacity", base);
        // outer capacity against V on every event of random spaces up to 5 outcomes
        std::size_t events = 0, mismatches = 0;
        for (std::size_t i = 0; i < base.trials; ++i) {
            Rng rng(derive_seed(kSeed ^ 0x5a5a, i));
            const auto space = random_space(rng, 1, 5);
            const CredalSet p = random_credal_set(rng, space, 1, 5);
            for (std::uint64_t mask = 0; mask < (1ULL << space->size()); ++mask) {
                const auto a = EventSet::from_mask(space, mask);
                ++events;
                if (std::abs(outer_capacity(p, a) - upper_capacity(p, a)) > 1e-12) ++mismatches;
            }
        }
        return Outcome{count_failed(rs) == 0 && mismatches == 0,
                       fmt("%zu choquet/tail checks, %zu failed; %zu events, %zu outer-capacity mismatches", rs.size(),
                           count_failed(rs), events, mismatches)};
    });

    criterion(8, "negative dependence", 60, [&] {
        RandomSequenceSpec spec;
        spec.shape.min_outcomes = 1;
        spec.shape.max_outcomes = 3;
        spec.shape.max_vertices = 3;
        spec.min_horizon = spec.max_horizon = 2;
        spec.semantics = {Semantics::QwiseProduct};
        spec.truncated_fraction = 0.0;
        std::vector<NdScanReport> slots(base.trials);
        parallel_for(base.trials, threads, [&](std::size_t i) {
            const std::uint64_t seed = derive_seed(kSeed, i);
            slots[i] = oracle_nd_scan(random_sequence_model(seed, spec), 1, splitmix64(seed), 3);
        });
        NdScanReport total;
        for (const auto& s : slots) {
            total.step_pairs += s.step_pairs;
            total.generated_pairs += s.generated_pairs;
            total.violations += s.violations;
        }
        return Outcome{total.violations == 0 && total.generated_pairs >= 500,
                       fmt("200 models, %zu step pairs, %zu generated pairs, %zu violations", total.step_pairs,
                           total.generated_pairs, total.violations)};
    });

    std::string band_detail;
    bool band_ok = false;
    std::string band_bytes;
    criterion(9, "slln band", 60, [&] {
        band_bytes = band_artifacts(threads, band_ok, band_detail);
        return Outcome{band_ok, band_detail};
    });

    criterion(10, "cluster set", 60, [&] {
        const M0 m;
        const std::size_t n = 1'000'000;
        const auto t = simulate(m.p, m.x, SelectionPolicy::periodic(1, 10.0), n, kSeed);
        const auto c = cluster_check(t, m.p, m.x, 0.05, n / 100);
        const auto d = simulate(m.p, m.x, SelectionPolicy::periodic(1, 2.0), n, kSeed);
        const auto cd = cluster_check(d, m.p, m.x, 0.05, n / 100);
        return Outcome{c.coverage >= 0.9,
                       fmt("periodic:1:10 coverage %.3f over [%.3f, %.3f] (doubling blocks: %.3f)", c.coverage,
                           c.interval_lo, c.interval_hi, cd.coverage)};
    });

    criterion(11, "determinism", 120, [&] {
        bool ok1 = false;
        std::string d1;
        const std::string one = band_artifacts(1, ok1, d1);
        const std::size_t many = std::max<std::size_t>(threads, 2) + 1;
        bool ok2 = false;
        std::string d2;
        const std::string other = band_artifacts(many, ok2, d2);
        SuiteOptions a = base, b = base;
        a.threads = 1;
        b.threads = many;
        std::string ja, jb;
        for (const auto& r : run_suite("rosenthal-nd", a)) ja += to_jsonl(r) + "\n";
        for (const auto& r : run_suite("rosenthal-nd", b)) jb += to_jsonl(r) + "\n";
        const bool same = one == other && one == band_bytes && ja == jb;
        return Outcome{same, fmt("threads 1 vs %zu: %zu bytes of trajectories, %zu bytes of reports, %s", many,
                                 one.size(), ja.size(), same ? "identical" : "DIFFERENT")};
    });

    std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
