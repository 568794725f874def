#pragma once

// Maximal inequalities for partial sums, checked with explicit constants.
//
// None of the moment bounds here carry a tuned constant. Every C_p is the
// one that falls out of closing the recursive estimate
//
//     x <= a + b x^{1-1/p} + c x^{1-2/p}   =>   x <= 3a + (3b)^p + (3c)^{p/2}
//
// (or the two-term variant 2a + (2c)^{p/2} when b = 0), so a failed check
// means a defect in the engine, not a mis-tuned constant.

#include "sublin/random.hpp"
#include "sublin/report.hpp"
#include "sublin/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sublin {

// Which partial-sum statistic a bound is about, and hence which dependence
// orientation it needs.
enum class PartialSumForm {
    MaxPartial,         // max_k S_k; needs X_k ND/independent to (X_{k+1}..X_n)
    ReversedMaxPartial, // max_{0<=k<n} (S_n - S_k); needs X_{k+1} ND/independent to (X_1..X_k)
    FinalPositivePart,  // S_n^+; holds under either orientation
};

std::string_view to_string(PartialSumForm f);

SequenceModel center_upper(const SequenceModel& model); // X_k - E[X_k]
SequenceModel center_lower(const SequenceModel& model); // X_k - e[X_k] (lower expectation)

// x such that x <= a + b x^{1-1/p} + c x^{1-2/p} implies x <= closure_constant(p, a, b, c).
double closure_constant(double p, double a, double b, double c);
// b = 0 case: 2a + (2c)^{p/2}
double closure_constant_two_term(double p, double a, double c);

struct ConstantPolicy {
    double p = 2.0;
    double a_coeff = 0.0;
    double b_coeff = 0.0;
    double c_coeff = 0.0;
    double derived_constant = 1.0;
};

// The proof-exact bound together with the bound in the form of the theorem
// statement (a constant depending only on p times moment sums).
struct BoundPair {
    InequalityReport proof_form;
    InequalityReport theorem_form;
    ConstantPolicy policy;
    bool pass() const { return proof_form.pass && theorem_form.pass; }
};

struct VerifyOptions {
    bool center = true; // apply the matching centering before checking
    std::uint64_t seed = 0;
    double tolerance = kSlackTolerance;
    EngineOptions engine;
};

// E[(max_k S_k)^2] <= sum_k E[X_k^2] for centered coordinates.
InequalityReport kolmogorov_verify(const SequenceModel& model, const VerifyOptions& options = {});

// E[|stat|^p] <= 2^{2-p} sum_k E[|X_k|^p], 1 <= p <= 2.
InequalityReport rosenthal_low_p_verify(const SequenceModel& model, double p, PartialSumForm form,
                                        const VerifyOptions& options = {});

// E[|max_k S_k|^p] <= C_p n^{p/2-1} sum_k E[|X_k|^p], p >= 2, ND coordinates.
BoundPair rosenthal_nd_pge2_verify(const SequenceModel& model, double p, PartialSumForm form,
                                   const VerifyOptions& options = {});

// E[|max_k S_k|^p] <= C_p {sum E|X_k|^p + (sum E X_k^2)^{p/2}}, p >= 2, independent coordinates.
BoundPair rosenthal_indep_pge2_verify(const SequenceModel& model, double p, PartialSumForm form,
                                      const VerifyOptions& options = {});

// E[max_k |S_k|^p] <= C_p {sum E|X_k|^p + (sum E X_k^2)^{p/2} + (sum [(e X_k)^- + (E X_k)^+])^p}
// with no centering.
BoundPair rosenthal_general_verify(const SequenceModel& model, double p, const VerifyOptions& options = {});

// E[max_k |S_k|^p] <= C_p {(sum [(E X_k)^+ + (e X_k)^-])^p + E[(sum X_k^2)^{p/2}]}.
BoundPair mz_verify(const SequenceModel& model, double p, const VerifyOptions& options = {});

// e[|stat|^p] <= 2^{2-p} sum_k E[|X_k|^p] after lower-centering, 1 <= p <= 2.
InequalityReport lower_rosenthal_verify(const SequenceModel& model, double p, PartialSumForm form,
                                        const VerifyOptions& options = {});

// Explicit constants, exposed for tests and reports.
double mz_constant(double p, bool reversed_only);
double general_constant(double p, bool reversed_only);
double nd_pge2_constant(double p);
double indep_pge2_constant(double p);

struct ScalarInequalityResult {
    std::string name;
    std::size_t points = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0; // min over points of (rhs - lhs) / scale
};

struct ScalarSuiteReport {
    std::vector<ScalarInequalityResult> results;
    bool pass() const;
};

// |x+y|^p <= 2^{2-p}|x|^p + |y|^p + p x |y|^{p-1} sgn(y),              1 <= p <= 2
// |x+y|^p <= 2^p p^2 |x|^p + |y|^p + p x |y|^{p-1} sgn(y) + 2^p p^2 x^2 |y|^{p-2},   p >= 2
// e^{-x} <= 1 - x/2 <= e^{-x/2},                                        0 <= x <= 1/2
// Each on a deterministic grid of at least 10^4 points plus `random_points` seeded draws.
ScalarSuiteReport scalar_inequality_suite(std::uint64_t seed, std::size_t random_points);

// Individual sides, exposed so tests can probe single points.
double low_p_pointwise_rhs(double x, double y, double p);
double high_p_pointwise_rhs(double x, double y, double p);

struct ClosureSoundness {
    std::size_t trials = 0;
    std::size_t violations = 0;
    bool pass() const { return violations == 0; }
};

// Random (p, a, b, c) with p in (2, 8]; scans x over [0, 2B] on `grid_points` points.
ClosureSoundness closure_soundness_check(std::uint64_t seed, std::size_t trials, std::size_t grid_points = 1000);

// Random models for the theorem suites.
struct RandomSequenceSpec {
    RandomModelShape shape;
    std::size_t min_horizon = 1;
    std::size_t max_horizon = 5;
    std::vector<Semantics> semantics{Semantics::PengForward, Semantics::PengBackward, Semantics::QwiseProduct};
    // Share of models whose coordinate k is the clamp of a common base
    // variable to [-(k+1), k+1], so coordinates differ in distribution.
    double truncated_fraction = 0.25;
};

SequenceModel random_sequence_model(std::uint64_t seed, const RandomSequenceSpec& spec = {});

enum class Theorem { Kolmogorov, RosenthalLowP, RosenthalNd, RosenthalIndep, RosenthalGeneral, MarcinkiewiczZygmund, LowerRosenthal };

std::string_view to_string(Theorem t);
std::optional<Theorem> parse_theorem(std::string_view s);
std::vector<Theorem> all_theorems();

struct SuiteOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    std::size_t threads = 0; // 0: default_thread_count()
    double tolerance = kSlackTolerance;
    std::vector<double> exponents; // empty: the theorem's default set
};

std::vector<double> default_exponents(Theorem t);

// Runs the theorem on `trials` random admissible models (trial i uses
// derive_seed(seed, i)) and, if given, on `fixed` as well. Semantics and
// partial-sum form are picked per trial among those the theorem allows.
// Output is sorted and does not depend on the thread count.
std::vector<InequalityReport> run_theorem_suite(Theorem t, const SuiteOptions& options,
                                                const SequenceModel* fixed = nullptr);

} // namespace sublin
