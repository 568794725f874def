#include "sublin/inequality.hpp"

#include "sublin/error.hpp"
#include "sublin/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sublin {

std::string_view to_string(PartialSumForm f) {
    switch (f) {
    case PartialSumForm::MaxPartial: return "max_partial";
    case PartialSumForm::ReversedMaxPartial: return "reversed_max_partial";
    case PartialSumForm::FinalPositivePart: return "final_positive_part";
    }
    return "?";
}

namespace {

SequenceModel shift_coordinates(const SequenceModel& model, bool upper) {
    std::vector<RandomVar> out;
    out.reserve(model.horizon());
    for (const auto& c : model.coordinates()) {
        const double m = upper ? upper_expect(model.marginal(), c) : lower_expect(model.marginal(), c);
        RandomVar shifted = c + (-m);
        const double check = upper ? upper_expect(model.marginal(), shifted) : lower_expect(model.marginal(), shifted);
        if (std::abs(check) > 1e-12 * std::max(1.0, std::abs(m))) {
            throw Error(ErrorCode::NonFinite, "centering did not reach zero within 1e-12");
        }
        out.push_back(std::move(shifted));
    }
    return model.with_coordinates(std::move(out));
}

double upper_abs_moment(const SequenceModel& model, std::size_t k, double p) {
    return upper_expect(model.marginal(), model.coordinate(k).abs().map([p](double v) { return std::pow(v, p); }));
}

double sum_upper_abs_moment(const SequenceModel& model, double p) {
    double s = 0.0;
    for (std::size_t k = 0; k < model.horizon(); ++k) s += upper_abs_moment(model, k, p);
    return s;
}

// sum_k [(E X_k)^+ + (e X_k)^-]
double mean_term(const SequenceModel& model) {
    double s = 0.0;
    for (const auto& c : model.coordinates()) {
        s += std::max(upper_expect(model.marginal(), c), 0.0);
        s += std::max(-lower_expect(model.marginal(), c), 0.0);
    }
    return s;
}

void require_exponent(double p, double lo, double hi) {
    if (!std::isfinite(p) || p < lo || p > hi) {
        std::ostringstream os;
        os << "exponent " << p << " outside [" << lo << ", " << hi << "]";
        throw Error(ErrorCode::BadExponent, os.str());
    }
}

// Orientation each semantics supports, for statistics that need one.
void require_orientation(Semantics s, PartialSumForm form, bool allow_qwise) {
    if (s == Semantics::QwiseProduct) {
        if (!allow_qwise) throw Error(ErrorCode::HypothesisViolated, "theorem needs Peng semantics");
        return;
    }
    if (form == PartialSumForm::MaxPartial && s != Semantics::PengBackward) {
        throw Error(ErrorCode::HypothesisViolated, "max_k S_k needs X_k independent to (X_{k+1}, ..., X_n)");
    }
    if (form == PartialSumForm::ReversedMaxPartial && s != Semantics::PengForward) {
        throw Error(ErrorCode::HypothesisViolated, "max_k (S_n - S_k) needs X_{k+1} independent to (X_1, ..., X_k)");
    }
}

void require_nonpositive_means(const SequenceModel& model, bool upper) {
    for (const auto& c : model.coordinates()) {
        const double m = upper ? upper_expect(model.marginal(), c) : lower_expect(model.marginal(), c);
        if (m > 1e-12) throw Error(ErrorCode::HypothesisViolated, "coordinate mean must be <= 0");
    }
}

// |stat|^p for the requested partial-sum form
Functional statistic(std::size_t n, PartialSumForm form, double p) {
    switch (form) {
    case PartialSumForm::MaxPartial: return Functional::max_partial_sum(n).abs().power(p);
    case PartialSumForm::ReversedMaxPartial: return Functional::reversed_max_partial_sum(n).abs().power(p);
    case PartialSumForm::FinalPositivePart:
        return Functional::custom(
            n,
            [p](std::span<const double> x) {
                double s = 0.0;
                for (double v : x) s += v;
                return std::pow(std::max(s, 0.0), p);
            },
            "(S_n^+)^p");
    }
    throw Error(ErrorCode::PreconditionViolated, "unknown partial-sum form");
}

Functional square_sum_power(std::size_t n, double p) {
    return Functional::custom(
        n,
        [p](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return std::pow(s, p / 2.0);
        },
        "(sum x_k^2)^{p/2}");
}

Functional abs_power_sum(std::size_t n, double p) {
    return Functional::custom(
        n,
        [p](std::span<const double> x) {
            double s = 0.0;
            for (double v : x) s += std::pow(std::abs(v), p);
            return s;
        },
        "sum |x_k|^p");
}

std::uint64_t report_fingerprint(const SequenceModel& m, std::string_view tag, double p, PartialSumForm form) {
    Fingerprint fp;
    fp.add(m.fingerprint()).add(tag).add(p).add(static_cast<std::uint64_t>(form));
    return fp.value();
}

std::string form_name(std::string_view base, PartialSumForm form) {
    std::string s(base);
    s += "/";
    s += to_string(form);
    return s;
}

bool reversed_only(Semantics s) { return s == Semantics::PengForward; }

// Proof-exact bound from the Marcinkiewicz-Zygmund argument:
//   Z <= 2^{p+1} p^2 E[sum|X_k|^p] + 2^{p-1} p M Z^{1-1/p} + 2^{2p-1} p^2 W^{2/p} Z^{1-2/p}
// with an extra 2^p when only the reversed orientation is available.
struct MzProof {
    ConstantPolicy policy;
    double bound = 0.0;
    double m = 0.0; // mean term
    double w = 0.0; // E[(sum X_k^2)^{p/2}]
};

MzProof mz_proof(const SequenceModel& model, double p, const EngineOptions& eo) {
    const std::size_t n = model.horizon();
    MzProof r;
    r.m = mean_term(model);
    r.w = eval_upper(model, square_sum_power(n, p), eo);
    const double abs_sum = eval_upper(model, abs_power_sum(n, p), eo);
    r.policy.p = p;
    r.policy.a_coeff = std::pow(2.0, p + 1.0) * p * p * abs_sum;
    r.policy.b_coeff = std::pow(2.0, p - 1.0) * p * r.m;
    r.policy.c_coeff = std::pow(2.0, 2.0 * p - 1.0) * p * p * std::pow(r.w, 2.0 / p);
    r.bound = closure_constant(p, r.policy.a_coeff, r.policy.b_coeff, r.policy.c_coeff);
    if (reversed_only(model.semantics())) r.bound *= std::pow(2.0, p);
    return r;
}

} // namespace

SequenceModel center_upper(const SequenceModel& model) { return shift_coordinates(model, true); }
SequenceModel center_lower(const SequenceModel& model) { return shift_coordinates(model, false); }

double closure_constant(double p, double a, double b, double c) {
    if (!std::isfinite(p) || p < 2.0) throw Error(ErrorCode::BadExponent, "closure needs p >= 2");
    if (a < 0.0 || b < 0.0 || c < 0.0) throw Error(ErrorCode::PreconditionViolated, "closure inputs must be >= 0");
    return 3.0 * a + std::pow(3.0 * b, p) + std::pow(3.0 * c, p / 2.0);
}

double closure_constant_two_term(double p, double a, double c) {
    if (!std::isfinite(p) || p < 2.0) throw Error(ErrorCode::BadExponent, "closure needs p >= 2");
    if (a < 0.0 || c < 0.0) throw Error(ErrorCode::PreconditionViolated, "closure inputs must be >= 0");
    return 2.0 * a + std::pow(2.0 * c, p / 2.0);
}

double nd_pge2_constant(double p) {
    const double k = std::pow(2.0, p + 1.0) * p * p;
    return k + std::pow(k, p / 2.0);
}

double indep_pge2_constant(double p) { return std::pow(std::pow(2.0, p + 1.0) * p * p, p / 2.0); }

double mz_constant(double p, bool reversed_only) {
    const double first = std::pow(3.0 * std::pow(2.0, p - 1.0) * p, p);
    const double second =
        3.0 * std::pow(2.0, p + 1.0) * p * p + std::pow(3.0 * std::pow(2.0, 2.0 * p - 1.0) * p * p, p / 2.0);
    return std::max(first, second) * (reversed_only ? std::pow(2.0, p) : 1.0);
}

double general_constant(double p, bool reversed_only) {
    if (!std::isfinite(p) || p < 2.0) throw Error(ErrorCode::BadExponent, "general constant needs p >= 2");
    // E[(sum X_k^2)^{p/2}] <= K1 sum E|X_k|^p + K2 (sum E X_k^2)^{p/2}
    double k1 = 0.0, k2 = 0.0;
    if (p <= 4.0) {
        k1 = std::pow(2.0, p / 2.0 + 2.0);
        k2 = std::pow(2.0, p - 1.0);
    } else {
        k1 = k2 = std::pow(2.0, p / 2.0 + 1.0) * general_constant(p / 2.0, reversed_only);
    }
    return mz_constant(p, reversed_only) * std::max({1.0, k1, k2});
}

InequalityReport kolmogorov_verify(const SequenceModel& model, const VerifyOptions& options) {
    if (model.semantics() == Semantics::PengForward) {
        throw Error(ErrorCode::HypothesisViolated, "Kolmogorov bound needs X_k independent to (X_{k+1}, ..., X_n)");
    }
    const SequenceModel m = options.center ? center_upper(model) : model;
    require_nonpositive_means(m, true);
    const std::size_t n = m.horizon();
    const double lhs = eval_upper(m, Functional::max_partial_sum(n).power(2.0), options.engine);
    const double rhs = sum_upper_abs_moment(m, 2.0);
    return make_report("kolmogorov", lhs, rhs, 1.0, "E[(max S_k)^2] <= sum E[X_k^2]",
                       report_fingerprint(m, "kolmogorov", 2.0, PartialSumForm::MaxPartial), options.seed,
                       options.tolerance);
}

InequalityReport rosenthal_low_p_verify(const SequenceModel& model, double p, PartialSumForm form,
                                        const VerifyOptions& options) {
    require_exponent(p, 1.0, 2.0);
    require_orientation(model.semantics(), form, true);
    const SequenceModel m = options.center ? center_upper(model) : model;
    require_nonpositive_means(m, true);
    const double lhs = eval_upper(m, statistic(m.horizon(), form, p), options.engine);
    const double constant = std::pow(2.0, 2.0 - p);
    const double rhs = constant * sum_upper_abs_moment(m, p);
    return make_report(form_name("rosenthal_low_p", form), lhs, rhs, constant, "2^{2-p}",
                       report_fingerprint(m, "rosenthal_low_p", p, form), options.seed, options.tolerance);
}

BoundPair rosenthal_nd_pge2_verify(const SequenceModel& model, double p, PartialSumForm form,
                                   const VerifyOptions& options) {
    require_exponent(p, 2.0, std::numeric_limits<double>::max());
    require_orientation(model.semantics(), form, true);
    const SequenceModel m = options.center ? center_upper(model) : model;
    require_nonpositive_means(m, true);
    const std::size_t n = m.horizon();
    const double lhs = eval_upper(m, statistic(n, form, p), options.engine);

    const double k = std::pow(2.0, p) * p * p;
    double sum_moments = 0.0, sum_scaled = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mom = upper_abs_moment(m, i, p);
        sum_moments += mom;
        sum_scaled += std::pow(mom, 2.0 / p);
    }
    BoundPair out;
    out.policy.p = p;
    out.policy.a_coeff = k * sum_moments;
    out.policy.c_coeff = k * sum_scaled;
    const double proof_rhs = closure_constant_two_term(p, out.policy.a_coeff, out.policy.c_coeff);
    out.policy.derived_constant = nd_pge2_constant(p);
    const double theorem_rhs = out.policy.derived_constant * std::pow(static_cast<double>(n), p / 2.0 - 1.0) * sum_moments;
    const auto fp = report_fingerprint(m, "rosenthal_nd_pge2", p, form);
    out.proof_form = make_report(form_name("rosenthal_nd_pge2:proof", form), lhs, proof_rhs, 1.0,
                                 "2a + (2c)^{p/2}, a = 2^p p^2 sum E|X_k|^p, c = 2^p p^2 sum (E|X_k|^p)^{2/p}", fp,
                                 options.seed, options.tolerance);
    out.theorem_form = make_report(form_name("rosenthal_nd_pge2:theorem", form), lhs, theorem_rhs,
                                   out.policy.derived_constant, "2^{p+1} p^2 + (2^{p+1} p^2)^{p/2}, times n^{p/2-1}",
                                   fp, options.seed, options.tolerance);
    return out;
}

BoundPair rosenthal_indep_pge2_verify(const SequenceModel& model, double p, PartialSumForm form,
                                      const VerifyOptions& options) {
    require_exponent(p, 2.0, std::numeric_limits<double>::max());
    require_orientation(model.semantics(), form, true);
    const SequenceModel m = options.center ? center_upper(model) : model;
    require_nonpositive_means(m, true);
    const std::size_t n = m.horizon();
    const double lhs = eval_upper(m, statistic(n, form, p), options.engine);

    const double k = std::pow(2.0, p) * p * p;
    const double sum_p = sum_upper_abs_moment(m, p);
    const double sum_2 = sum_upper_abs_moment(m, 2.0);
    BoundPair out;
    out.policy.p = p;
    out.policy.a_coeff = k * sum_p;
    out.policy.c_coeff = k * sum_2;
    const double proof_rhs = closure_constant_two_term(p, out.policy.a_coeff, out.policy.c_coeff);
    out.policy.derived_constant = indep_pge2_constant(p);
    const double theorem_rhs = out.policy.derived_constant * (sum_p + std::pow(sum_2, p / 2.0));
    const auto fp = report_fingerprint(m, "rosenthal_indep_pge2", p, form);
    out.proof_form = make_report(form_name("rosenthal_indep_pge2:proof", form), lhs, proof_rhs, 1.0,
                                 "2a + (2c)^{p/2}, a = 2^p p^2 sum E|X_k|^p, c = 2^p p^2 sum E[X_k^2]", fp,
                                 options.seed, options.tolerance);
    out.theorem_form = make_report(form_name("rosenthal_indep_pge2:theorem", form), lhs, theorem_rhs,
                                   out.policy.derived_constant, "(2^{p+1} p^2)^{p/2}", fp, options.seed,
                                   options.tolerance);
    return out;
}

BoundPair rosenthal_general_verify(const SequenceModel& model, double p, const VerifyOptions& options) {
    require_exponent(p, 2.0, std::numeric_limits<double>::max());
    const std::size_t n = model.horizon();
    const double lhs = eval_upper(model, Functional::max_abs_partial_sum(n).power(p), options.engine);
    const MzProof proof = mz_proof(model, p, options.engine);

    BoundPair out;
    out.policy = proof.policy;
    out.policy.derived_constant = general_constant(p, reversed_only(model.semantics()));
    const double theorem_rhs =
        out.policy.derived_constant * (sum_upper_abs_moment(model, p) +
                                       std::pow(sum_upper_abs_moment(model, 2.0), p / 2.0) + std::pow(proof.m, p));
    const auto fp = report_fingerprint(model, "rosenthal_general", p, PartialSumForm::MaxPartial);
    out.proof_form = make_report("rosenthal_general:proof", lhs, proof.bound, 1.0,
                                 "3a + (3b)^p + (3c)^{p/2} from the Marcinkiewicz-Zygmund recursion", fp,
                                 options.seed, options.tolerance);
    out.theorem_form = make_report("rosenthal_general:theorem", lhs, theorem_rhs, out.policy.derived_constant,
                                   "C_MZ max(1, K1, K2), square-sum bound by recursion on p/2", fp, options.seed,
                                   options.tolerance);
    return out;
}

BoundPair mz_verify(const SequenceModel& model, double p, const VerifyOptions& options) {
    require_exponent(p, 2.0, std::numeric_limits<double>::max());
    const std::size_t n = model.horizon();
    const double lhs = eval_upper(model, Functional::max_abs_partial_sum(n).power(p), options.engine);
    const MzProof proof = mz_proof(model, p, options.engine);

    BoundPair out;
    out.policy = proof.policy;
    out.policy.derived_constant = mz_constant(p, reversed_only(model.semantics()));
    const double theorem_rhs = out.policy.derived_constant * (std::pow(proof.m, p) + proof.w);
    const auto fp = report_fingerprint(model, "mz", p, PartialSumForm::MaxPartial);
    out.proof_form = make_report("mz:proof", lhs, proof.bound, 1.0,
                                 "3a + (3b)^p + (3c)^{p/2} from the Marcinkiewicz-Zygmund recursion", fp,
                                 options.seed, options.tolerance);
    out.theorem_form = make_report("mz:theorem", lhs, theorem_rhs, out.policy.derived_constant,
                                   "max((3 2^{p-1} p)^p, 3 2^{p+1} p^2 + (3 2^{2p-1} p^2)^{p/2})", fp, options.seed,
                                   options.tolerance);
    return out;
}

InequalityReport lower_rosenthal_verify(const SequenceModel& model, double p, PartialSumForm form,
                                        const VerifyOptions& options) {
    require_exponent(p, 1.0, 2.0);
    require_orientation(model.semantics(), form, false);
    const SequenceModel m = options.center ? center_lower(model) : model;
    require_nonpositive_means(m, false);
    const double lhs = eval_lower(m, statistic(m.horizon(), form, p), options.engine);
    const double constant = std::pow(2.0, 2.0 - p);
    const double rhs = constant * sum_upper_abs_moment(m, p);
    return make_report(form_name("lower_rosenthal", form), lhs, rhs, constant, "2^{2-p}",
                       report_fingerprint(m, "lower_rosenthal", p, form), options.seed, options.tolerance);
}

// ---------------------------------------------------------------------------
// Scalar inequalities

double low_p_pointwise_rhs(double x, double y, double p) {
    const double sgn = (y > 0.0) - (y < 0.0);
    return std::pow(2.0, 2.0 - p) * std::pow(std::abs(x), p) + std::pow(std::abs(y), p) +
           p * x * std::pow(std::abs(y), p - 1.0) * sgn;
}

double high_p_pointwise_rhs(double x, double y, double p) {
    const double sgn = (y > 0.0) - (y < 0.0);
    const double k = std::pow(2.0, p) * p * p;
    return k * std::pow(std::abs(x), p) + std::pow(std::abs(y), p) + p * x * std::pow(std::abs(y), p - 1.0) * sgn +
           k * x * x * std::pow(std::abs(y), p - 2.0);
}

bool ScalarSuiteReport::pass() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.violations == 0; });
}

namespace {

void record(ScalarInequalityResult& r, double lhs, double rhs) {
    const double scale = std::max(1.0, std::abs(rhs));
    const double margin = (rhs - lhs) / scale;
    if (r.points == 0 || margin < r.worst_margin) r.worst_margin = margin;
    ++r.points;
    if (margin < -1e-12) ++r.violations;
}

} // namespace

ScalarSuiteReport scalar_inequality_suite(std::uint64_t seed, std::size_t random_points) {
    constexpr int kGrid = 100; // 100 x 100 points per exponent
    Rng rng(seed);
    ScalarSuiteReport out;

    ScalarInequalityResult low{"pointwise_low_p"};
    for (double p : {1.0, 1.25, 1.5, 1.75, 2.0}) {
        for (int i = 0; i < kGrid; ++i) {
            for (int j = 0; j < kGrid; ++j) {
                const double x = -4.0 + 8.0 * i / (kGrid - 1);
                const double y = -4.0 + 8.0 * j / (kGrid - 1);
                record(low, std::pow(std::abs(x + y), p), low_p_pointwise_rhs(x, y, p));
            }
        }
    }
    for (std::size_t t = 0; t < random_points; ++t) {
        const double p = rng.uniform(1.0, 2.0);
        const double x = rng.uniform(-10.0, 10.0), y = rng.uniform(-10.0, 10.0);
        record(low, std::pow(std::abs(x + y), p), low_p_pointwise_rhs(x, y, p));
    }
    out.results.push_back(low);

    ScalarInequalityResult high{"pointwise_high_p"};
    for (double p : {2.0, 2.5, 3.0, 4.0, 6.0}) {
        for (int i = 0; i < kGrid; ++i) {
            for (int j = 0; j < kGrid; ++j) {
                const double x = -4.0 + 8.0 * i / (kGrid - 1);
                const double y = -4.0 + 8.0 * j / (kGrid - 1);
                record(high, std::pow(std::abs(x + y), p), high_p_pointwise_rhs(x, y, p));
            }
        }
    }
    for (std::size_t t = 0; t < random_points; ++t) {
        const double p = rng.uniform(2.0, 8.0);
        const double x = rng.uniform(-10.0, 10.0), y = rng.uniform(-10.0, 10.0);
        record(high, std::pow(std::abs(x + y), p), high_p_pointwise_rhs(x, y, p));
    }
    out.results.push_back(high);

    ScalarInequalityResult lower{"exp_lower"}, upper{"exp_upper"};
    constexpr int kLine = 10000;
    auto chain = [&](double x) {
        record(lower, std::exp(-x), 1.0 - x / 2.0);
        record(upper, 1.0 - x / 2.0, std::exp(-x / 2.0));
    };
    for (int i = 0; i < kLine; ++i) chain(0.5 * i / (kLine - 1));
    for (std::size_t t = 0; t < random_points; ++t) chain(rng.uniform(0.0, 0.5));
    out.results.push_back(lower);
    out.results.push_back(upper);
    return out;
}

ClosureSoundness closure_soundness_check(std::uint64_t seed, std::size_t trials, std::size_t grid_points) {
    Rng rng(seed);
    ClosureSoundness out;
    out.trials = trials;
    auto coeff = [&] { return rng.coin(0.1) ? 0.0 : rng.uniform(0.0, 10.0); };
    for (std::size_t t = 0; t < trials; ++t) {
        const double p = rng.uniform(2.0, 8.0) + 1e-9;
        const double a = coeff(), b = coeff(), c = coeff();
        const double bound = closure_constant(p, a, b, c);
        bool bad = false;
        for (std::size_t i = 0; i <= grid_points && !bad; ++i) {
            const double x = 2.0 * bound * static_cast<double>(i) / static_cast<double>(grid_points);
            const double recursion = a + b * std::pow(x, 1.0 - 1.0 / p) + c * std::pow(x, 1.0 - 2.0 / p);
            bad = x <= recursion && x > bound * (1.0 + 1e-12);
        }
        if (bad) ++out.violations;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suites

SequenceModel random_sequence_model(std::uint64_t seed, const RandomSequenceSpec& spec) {
    if (spec.semantics.empty()) throw Error(ErrorCode::PreconditionViolated, "no semantics to choose from");
    Rng rng(seed);
    const auto& sh = spec.shape;
    const SpacePtr space = random_space(rng, sh.min_outcomes, sh.max_outcomes);
    CredalSet p = random_credal_set(rng, space, sh.min_vertices, sh.max_vertices);
    const auto n = static_cast<std::size_t>(rng.uniform_int(spec.min_horizon, spec.max_horizon));
    const Semantics s = spec.semantics[rng.uniform_int(0, spec.semantics.size() - 1)];
    const RandomVar base = random_var(rng, space, sh.value_lo, sh.value_hi);
    if (rng.coin(spec.truncated_fraction)) {
        std::vector<RandomVar> coords;
        for (std::size_t k = 0; k < n; ++k) {
            const double c = static_cast<double>(k + 1);
            coords.push_back(base.map([c](double v) { return std::clamp(v, -c, c); }));
        }
        return SequenceModel(std::move(p), std::move(coords), s);
    }
    return SequenceModel(std::move(p), base, n, s);
}

std::string_view to_string(Theorem t) {
    switch (t) {
    case Theorem::Kolmogorov: return "kolmogorov";
    case Theorem::RosenthalLowP: return "rosenthal-low";
    case Theorem::RosenthalNd: return "rosenthal-nd";
    case Theorem::RosenthalIndep: return "rosenthal-indep";
    case Theorem::RosenthalGeneral: return "rosenthal-general";
    case Theorem::MarcinkiewiczZygmund: return "mz";
    case Theorem::LowerRosenthal: return "lower-rosenthal";
    }
    return "?";
}

std::vector<Theorem> all_theorems() {
    return {Theorem::Kolmogorov,       Theorem::RosenthalLowP,        Theorem::RosenthalNd,   Theorem::RosenthalIndep,
            Theorem::RosenthalGeneral, Theorem::MarcinkiewiczZygmund, Theorem::LowerRosenthal};
}

std::optional<Theorem> parse_theorem(std::string_view s) {
    for (Theorem t : all_theorems()) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

std::vector<double> default_exponents(Theorem t) {
    switch (t) {
    case Theorem::Kolmogorov: return {2.0};
    case Theorem::RosenthalLowP:
    case Theorem::LowerRosenthal: return {1.0, 1.25, 1.5, 2.0};
    case Theorem::RosenthalNd:
    case Theorem::RosenthalIndep: return {2.0, 2.5, 3.0, 4.0};
    case Theorem::RosenthalGeneral:
    case Theorem::MarcinkiewiczZygmund: return {2.0, 3.0, 4.0, 6.0};
    }
    return {};
}

namespace {

std::vector<Semantics> suite_semantics(Theorem t) {
    switch (t) {
    case Theorem::Kolmogorov: return {Semantics::PengBackward, Semantics::QwiseProduct};
    case Theorem::LowerRosenthal: return {Semantics::PengForward, Semantics::PengBackward};
    default: return {Semantics::PengForward, Semantics::PengBackward, Semantics::QwiseProduct};
    }
}

std::vector<PartialSumForm> allowed_forms(Semantics s) {
    switch (s) {
    case Semantics::PengBackward: return {PartialSumForm::MaxPartial, PartialSumForm::FinalPositivePart};
    case Semantics::PengForward: return {PartialSumForm::ReversedMaxPartial, PartialSumForm::FinalPositivePart};
    case Semantics::QwiseProduct:
        return {PartialSumForm::MaxPartial, PartialSumForm::ReversedMaxPartial, PartialSumForm::FinalPositivePart};
    }
    return {};
}

void run_one(Theorem t, const SequenceModel& model, const std::vector<double>& exponents, const VerifyOptions& vo,
             std::uint64_t form_seed, std::vector<InequalityReport>& out) {
    Rng rng(form_seed);
    const auto forms = allowed_forms(model.semantics());
    for (double p : exponents) {
        const PartialSumForm form = forms[rng.uniform_int(0, forms.size() - 1)];
        auto push_pair = [&](const BoundPair& b) {
            out.push_back(b.proof_form);
            out.push_back(b.theorem_form);
        };
        switch (t) {
        case Theorem::Kolmogorov: out.push_back(kolmogorov_verify(model, vo)); break;
        case Theorem::RosenthalLowP: out.push_back(rosenthal_low_p_verify(model, p, form, vo)); break;
        case Theorem::RosenthalNd: push_pair(rosenthal_nd_pge2_verify(model, p, form, vo)); break;
        case Theorem::RosenthalIndep: push_pair(rosenthal_indep_pge2_verify(model, p, form, vo)); break;
        case Theorem::RosenthalGeneral: push_pair(rosenthal_general_verify(model, p, vo)); break;
        case Theorem::MarcinkiewiczZygmund: push_pair(mz_verify(model, p, vo)); break;
        case Theorem::LowerRosenthal: out.push_back(lower_rosenthal_verify(model, p, form, vo)); break;
        }
    }
}

} // namespace

std::vector<InequalityReport> run_theorem_suite(Theorem t, const SuiteOptions& options, const SequenceModel* fixed) {
    const std::vector<double> exponents = options.exponents.empty() ? default_exponents(t) : options.exponents;
    RandomSequenceSpec spec;
    spec.semantics = suite_semantics(t);
    std::vector<std::vector<InequalityReport>> slots(options.trials);
    const std::size_t threads = options.threads ? options.threads : default_thread_count();
    parallel_for(options.trials, threads, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(options.seed, i);
        const SequenceModel model = random_sequence_model(seed, spec);
        VerifyOptions vo;
        vo.seed = seed;
        vo.tolerance = options.tolerance;
        run_one(t, model, exponents, vo, splitmix64(seed), slots[i]);
    });
    std::vector<InequalityReport> out;
    if (fixed) {
        const auto allowed = suite_semantics(t);
        // The fixed model is checked under its own semantics when the theorem
        // admits it, otherwise under the first admissible one.
        const bool ok = std::find(allowed.begin(), allowed.end(), fixed->semantics()) != allowed.end();
        const SequenceModel m = ok ? *fixed : fixed->with_semantics(allowed.front());
        VerifyOptions vo;
        vo.seed = options.seed;
        vo.tolerance = options.tolerance;
        run_one(t, m, exponents, vo, splitmix64(options.seed), out);
    }
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    sort_reports(out);
    return out;
}

} // namespace sublin
