#include "sublin/sequence.hpp"

#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sublin {

std::string_view to_string(Semantics s) {
    switch (s) {
    case Semantics::PengForward: return "peng-forward";
    case Semantics::PengBackward: return "peng-backward";
    case Semantics::QwiseProduct: return "qwise";
    }
    return "?";
}

std::optional<Semantics> parse_semantics(std::string_view s) {
    if (s == "peng-forward") return Semantics::PengForward;
    if (s == "peng-backward") return Semantics::PengBackward;
    if (s == "qwise") return Semantics::QwiseProduct;
    return std::nullopt;
}

namespace {

std::vector<RandomVar> repeat(const RandomVar& x, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::PreconditionViolated, "horizon must be >= 1");
    return std::vector<RandomVar>(n, x);
}

// m^n, saturating at max()
std::size_t checked_power(std::size_t m, std::size_t n) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (m != 0 && r > std::numeric_limits<std::size_t>::max() / m) return std::numeric_limits<std::size_t>::max();
        r *= m;
    }
    return r;
}

} // namespace

SequenceModel::SequenceModel(CredalSet marginal, RandomVar values, std::size_t horizon, Semantics semantics)
    : SequenceModel(std::move(marginal), repeat(values, horizon), semantics) {}

SequenceModel::SequenceModel(CredalSet marginal, std::vector<RandomVar> coordinates, Semantics semantics)
    : marginal_(std::move(marginal)), coords_(std::move(coordinates)), semantics_(semantics) {
    if (coords_.empty()) throw Error(ErrorCode::PreconditionViolated, "horizon must be >= 1");
    for (const auto& c : coords_) require_same_space(marginal_.space(), c.space(), "SequenceModel coordinate");
}

bool SequenceModel::identically_distributed() const {
    return std::all_of(coords_.begin(), coords_.end(), [&](const RandomVar& c) {
        return std::equal(c.values().begin(), c.values().end(), coords_.front().values().begin());
    });
}

SequenceModel SequenceModel::slice(std::size_t offset, std::size_t count) const {
    if (count == 0 || offset + count > coords_.size()) throw Error(ErrorCode::ArityMismatch, "slice out of range");
    return SequenceModel(marginal_,
                         std::vector<RandomVar>(coords_.begin() + static_cast<std::ptrdiff_t>(offset),
                                                coords_.begin() + static_cast<std::ptrdiff_t>(offset + count)),
                         semantics_);
}

std::uint64_t SequenceModel::fingerprint() const {
    Fingerprint fp;
    fp.add(sublin::fingerprint(marginal_));
    fp.add(to_string(semantics_));
    fp.add(static_cast<std::uint64_t>(coords_.size()));
    for (const auto& c : coords_) fp.add(c.values());
    return fp.value();
}

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(Kind kind, std::size_t arity, double param, Fn fn, std::string label)
    : kind_(kind), arity_(arity), param_(param), label_(std::move(label)) {
    if (arity_ == 0) throw Error(ErrorCode::ArityMismatch, "functional arity must be >= 1");
    if (fn) fn_ = std::make_shared<const Fn>(std::move(fn));
}

Functional Functional::max_partial_sum(std::size_t arity) {
    return Functional(Kind::MaxPartialSum, arity, 0.0, nullptr, "max_k S_k");
}
Functional Functional::max_abs_partial_sum(std::size_t arity) {
    return Functional(Kind::MaxAbsPartialSum, arity, 0.0, nullptr, "max_k |S_k|");
}
Functional Functional::reversed_max_partial_sum(std::size_t arity) {
    return Functional(Kind::ReversedMaxPartialSum, arity, 0.0, nullptr, "max_k (S_n - S_k)");
}
Functional Functional::sum_power(std::size_t arity, double p) {
    if (!(p > 0.0)) throw Error(ErrorCode::BadExponent, "sum_power exponent must be > 0");
    return Functional(Kind::SumPower, arity, p, nullptr, "|S_n|^" + std::to_string(p));
}
Functional Functional::coordinate(std::size_t arity, std::size_t k) {
    if (k >= arity) throw Error(ErrorCode::ArityMismatch, "coordinate index out of range");
    return Functional(Kind::Coordinate, arity, static_cast<double>(k), nullptr, "x" + std::to_string(k + 1));
}
Functional Functional::custom(std::size_t arity, Fn fn, std::string label) {
    if (!fn) throw Error(ErrorCode::PreconditionViolated, "custom functional needs a callable");
    return Functional(Kind::Custom, arity, 0.0, std::move(fn), std::move(label));
}
Functional Functional::constant(std::size_t arity, double c) {
    return custom(arity, [c](std::span<const double>) { return c; }, "const");
}

double Functional::base(std::span<const double> x) const {
    switch (kind_) {
    case Kind::MaxPartialSum: {
        double s = 0.0, best = -std::numeric_limits<double>::infinity();
        for (double v : x) {
            s += v;
            best = std::max(best, s);
        }
        return best;
    }
    case Kind::MaxAbsPartialSum: {
        double s = 0.0, best = 0.0;
        for (double v : x) {
            s += v;
            best = std::max(best, std::abs(s));
        }
        return best;
    }
    case Kind::ReversedMaxPartialSum: {
        // S_n - S_k for k = n-1, ..., 0 is the running suffix sum
        double s = 0.0, best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = x.size(); i-- > 0;) {
            s += x[i];
            best = std::max(best, s);
        }
        return best;
    }
    case Kind::SumPower: {
        double s = 0.0;
        for (double v : x) s += v;
        return std::pow(std::abs(s), param_);
    }
    case Kind::Coordinate: return x[static_cast<std::size_t>(param_)];
    case Kind::Custom: return (*fn_)(x);
    }
    return 0.0;
}

double Functional::operator()(std::span<const double> x) const {
    if (x.size() != arity_) throw Error(ErrorCode::ArityMismatch, "functional arity " + std::to_string(arity_));
    double v = base(x);
    for (const auto& p : post_) {
        switch (p.kind) {
        case PostKind::Abs: v = std::abs(v); break;
        case PostKind::Power: v = std::pow(v, p.param); break;
        case PostKind::PositivePart: v = std::max(v, 0.0); break;
        case PostKind::Scale: v *= p.param; break;
        case PostKind::Shift: v += p.param; break;
        }
    }
    return v;
}

Functional Functional::with_post(Post p, std::string suffix) const {
    Functional f = *this;
    f.post_.push_back(p);
    f.label_ = suffix + "(" + label_ + ")";
    return f;
}

Functional Functional::abs() const { return with_post({PostKind::Abs, 0.0}, "abs"); }
Functional Functional::power(double p) const {
    if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::BadExponent, "power exponent must be > 0");
    return with_post({PostKind::Power, p}, "pow" + std::to_string(p));
}
Functional Functional::positive_part() const { return with_post({PostKind::PositivePart, 0.0}, "pos"); }
Functional Functional::scaled(double lambda) const { return with_post({PostKind::Scale, lambda}, "scale"); }
Functional Functional::shifted(double c) const { return with_post({PostKind::Shift, c}, "shift"); }

Functional Functional::lifted(std::size_t offset, std::size_t total) const {
    if (offset + arity_ > total) throw Error(ErrorCode::ArityMismatch, "lift out of range");
    if (offset == 0 && total == arity_) return *this;
    Functional inner = *this;
    const std::size_t n = arity_;
    return custom(
        total, [inner, offset, n](std::span<const double> x) { return inner(x.subspan(offset, n)); },
        label_ + "@" + std::to_string(offset));
}

Functional product(const Functional& a, const Functional& b) {
    if (a.arity() != b.arity()) throw Error(ErrorCode::ArityMismatch, "product of functionals with different arity");
    return Functional::custom(
        a.arity(), [a, b](std::span<const double> x) { return a(x) * b(x); },
        a.label() + "*" + b.label());
}

// ---------------------------------------------------------------------------
// Engine

std::vector<double> materialize(const SequenceModel& model, const Functional& f, const EngineOptions& options) {
    const std::size_t n = model.horizon();
    const std::size_t m = model.outcomes();
    if (f.arity() != n) {
        throw Error(ErrorCode::ArityMismatch,
                    "functional arity " + std::to_string(f.arity()) + " vs horizon " + std::to_string(n));
    }
    const std::size_t total = checked_power(m, n);
    if (total > options.tensor_budget) {
        throw Error(ErrorCode::BudgetExceeded, "joint grid of " + std::to_string(m) + "^" + std::to_string(n) +
                                                   " entries exceeds budget " + std::to_string(options.tensor_budget));
    }
    std::vector<double> tensor(total);
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> point(n);
    for (std::size_t k = 0; k < n; ++k) point[k] = model.coordinate(k)[0];
    for (std::size_t flat = 0; flat < total; ++flat) {
        const double v = f(point);
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "functional '" + f.label() + "' is not finite");
        tensor[flat] = v;
        // odometer, last coordinate fastest
        for (std::size_t k = n; k-- > 0;) {
            if (++idx[k] < m) {
                point[k] = model.coordinate(k)[idx[k]];
                break;
            }
            idx[k] = 0;
            point[k] = model.coordinate(k)[0];
        }
    }
    return tensor;
}

namespace {

// Contract the last axis of a tensor with fixed weights.
void contract_last(std::span<const double> in, std::span<const double> w, std::span<double> out) {
    const std::size_t m = w.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += w[j] * in[i * m + j];
        out[i] = acc;
    }
}

std::vector<double> eliminate_last_max(const std::vector<double>& t, const CredalSet& p) {
    const std::size_t m = p.space()->size();
    std::vector<double> out(t.size() / m, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& q : p.vertices()) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) acc += q[j] * t[i * m + j];
            out[i] = std::max(out[i], acc);
        }
    }
    return out;
}

std::vector<double> eliminate_first_max(const std::vector<double>& t, const CredalSet& p) {
    const std::size_t m = p.space()->size();
    const std::size_t stride = t.size() / m;
    std::vector<double> out(stride, -std::numeric_limits<double>::infinity());
    std::vector<double> acc(stride);
    for (const auto& q : p.vertices()) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double w = q[j];
            const double* row = t.data() + j * stride;
            for (std::size_t r = 0; r < stride; ++r) acc[r] += w * row[r];
        }
        for (std::size_t r = 0; r < stride; ++r) out[r] = std::max(out[r], acc[r]);
    }
    return out;
}

double qwise_recurse(std::span<const double> t, const CredalSet& p, std::vector<std::vector<double>>& scratch,
                     std::size_t depth) {
    const std::size_t m = p.space()->size();
    if (t.size() == 1) return t[0];
    auto& buf = scratch[depth];
    buf.resize(t.size() / m);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& q : p.vertices()) {
        contract_last(t, q.weights(), buf);
        best = std::max(best, qwise_recurse(buf, p, scratch, depth + 1));
    }
    return best;
}

} // namespace

double eval_upper_tensor(const SequenceModel& model, std::vector<double> tensor, const EngineOptions& options) {
    const std::size_t n = model.horizon();
    const std::size_t m = model.outcomes();
    if (tensor.size() != checked_power(m, n)) throw Error(ErrorCode::ArityMismatch, "tensor shape");
    const CredalSet& p = model.marginal();
    switch (model.semantics()) {
    case Semantics::PengForward:
        for (std::size_t level = n; level > 0; --level) tensor = eliminate_last_max(tensor, p);
        return tensor[0];
    case Semantics::PengBackward:
        for (std::size_t level = n; level > 0; --level) tensor = eliminate_first_max(tensor, p);
        return tensor[0];
    case Semantics::QwiseProduct: {
        if (checked_power(p.size(), n) > options.tuple_budget) {
            throw Error(ErrorCode::BudgetExceeded, "vertex tuples exceed budget");
        }
        std::vector<std::vector<double>> scratch(n + 1);
        return qwise_recurse(tensor, p, scratch, 0);
    }
    }
    return 0.0;
}

double eval_upper(const SequenceModel& model, const Functional& f, const EngineOptions& options) {
    return eval_upper_tensor(model, materialize(model, f, options), options);
}

double eval_lower(const SequenceModel& model, const Functional& f, const EngineOptions& options) {
    auto t = materialize(model, f, options);
    for (auto& v : t) v = -v;
    return -eval_upper_tensor(model, std::move(t), options);
}

// ---------------------------------------------------------------------------
// Monotonicity and generated test functions

bool is_monotone(const Functional& f, std::span<const RandomVar> coords, Monotonicity direction) {
    const std::size_t n = coords.size();
    if (f.arity() != n) throw Error(ErrorCode::ArityMismatch, "is_monotone arity");
    std::vector<std::vector<double>> axes(n);
    for (std::size_t k = 0; k < n; ++k) {
        axes[k].assign(coords[k].values().begin(), coords[k].values().end());
        std::sort(axes[k].begin(), axes[k].end());
        axes[k].erase(std::unique(axes[k].begin(), axes[k].end()), axes[k].end());
    }
    std::vector<std::size_t> dims(n);
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        dims[k] = axes[k].size();
        total *= dims[k];
    }
    std::vector<double> values(total);
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> point(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (std::size_t k = 0; k < n; ++k) point[k] = axes[k][idx[k]];
        values[flat] = f(point);
        for (std::size_t k = n; k-- > 0;) {
            if (++idx[k] < dims[k]) break;
            idx[k] = 0;
        }
    }
    // stride of axis k in the flat layout
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t k = n - 1; k-- > 0;) stride[k] = stride[k + 1] * dims[k + 1];
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t pos = (flat / stride[k]) % dims[k];
            if (pos + 1 >= dims[k]) continue;
            const double diff = values[flat + stride[k]] - values[flat];
            if (direction == Monotonicity::Nondecreasing ? diff < 0.0 : diff > 0.0) return false;
        }
    }
    return true;
}

double MonotoneFunctionalSpec::ramp(const Ramp& r, double x) const {
    double v = r.intercept;
    for (std::size_t j = 0; j < r.knots.size(); ++j) {
        const double d = direction == Monotonicity::Nondecreasing ? x - r.knots[j] : r.knots[j] - x;
        v += r.slopes[j] * std::max(0.0, d);
    }
    return v;
}

Functional MonotoneFunctionalSpec::functional() const {
    auto self = std::make_shared<const MonotoneFunctionalSpec>(*this);
    return Functional::custom(
        arity,
        [self](std::span<const double> x) {
            double total = 0.0;
            for (const auto& term : self->terms) {
                double prod = 1.0;
                for (std::size_t k = 0; k < self->arity; ++k) prod *= self->ramp(term[k], x[k]);
                total += prod;
            }
            return total;
        },
        direction == Monotonicity::Nondecreasing ? "monotone-up" : "monotone-down");
}

MonotoneFunctionalSpec generate_monotone_functional(std::uint64_t seed, std::size_t arity, Monotonicity direction,
                                                    double knot_lo, double knot_hi) {
    if (arity == 0) throw Error(ErrorCode::ArityMismatch, "arity must be >= 1");
    Rng rng(seed);
    MonotoneFunctionalSpec spec;
    spec.arity = arity;
    spec.direction = direction;
    const auto term_count = static_cast<std::size_t>(rng.uniform_int(1, 3));
    for (std::size_t t = 0; t < term_count; ++t) {
        std::vector<MonotoneFunctionalSpec::Ramp> term(arity);
        for (auto& r : term) {
            r.intercept = rng.coin(0.3) ? 0.0 : rng.uniform(0.0, 1.0);
            const auto knots = static_cast<std::size_t>(rng.uniform_int(1, 3));
            for (std::size_t j = 0; j < knots; ++j) {
                r.knots.push_back(rng.uniform(knot_lo, knot_hi));
                r.slopes.push_back(rng.coin(0.2) ? 0.0 : rng.uniform(0.0, 2.0));
            }
        }
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Checks

InequalityReport nd_check(const SequenceModel& model, std::size_t split, const Functional& phi1,
                          const Functional& phi2, const EngineOptions& options) {
    const std::size_t n = model.horizon();
    if (split == 0 || split >= n) throw Error(ErrorCode::PreconditionViolated, "split must be in [1, n-1]");
    if (phi1.arity() != split || phi2.arity() != n - split) {
        throw Error(ErrorCode::ArityMismatch, "nd_check functional arities must match the split");
    }
    std::span<const RandomVar> coords(model.coordinates());
    const auto first = coords.subspan(0, split);
    const auto second = coords.subspan(split);
    const bool up = is_monotone(phi1, first, Monotonicity::Nondecreasing) &&
                    is_monotone(phi2, second, Monotonicity::Nondecreasing);
    const bool down = is_monotone(phi1, first, Monotonicity::Nonincreasing) &&
                      is_monotone(phi2, second, Monotonicity::Nonincreasing);
    if (!up && !down) {
        throw Error(ErrorCode::PreconditionViolated, "phi1 and phi2 must be both nondecreasing or both nonincreasing");
    }

    const Functional f1 = phi1.lifted(0, n);
    const Functional f2 = phi2.lifted(split, n);
    const bool swapped = model.semantics() == Semantics::PengBackward;
    const Functional& nonneg = swapped ? f2 : f1;
    const auto nonneg_tensor = materialize(model, nonneg, options);
    if (std::any_of(nonneg_tensor.begin(), nonneg_tensor.end(), [](double v) { return v < 0.0; })) {
        throw Error(ErrorCode::PreconditionViolated,
                    swapped ? "phi2 must be nonnegative on the grid" : "phi1 must be nonnegative on the grid");
    }
    const double e1 = eval_upper(model, f1, options);
    const double e2 = eval_upper(model, f2, options);
    if ((swapped ? e1 : e2) < 0.0) {
        throw Error(ErrorCode::PreconditionViolated,
                    swapped ? "upper expectation of phi1 must be >= 0" : "upper expectation of phi2 must be >= 0");
    }
    const double lhs = eval_upper(model, product(f1, f2), options);
    Fingerprint fp;
    fp.add(model.fingerprint()).add(static_cast<std::uint64_t>(split)).add(phi1.label()).add(phi2.label());
    return make_report("nd_check", lhs, e1 * e2, 1.0, "definition: product of marginal upper expectations",
                       fp.value());
}

IdenticalDistributionReport identical_distribution_check(const SequenceModel& model,
                                                         std::span<const Functional> probes) {
    IdenticalDistributionReport rep;
    const std::size_t n = model.horizon();
    for (const auto& psi : probes) {
        if (psi.arity() != 1) throw Error(ErrorCode::ArityMismatch, "probes must be univariate");
        const RandomVar first = model.coordinate(0).map([&](double v) { return psi(std::span<const double>(&v, 1)); });
        const double reference = upper_expect(model.marginal(), first);
        std::vector<double> row;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = eval_upper(model, psi.lifted(k, n));
            rep.max_deviation = std::max(rep.max_deviation, std::abs(v - reference));
            row.push_back(v);
        }
        rep.values.push_back(std::move(row));
        rep.marginal.push_back(reference);
    }
    rep.pass = rep.max_deviation <= 1e-12;
    return rep;
}

} // namespace sublin
