#include "sublin/slln.hpp"

#include "sublin/capacity.hpp"
#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace sublin {

double truncate_f(double x, double c) {
    if (!(c >= 0.0)) throw Error(ErrorCode::PreconditionViolated, "truncation level must be >= 0");
    return std::clamp(x, -c, c);
}

double truncate_remainder(double x, double c) { return x - truncate_f(x, c); }

double smooth_indicator_g(double x, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::BadEpsilon, "eps must be in (0, 1)");
    const double u = (x - (1.0 - eps)) / eps;
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return (1.0 - std::cos(std::numbers::pi * u)) / 2.0;
}

// ---------------------------------------------------------------------------
// Policies

SelectionPolicy SelectionPolicy::fixed(std::size_t vertex) {
    SelectionPolicy p;
    p.kind = Kind::FixedVertex;
    p.vertex = vertex;
    return p;
}

SelectionPolicy SelectionPolicy::iid() {
    SelectionPolicy p;
    p.kind = Kind::IIDRandomVertex;
    return p;
}

SelectionPolicy SelectionPolicy::periodic(std::size_t block_length, double growth) {
    SelectionPolicy p;
    p.kind = Kind::PeriodicSwitch;
    p.block_length = block_length;
    p.growth = growth;
    return p;
}

SelectionPolicy SelectionPolicy::greedy(double target) {
    SelectionPolicy p;
    p.kind = Kind::GreedyDrift;
    p.target = target;
    return p;
}

SelectionPolicy SelectionPolicy::cycle(std::vector<std::size_t> schedule) {
    SelectionPolicy p;
    p.kind = Kind::Schedule;
    p.schedule = std::move(schedule);
    return p;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
    T v{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::FormatError, "bad " + std::string(what) + " in policy: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

std::string SelectionPolicy::describe() const {
    switch (kind) {
    case Kind::FixedVertex: return "fixed:" + std::to_string(vertex);
    case Kind::IIDRandomVertex: return "iid";
    case Kind::PeriodicSwitch: return "periodic:" + std::to_string(block_length) + ":" + format_double(growth);
    case Kind::GreedyDrift: return "greedy:" + format_double(target);
    case Kind::Schedule: {
        std::string s = "schedule:";
        for (std::size_t i = 0; i < schedule.size(); ++i) s += (i ? "," : "") + std::to_string(schedule[i]);
        return s;
    }
    }
    return "?";
}

SelectionPolicy SelectionPolicy::parse(std::string_view text) {
    const auto parts = split(text, ':');
    const auto head = parts[0];
    if (head == "iid" && parts.size() == 1) return iid();
    if (head == "fixed" && parts.size() == 2) return fixed(parse_number<std::size_t>(parts[1], "vertex"));
    if (head == "periodic" && (parts.size() == 2 || parts.size() == 3)) {
        const double g = parts.size() == 3 ? parse_number<double>(parts[2], "growth") : 1.0;
        return periodic(parse_number<std::size_t>(parts[1], "block length"), g);
    }
    if (head == "greedy" && parts.size() == 2) return greedy(parse_number<double>(parts[1], "target"));
    if (head == "schedule" && parts.size() == 2) {
        std::vector<std::size_t> s;
        for (auto item : split(parts[1], ',')) s.push_back(parse_number<std::size_t>(item, "vertex"));
        return cycle(std::move(s));
    }
    throw Error(ErrorCode::FormatError, "unknown policy '" + std::string(text) + "'");
}

void SelectionPolicy::validate(const CredalSet& p) const {
    switch (kind) {
    case Kind::FixedVertex:
        if (vertex >= p.size()) throw Error(ErrorCode::PreconditionViolated, "vertex index out of range");
        break;
    case Kind::PeriodicSwitch:
        if (block_length == 0) throw Error(ErrorCode::PreconditionViolated, "block length must be >= 1");
        if (!(growth >= 1.0) || !std::isfinite(growth)) {
            throw Error(ErrorCode::PreconditionViolated, "growth must be >= 1");
        }
        break;
    case Kind::GreedyDrift:
        if (!std::isfinite(target)) throw Error(ErrorCode::NonFinite, "greedy target must be finite");
        break;
    case Kind::Schedule:
        if (schedule.empty()) throw Error(ErrorCode::PreconditionViolated, "schedule must be nonempty");
        for (auto v : schedule) {
            if (v >= p.size()) throw Error(ErrorCode::PreconditionViolated, "vertex index out of range");
        }
        break;
    case Kind::IIDRandomVertex: break;
    }
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

std::uint64_t marginal_fp(const CredalSet& p, const RandomVar& x) {
    Fingerprint fp;
    fp.add(fingerprint(p)).add(x.values());
    return fp.value();
}

std::size_t draw_outcome(Rng& rng, std::span<const double> w) {
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0) continue;
        cum += w[i];
        last = i;
        if (u < cum) return i;
    }
    return last; // rounding left u just above the total mass
}

class Chooser {
public:
    Chooser(const SelectionPolicy& policy, const CredalSet& p, const RandomVar& x) : policy_(policy) {
        means_.reserve(p.size());
        for (const auto& q : p.vertices()) means_.push_back(linear_expect(q, x));
        hi_ = static_cast<std::size_t>(std::max_element(means_.begin(), means_.end()) - means_.begin());
        lo_ = static_cast<std::size_t>(std::min_element(means_.begin(), means_.end()) - means_.begin());
        remaining_ = policy.block_length;
    }

    // Vertex for step k (1-based) given the sum of the first k - 1 draws.
    std::size_t next(Rng& rng, std::size_t k, double sum) {
        switch (policy_.kind) {
        case SelectionPolicy::Kind::FixedVertex: return policy_.vertex;
        case SelectionPolicy::Kind::IIDRandomVertex: return rng.uniform_int(0, means_.size() - 1);
        case SelectionPolicy::Kind::PeriodicSwitch: {
            if (remaining_ == 0) {
                ++block_;
                high_ = !high_;
                const double len =
                    std::round(static_cast<double>(policy_.block_length) * std::pow(policy_.growth, block_));
                remaining_ = len >= 1e18 ? std::numeric_limits<std::size_t>::max()
                                         : std::max<std::size_t>(1, static_cast<std::size_t>(len));
            }
            --remaining_;
            return high_ ? hi_ : lo_;
        }
        case SelectionPolicy::Kind::GreedyDrift: {
            std::size_t best = 0;
            double best_gap = std::numeric_limits<double>::infinity();
            for (std::size_t v = 0; v < means_.size(); ++v) {
                const double gap = std::abs((sum + means_[v]) / static_cast<double>(k) - policy_.target);
                if (gap < best_gap) {
                    best_gap = gap;
                    best = v;
                }
            }
            return best;
        }
        case SelectionPolicy::Kind::Schedule: return policy_.schedule[(k - 1) % policy_.schedule.size()];
        }
        return 0;
    }

private:
    const SelectionPolicy& policy_;
    std::vector<double> means_;
    std::size_t hi_ = 0, lo_ = 0;
    std::size_t remaining_ = 0;
    int block_ = 0;
    bool high_ = true;
};

} // namespace

Trajectory simulate(const CredalSet& p, const RandomVar& x, const SelectionPolicy& policy, std::size_t n,
                    std::uint64_t seed, const SimulationOptions& options) {
    if (n == 0) throw Error(ErrorCode::PreconditionViolated, "simulation needs n >= 1");
    if (!(options.tail_fraction > 0.0 && options.tail_fraction <= 1.0)) {
        throw Error(ErrorCode::PreconditionViolated, "tail fraction must be in (0, 1]");
    }
    if (!(options.checkpoint_ratio > 1.0)) throw Error(ErrorCode::PreconditionViolated, "checkpoint ratio must be > 1");
    require_same_space(p.space(), x.space(), "simulate");
    policy.validate(p);

    Trajectory t;
    t.seed = seed;
    t.policy = policy;
    t.steps = n;
    t.marginal_fingerprint = marginal_fp(p, x);
    const auto tail_start = static_cast<std::size_t>(
        std::max(1.0, std::ceil(static_cast<double>(n) * (1.0 - options.tail_fraction))));
    t.tail_min = std::numeric_limits<double>::infinity();
    t.tail_max = -std::numeric_limits<double>::infinity();

    Rng rng(seed);
    Chooser chooser(policy, p, x);
    double sum = 0.0;
    double next_checkpoint = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t v = chooser.next(rng, k, sum);
        sum += x[draw_outcome(rng, p.vertex(v).weights())];
        const double mean = sum / static_cast<double>(k);
        if (k >= tail_start) {
            t.tail_min = std::min(t.tail_min, mean);
            t.tail_max = std::max(t.tail_max, mean);
        }
        if (static_cast<double>(k) >= next_checkpoint || k == n) {
            t.checkpoints.push_back({k, mean, v});
            next_checkpoint = std::max(static_cast<double>(k) * options.checkpoint_ratio, static_cast<double>(k + 1));
        }
    }
    return t;
}

std::vector<Trajectory> simulate_many(const CredalSet& p, const RandomVar& x, const SelectionPolicy& policy,
                                      std::size_t n, std::uint64_t master_seed, std::size_t count,
                                      std::size_t threads, const SimulationOptions& options) {
    std::vector<Trajectory> out(count);
    parallel_for(count, threads ? threads : default_thread_count(), [&](std::size_t i) {
        out[i] = simulate(p, x, policy, n, derive_seed(master_seed, i), options);
    });
    return out;
}

InequalityReport slln_band_check(const std::vector<Trajectory>& trajectories, const CredalSet& p, const RandomVar& x,
                                 double delta) {
    if (trajectories.empty()) throw Error(ErrorCode::PreconditionViolated, "no trajectories");
    const double hi = upper_expect(p, x), lo = lower_expect(p, x);
    double worst = -std::numeric_limits<double>::infinity();
    Fingerprint fp;
    fp.add(marginal_fp(p, x)).add(delta);
    for (const auto& t : trajectories) {
        worst = std::max({worst, t.tail_max - hi, lo - t.tail_min});
        fp.add(t.seed).add(static_cast<std::uint64_t>(t.steps));
    }
    return make_report("slln_band", worst, delta, delta, "tail of S_k/k within [e[X], E[X]] widened by delta",
                       fp.value(), 0, 0.0);
}

double statistical_delta(const CredalSet& p, const RandomVar& x, std::size_t n) {
    double var = 0.0;
    for (const auto& q : p.vertices()) {
        const double m = linear_expect(q, x);
        var = std::max(var, linear_expect(q, x.map([m](double v) { return (v - m) * (v - m); })));
    }
    const double nd = static_cast<double>(std::max<std::size_t>(n, 2));
    return 4.0 * std::sqrt(var / nd) * std::sqrt(std::log(nd));
}

ClusterEstimate cluster_check(const Trajectory& t, const CredalSet& p, const RandomVar& x, double width,
                              std::size_t burn_in, std::size_t upto) {
    if (!(width > 0.0)) throw Error(ErrorCode::PreconditionViolated, "bin width must be > 0");
    const double hi = upper_expect(p, x), lo = lower_expect(p, x);
    ClusterEstimate c;
    c.interval_lo = std::numeric_limits<double>::infinity();
    c.interval_hi = -std::numeric_limits<double>::infinity();
    const double span = hi - lo;
    c.bins = span <= 0.0 ? 1 : static_cast<std::size_t>(std::ceil(span / width - 1e-9));
    std::vector<bool> hit(c.bins, false);
    for (const auto& cp : t.checkpoints) {
        if (cp.step < burn_in || (upto != 0 && cp.step > upto)) continue;
        c.interval_lo = std::min(c.interval_lo, cp.running_mean);
        c.interval_hi = std::max(c.interval_hi, cp.running_mean);
        if (span <= 0.0) {
            hit[0] = true;
            continue;
        }
        if (cp.running_mean < lo || cp.running_mean > hi) continue;
        const auto b = std::min(c.bins - 1, static_cast<std::size_t>((cp.running_mean - lo) / width));
        hit[b] = true;
    }
    if (span <= 0.0) hit[0] = true; // degenerate interval is covered trivially
    c.visited = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
    c.coverage = static_cast<double>(c.visited) / static_cast<double>(c.bins);
    return c;
}

MomentCondition choquet_moment_condition(const CredalSet& p, const RandomVar& x) {
    MomentCondition m;
    const RandomVar ax = x.abs();
    m.choquet_abs = choquet(CapacityView(p, CapacityMode::Upper), ax).value;
    m.cutoff = ax.max();
    m.tail_at_cutoff = upper_expect(p, ax.map([c = m.cutoff](double v) { return std::max(v - c, 0.0); }));
    return m;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    os << "step,running_mean,vertex_index\n";
    for (const auto& cp : t.checkpoints) os << cp.step << ',' << format_double(cp.running_mean) << ',' << cp.vertex << '\n';
}

std::string trajectory_metadata_json(const Trajectory& t) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["seed"] = t.seed;
    j["policy"] = t.policy.describe();
    j["n"] = t.steps;
    j["prng"] = kPrngName;
    j["marginal_fingerprint"] = hex64(t.marginal_fingerprint);
    return j.dump();
}

} // namespace sublin
