#include "sublin/capacity.hpp"

#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sublin {

double upper_capacity(const CredalSet& p, const EventSet& a) {
    require_same_space(p.space(), a.space(), "upper_capacity");
    double best = 0.0;
    for (const auto& q : p.vertices()) {
        double mass = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (a.contains(i)) mass += q[i];
        }
        best = std::max(best, mass);
    }
    return best;
}

double lower_capacity(const CredalSet& p, const EventSet& a) { return 1.0 - upper_capacity(p, complement(a)); }

EventSet level_set(const RandomVar& x, double t) {
    std::vector<bool> m(x.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = x[i] >= t;
    return EventSet(x.space(), std::move(m));
}

double CapacityView::operator()(const EventSet& a) const {
    return mode == CapacityMode::Upper ? upper_capacity(*source, a) : lower_capacity(*source, a);
}

ChoquetResult choquet(const CapacityView& view, const RandomVar& x) {
    ChoquetResult r;
    r.level_points.assign(x.values().begin(), x.values().end());
    std::sort(r.level_points.begin(), r.level_points.end());
    r.level_points.erase(std::unique(r.level_points.begin(), r.level_points.end()), r.level_points.end());
    r.level_capacities.reserve(r.level_points.size());
    for (double t : r.level_points) r.level_capacities.push_back(view(level_set(x, t)));
    r.value = r.level_points.front();
    for (std::size_t i = 1; i < r.level_points.size(); ++i) {
        r.value += (r.level_points[i] - r.level_points[i - 1]) * r.level_capacities[i];
    }
    return r;
}

InequalityReport choquet_vs_riemann(const CapacityView& view, const RandomVar& x, double grid_step) {
    if (!(grid_step > 0.0)) throw Error(ErrorCode::PreconditionViolated, "grid_step must be > 0");
    const double value = choquet(view, x).value;
    const double lo = std::min(x.min() - 1.0, 0.0);
    const double hi = std::max(x.max() + 1.0, 0.0);
    const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / grid_step));
    const double h = (hi - lo) / static_cast<double>(cells);
    // V(X >= t) only changes at the values of X; cache it per level index.
    std::vector<double> sorted(x.values().begin(), x.values().end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<double> cap(sorted.size() + 1, 0.0); // cap[i] = V(X >= t) for sorted[i-1] < t <= sorted[i]
    for (std::size_t i = 0; i < sorted.size(); ++i) cap[i] = view(level_set(x, sorted[i]));
    double integral = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double t = lo + (static_cast<double>(c) + 0.5) * h;
        const auto i = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
        integral += (cap[i] - (t < 0.0 ? 1.0 : 0.0)) * h;
    }
    const double tol = grid_step * std::max(1.0, x.max() - x.min());
    Fingerprint fp;
    fp.add(fingerprint(*view.source)).add(x.values()).add(grid_step);
    return make_report("choquet_vs_riemann", std::abs(integral - value), tol, grid_step,
                       "midpoint rule error bound for a step integrand", fp.value(), 0, 0.0);
}

double outer_capacity(const CredalSet& p, const EventSet& a) {
    require_same_space(p.space(), a.space(), "outer_capacity");
    const std::size_t m = p.space()->size();
    if (m > kMaxOuterCapacityOutcomes) {
        throw Error(ErrorCode::SpaceTooLarge, "outer_capacity enumerates covers of at most 12 outcomes");
    }
    const std::uint64_t target = a.mask();
    if (target == 0) return 0.0;
    // best[s]: least total capacity of a partition of s, for s a subset of A
    std::vector<double> cap(std::size_t{1} << m, 0.0);
    std::vector<double> best(std::size_t{1} << m, std::numeric_limits<double>::infinity());
    best[0] = 0.0;
    for (std::uint64_t s = target;; s = (s - 1) & target) {
        cap[s] = upper_capacity(p, EventSet::from_mask(p.space(), s));
        if (s == 0) break;
    }
    // submasks of target in increasing order
    std::vector<std::uint64_t> subs;
    for (std::uint64_t s = target;; s = (s - 1) & target) {
        subs.push_back(s);
        if (s == 0) break;
    }
    std::reverse(subs.begin(), subs.end());
    for (std::uint64_t s : subs) {
        if (s == 0) continue;
        const std::uint64_t low = s & (~s + 1);
        const std::uint64_t rest = s ^ low;
        // blocks containing the lowest element of s
        for (std::uint64_t r = rest;; r = (r - 1) & rest) {
            const std::uint64_t block = r | low;
            best[s] = std::min(best[s], cap[block] + best[s ^ block]);
            if (r == 0) break;
        }
    }
    return best[target];
}

SubadditivityReport countable_subadd_check(const CredalSet& p, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    SubadditivityReport rep;
    rep.trials = trials;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        const auto k = static_cast<std::size_t>(rng.uniform_int(1, 6));
        EventSet acc = EventSet::empty(p.space());
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const EventSet e = random_event(rng, p.space());
            acc = acc | e;
            sum += upper_capacity(p, e);
        }
        const double margin = upper_capacity(p, acc) - sum;
        rep.worst_margin = std::max(rep.worst_margin, margin);
        if (margin > 1e-12) ++rep.violations;
    }
    return rep;
}

InequalityReport truncated_moment_tail_bound(const CredalSet& p, const RandomVar& x, std::size_t j_max) {
    if (j_max == 0) throw Error(ErrorCode::PreconditionViolated, "j_max must be >= 1");
    const RandomVar ax = x.abs();
    double lhs = 0.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
        const double jd = static_cast<double>(j);
        const double e = upper_expect(p, ax.map([jd](double v) { return std::min(v, jd) * std::min(v, jd); }));
        lhs += e / (jd * jd);
    }
    // integer tail sum bounding C_V(|X|); V(|X| > i) vanishes once i >= max|X|
    double tail = 1.0;
    const double top = ax.max();
    for (std::size_t i = 1; static_cast<double>(i) < top; ++i) {
        std::vector<bool> m(ax.size());
        for (std::size_t w = 0; w < m.size(); ++w) m[w] = ax[w] > static_cast<double>(i);
        tail += upper_capacity(p, EventSet(ax.space(), std::move(m)));
    }
    Fingerprint fp;
    fp.add(fingerprint(p)).add(x.values()).add(static_cast<std::uint64_t>(j_max));
    return make_report("truncated_moment_tail_bound", lhs, 2.0 + 3.0 * tail, tail,
                       "2 + 3 C_V(|X|), C_V bounded by 1 + sum_i V(|X| > i)", fp.value());
}

InequalityReport mean_choquet_domination(const CredalSet& p, const RandomVar& x) {
    const RandomVar ax = x.abs();
    const double lhs = upper_expect(p, ax);
    const double rhs = choquet(CapacityView(p, CapacityMode::Upper), ax).value;
    Fingerprint fp;
    fp.add(fingerprint(p)).add(x.values());
    return make_report("mean_choquet_domination", lhs, rhs, 1.0, "E[|X|] <= C_V(|X|)", fp.value());
}

} // namespace sublin
