#include "sublin/oracle.hpp"

#include "sublin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sublin {

namespace {

constexpr std::size_t kSat = std::numeric_limits<std::size_t>::max();

std::size_t sat_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > kSat / a) return kSat;
    return a * b;
}

std::size_t sat_pow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, base);
    return r;
}

// Expectation of f under the product of the given per-coordinate weights.
double product_expectation(const SequenceModel& model, const Functional& f,
                           const std::vector<std::span<const double>>& weights) {
    const std::size_t n = model.horizon(), m = model.outcomes();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> point(n);
    double total = 0.0;
    while (true) {
        double prob = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            prob *= weights[k][idx[k]];
            point[k] = model.coordinate(k)[idx[k]];
        }
        if (prob != 0.0) total += prob * f(point);
        std::size_t k = n;
        while (k > 0) {
            if (++idx[k - 1] < m) break;
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
    }
    return total;
}

struct PengWalk {
    const SequenceModel& model;
    const Functional& f;
    const std::vector<std::size_t>& order;
    const std::vector<std::size_t>& offset;
    const std::vector<std::size_t>& choice;
    std::vector<double> point;

    double run(std::size_t step, std::size_t history, double prob) {
        const std::size_t n = model.horizon();
        if (step == n) return prob * f(point);
        const std::size_t m = model.outcomes();
        const std::size_t coord = order[step];
        const auto w = model.marginal().vertex(choice[offset[step] + history]).weights();
        double acc = 0.0;
        for (std::size_t o = 0; o < m; ++o) {
            if (w[o] == 0.0) continue;
            point[coord] = model.coordinate(coord)[o];
            acc += run(step + 1, history * m + o, prob * w[o]);
        }
        return acc;
    }
};

} // namespace

std::size_t peng_strategy_count(std::size_t vertices, std::size_t outcomes, std::size_t horizon) {
    std::size_t histories = 0;
    for (std::size_t k = 0; k < horizon; ++k) {
        const std::size_t h = sat_pow(outcomes, k);
        histories = (histories > kSat - h) ? kSat : histories + h;
    }
    if (histories == kSat) return vertices <= 1 ? 1 : kSat;
    return sat_pow(vertices, histories);
}

double oracle_peng(const SequenceModel& model, const Functional& f, std::size_t cap) {
    if (model.semantics() == Semantics::QwiseProduct) {
        throw Error(ErrorCode::PreconditionViolated, "oracle_peng needs a Peng orientation");
    }
    if (f.arity() != model.horizon()) throw Error(ErrorCode::ArityMismatch, "functional arity != horizon");
    const std::size_t n = model.horizon(), m = model.outcomes(), v = model.marginal().size();
    const std::size_t count = peng_strategy_count(v, m, n);
    if (count > cap) throw Error(ErrorCode::BudgetExceeded, "strategy count exceeds cap");

    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = model.semantics() == Semantics::PengForward ? k : n - 1 - k;
    std::vector<std::size_t> offset(n, 0);
    std::size_t histories = 0;
    for (std::size_t k = 0; k < n; ++k) {
        offset[k] = histories;
        histories += sat_pow(m, k);
    }
    std::vector<std::size_t> choice(histories, 0);
    PengWalk walk{model, f, order, offset, choice, std::vector<double>(n)};
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        best = std::max(best, walk.run(0, 0, 1.0));
        std::size_t i = 0;
        for (; i < histories; ++i) {
            if (++choice[i] < v) break;
            choice[i] = 0;
        }
        if (i == histories) break;
    }
    return best;
}

double oracle_qwise(const SequenceModel& model, const Functional& f, std::size_t cap) {
    if (f.arity() != model.horizon()) throw Error(ErrorCode::ArityMismatch, "functional arity != horizon");
    const std::size_t n = model.horizon(), v = model.marginal().size();
    if (sat_pow(v, n) > cap) throw Error(ErrorCode::BudgetExceeded, "vertex tuple count exceeds cap");
    std::vector<std::size_t> tuple(n, 0);
    std::vector<std::span<const double>> weights(n);
    double best = -std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t k = 0; k < n; ++k) weights[k] = model.marginal().vertex(tuple[k]).weights();
        best = std::max(best, product_expectation(model, f, weights));
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++tuple[i] < v) break;
            tuple[i] = 0;
        }
        if (i == n) break;
    }
    return best;
}

// ---------------------------------------------------------------------------
// ND scan

namespace {

// Grid of distinct values for a block of coordinates.
struct BlockGrid {
    std::vector<std::vector<double>> axes; // sorted distinct values per coordinate
    std::size_t points = 1;

    BlockGrid(const SequenceModel& model, std::size_t first, std::size_t count) {
        for (std::size_t k = first; k < first + count; ++k) {
            std::vector<double> a(model.coordinate(k).values().begin(), model.coordinate(k).values().end());
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
            points *= a.size();
            axes.push_back(std::move(a));
        }
    }

    std::size_t index_of(std::span<const double> x) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const auto it = std::lower_bound(axes[k].begin(), axes[k].end(), x[k]);
            idx = idx * axes[k].size() + static_cast<std::size_t>(it - axes[k].begin());
        }
        return idx;
    }

    // Masks over grid points that are monotone in the given direction.
    std::vector<std::uint64_t> monotone_masks(bool nondecreasing) const {
        if (points > 20) throw Error(ErrorCode::BudgetExceeded, "step-function enumeration limited to 20 grid points");
        std::vector<std::size_t> stride(axes.size(), 1);
        for (std::size_t k = axes.size(); k-- > 1;) stride[k - 1] = stride[k] * axes[k].size();
        std::vector<std::uint64_t> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << points); ++mask) {
            bool ok = true;
            for (std::size_t g = 0; g < points && ok; ++g) {
                for (std::size_t k = 0; k < axes.size() && ok; ++k) {
                    const std::size_t pos = (g / stride[k]) % axes[k].size();
                    if (pos + 1 == axes[k].size()) continue;
                    const bool lo = (mask >> g) & 1U;
                    const bool hi = (mask >> (g + stride[k])) & 1U;
                    ok = nondecreasing ? (lo <= hi) : (hi <= lo);
                }
            }
            if (ok) out.push_back(mask);
        }
        return out;
    }
};

class NdScanner {
public:
    NdScanner(const SequenceModel& model, std::size_t split) : model_(model), split_(split) {}

    double upper(const Functional& f) const {
        return model_.semantics() == Semantics::QwiseProduct ? oracle_qwise(model_, f) : oracle_peng(model_, f);
    }

    // f1 on the first block, f2 on the second; returns false if inapplicable.
    bool check(const Functional& f1, const Functional& f2, NdScanReport& rep, bool& first_seen) const {
        const std::size_t n = model_.horizon();
        const Functional g1 = f1.lifted(0, n);
        const Functional g2 = f2.lifted(split_, n);
        // Y is the block declared ND to the other one.
        const bool y_first = model_.semantics() == Semantics::PengBackward;
        const Functional& gx = y_first ? g2 : g1;
        const Functional& gy = y_first ? g1 : g2;
        const double ey = upper(gy);
        if (ey < 0.0 || !nonnegative(gx)) {
            ++rep.inapplicable;
            return false;
        }
        const double ex = upper(gx);
        const double lhs = upper(product(g1, g2));
        const double margin = ex * ey - lhs;
        if (!first_seen || margin < rep.worst_margin) rep.worst_margin = margin;
        first_seen = true;
        if (margin < -1e-12 * std::max(1.0, std::abs(ex * ey))) {
            ++rep.violations;
            if (rep.first_violation.empty()) {
                std::ostringstream os;
                os.precision(17);
                os << f1.label() << " x " << f2.label() << ": lhs=" << lhs << " rhs=" << ex * ey;
                rep.first_violation = os.str();
            }
        }
        return true;
    }

private:
    bool nonnegative(const Functional& g) const {
        const std::size_t n = model_.horizon(), m = model_.outcomes();
        std::vector<std::size_t> idx(n, 0);
        std::vector<double> point(n);
        while (true) {
            for (std::size_t k = 0; k < n; ++k) point[k] = model_.coordinate(k)[idx[k]];
            if (g(point) < 0.0) return false;
            std::size_t k = n;
            while (k > 0) {
                if (++idx[k - 1] < m) break;
                idx[k - 1] = 0;
                --k;
            }
            if (k == 0) return true;
        }
    }

    const SequenceModel& model_;
    std::size_t split_;
};

Functional step_function(const BlockGrid& grid, std::uint64_t mask, std::size_t arity, const char* tag) {
    auto g = std::make_shared<const BlockGrid>(grid);
    std::ostringstream os;
    os << tag << "[" << mask << "]";
    return Functional::custom(
        arity, [g, mask](std::span<const double> x) { return static_cast<double>((mask >> g->index_of(x)) & 1U); },
        os.str());
}

} // namespace

NdScanReport oracle_nd_scan(const SequenceModel& model, std::size_t split, std::uint64_t family_seed,
                            std::size_t count) {
    const std::size_t n = model.horizon();
    if (split == 0 || split >= n) throw Error(ErrorCode::PreconditionViolated, "split must be in [1, n)");
    NdScanReport rep;
    NdScanner scan(model, split);
    bool seen = false;
    const BlockGrid gx(model, 0, split), gy(model, split, n - split);
    for (bool up : {true, false}) {
        const auto mx = gx.monotone_masks(up);
        const auto my = gy.monotone_masks(up);
        for (std::uint64_t a : mx) {
            for (std::uint64_t b : my) {
                if (scan.check(step_function(gx, a, split, "step"), step_function(gy, b, n - split, "step"), rep,
                               seen)) {
                    ++rep.step_pairs;
                }
            }
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        const Monotonicity dir = (i % 2 == 0) ? Monotonicity::Nondecreasing : Monotonicity::Nonincreasing;
        const std::uint64_t s = family_seed + 2 * i;
        const Functional f1 = generate_monotone_functional(s, split, dir).functional();
        const Functional f2 = generate_monotone_functional(s + 1, n - split, dir).functional();
        if (scan.check(f1, f2, rep, seen)) ++rep.generated_pairs;
        // Shifted so that both sign conditions fail; always counted as inapplicable.
        scan.check(f1.shifted(-1e6), f2.shifted(-1e6), rep, seen);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Choquet by quadrature

namespace {

double capacity_at(const CapacityView& view, const RandomVar& x, double t) {
    // V(X >= t) directly from the vertices; lower capacity via complement.
    const auto& p = *view.source;
    const bool upper = view.mode == CapacityMode::Upper;
    double best = 0.0;
    for (std::size_t v = 0; v < p.size(); ++v) {
        const auto w = p.vertex(v).weights();
        double mass = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const bool in = x[i] >= t;
            if (upper ? in : !in) mass += w[i];
        }
        best = std::max(best, mass);
    }
    return upper ? best : 1.0 - best;
}

double gauss5(const CapacityView& view, const RandomVar& x, double a, double b) {
    static constexpr double nodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                        0.9061798459386640};
    static constexpr double weights[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                          0.2369268850561891, 0.2369268850561891};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double t = mid + half * nodes[i];
        s += weights[i] * (capacity_at(view, x, t) - (t < 0.0 ? 1.0 : 0.0));
    }
    return s * half;
}

double adaptive(const CapacityView& view, const RandomVar& x, double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss5(view, x, a, mid), right = gauss5(view, x, mid, b);
    if (depth >= 30 || std::abs(left + right - whole) <= 1e-14 * std::max(1.0, std::abs(whole))) return left + right;
    return adaptive(view, x, a, mid, left, depth + 1) + adaptive(view, x, mid, b, right, depth + 1);
}

} // namespace

double oracle_choquet(const CapacityView& view, const RandomVar& x) {
    std::vector<double> br(x.values().begin(), x.values().end());
    br.push_back(0.0);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double total = 0.0;
    for (std::size_t i = 1; i < br.size(); ++i) {
        total += adaptive(view, x, br[i - 1], br[i], gauss5(view, x, br[i - 1], br[i]), 0);
    }
    return total;
}

} // namespace sublin
