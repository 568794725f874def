#pragma once

// Capacities induced by a credal set and their Choquet integrals.
//
// On a finite space with every function available, the upper capacity is
// V(A) = E[I_A] and the lower one is 1 - V(A^c).

#include "sublin/model.hpp"
#include "sublin/report.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sublin {

double upper_capacity(const CredalSet& p, const EventSet& a);
double lower_capacity(const CredalSet& p, const EventSet& a);

// {w : X(w) >= t}
EventSet level_set(const RandomVar& x, double t);

enum class CapacityMode { Upper, Lower };

struct CapacityView {
    const CredalSet* source = nullptr;
    CapacityMode mode = CapacityMode::Upper;

    CapacityView(const CredalSet& p, CapacityMode m) : source(&p), mode(m) {}
    double operator()(const EventSet& a) const;
};

struct ChoquetResult {
    double value = 0.0;
    std::vector<double> level_points;     // sorted distinct values of X
    std::vector<double> level_capacities; // V(X >= level)
};

// Level-sum form: x_(1) + sum_{i>=2} (x_(i) - x_(i-1)) V(X >= x_(i)).
ChoquetResult choquet(const CapacityView& view, const RandomVar& x);

// Midpoint rule for the two-integral definition on [min-1, max+1] (widened to
// contain 0). Passes iff |difference| <= grid_step * max(1, max - min).
InequalityReport choquet_vs_riemann(const CapacityView& view, const RandomVar& x, double grid_step);

inline constexpr std::size_t kMaxOuterCapacityOutcomes = 12;

// Least total upper capacity over finite covers of A. Only partitions of A
// need to be searched since V is monotone.
double outer_capacity(const CredalSet& p, const EventSet& a);

struct SubadditivityReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double worst_margin = 0.0; // max of V(union) - sum V(A_i)
    bool pass() const { return violations == 0; }
};

SubadditivityReport countable_subadd_check(const CredalSet& p, std::size_t trials, std::uint64_t seed);

// sum_{j<=j_max} E[(|X| ^ j)^2] / j^2  <=  2 + 3 (1 + sum_{i>=1} V(|X| > i)).
InequalityReport truncated_moment_tail_bound(const CredalSet& p, const RandomVar& x, std::size_t j_max);

// E[|X|] <= C_V(|X|)
InequalityReport mean_choquet_domination(const CredalSet& p, const RandomVar& x);

} // namespace sublin
