#pragma once

// Monte Carlo running means S_k / k where each step draws from a vertex of
// the credal set chosen by a selection policy. Each trajectory is a sample
// path under one product of vertex measures, so the Q-wise model is what is
// being simulated.

#include "sublin/model.hpp"
#include "sublin/report.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sublin {

// (-c) v (x ^ c)
double truncate_f(double x, double c);
// x - f_c(x)
double truncate_remainder(double x, double c);

// s((x - (1 - eps)) / eps) with s(u) = (1 - cos(pi u)) / 2 on [0, 1].
// I{x >= 1} <= g <= I{x > 1 - eps}.
double smooth_indicator_g(double x, double eps);

struct SelectionPolicy {
    enum class Kind { FixedVertex, IIDRandomVertex, PeriodicSwitch, GreedyDrift, Schedule };

    Kind kind = Kind::FixedVertex;
    std::size_t vertex = 0;
    // PeriodicSwitch: block j has length round(block_length * growth^j) and
    // the blocks alternate between the vertex maximizing E_Q[X] and the one
    // minimizing it, starting with the maximizer.
    std::size_t block_length = 1;
    double growth = 1.0;
    double target = 0.0;
    std::vector<std::size_t> schedule; // cycled

    static SelectionPolicy fixed(std::size_t vertex);
    static SelectionPolicy iid();
    static SelectionPolicy periodic(std::size_t block_length, double growth = 1.0);
    static SelectionPolicy greedy(double target);
    static SelectionPolicy cycle(std::vector<std::size_t> schedule);

    // fixed:I | iid | periodic:L[:G] | greedy:T | schedule:I,J,...
    std::string describe() const;
    static SelectionPolicy parse(std::string_view text);

    void validate(const CredalSet& p) const;
};

struct Checkpoint {
    std::size_t step = 0;
    double running_mean = 0.0;
    std::size_t vertex = 0;
};

struct SimulationOptions {
    double tail_fraction = 0.2;
    // Successive checkpoints are at least this factor apart (and at least one step).
    double checkpoint_ratio = 1.01;
};

struct Trajectory {
    std::uint64_t seed = 0;
    SelectionPolicy policy;
    std::size_t steps = 0;
    std::uint64_t marginal_fingerprint = 0;
    std::vector<Checkpoint> checkpoints; // strictly increasing steps, ends at `steps`
    // Extremes of S_k / k over every k in the final tail_fraction of steps.
    double tail_min = 0.0;
    double tail_max = 0.0;
};

Trajectory simulate(const CredalSet& p, const RandomVar& x, const SelectionPolicy& policy, std::size_t n,
                    std::uint64_t seed, const SimulationOptions& options = {});

// Trajectory i uses derive_seed(master_seed, i); content does not depend on `threads`.
std::vector<Trajectory> simulate_many(const CredalSet& p, const RandomVar& x, const SelectionPolicy& policy,
                                      std::size_t n, std::uint64_t master_seed, std::size_t count,
                                      std::size_t threads, const SimulationOptions& options = {});

// lhs = worst excursion of any tail outside [e[X], E[X]], rhs = delta.
InequalityReport slln_band_check(const std::vector<Trajectory>& trajectories, const CredalSet& p, const RandomVar& x,
                                 double delta);

// 4 sqrt(Var_max / n) sqrt(log n), Var_max the largest vertex variance of X.
double statistical_delta(const CredalSet& p, const RandomVar& x, std::size_t n);

struct ClusterEstimate {
    double interval_lo = 0.0; // min and max of the running means considered
    double interval_hi = 0.0;
    std::size_t bins = 0;
    std::size_t visited = 0;
    double coverage = 0.0;
};

// Bins of width w over [e[X], E[X]] hit by checkpoint running means with
// burn_in <= step <= upto (upto = 0: all checkpoints).
ClusterEstimate cluster_check(const Trajectory& t, const CredalSet& p, const RandomVar& x, double width,
                              std::size_t burn_in, std::size_t upto = 0);

struct MomentCondition {
    double choquet_abs = 0.0; // C_V(|X|)
    double cutoff = 0.0;      // c = max |X|
    double tail_at_cutoff = 0.0; // E[(|X| - c)^+]
    bool pass() const { return tail_at_cutoff == 0.0; }
};

MomentCondition choquet_moment_condition(const CredalSet& p, const RandomVar& x);

// CSV "step,running_mean,vertex_index", checkpoint rows only.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);
// {"format_version","seed","policy","n","prng","marginal_fingerprint"}
std::string trajectory_metadata_json(const Trajectory& t);

} // namespace sublin
