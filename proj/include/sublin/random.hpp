#pragma once

// Seeded generators. The engine is std::mt19937_64, whose output sequence is
// fixed by the C++ standard; the conversions below are written out by hand
// because the <random> distributions are implementation-defined.

#include "sublin/model.hpp"

#include <cstdint>
#include <functional>
#include <random>

namespace sublin {

inline constexpr const char* kPrngName = "mt19937_64/u53-v1";

std::uint64_t splitmix64(std::uint64_t x);

// Seed for job `index` under `master`: splitmix64(master + golden * (index + 1)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Top 53 bits scaled to [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [lo, hi] by rejection.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
    bool coin(double p = 0.5) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

struct RandomModelShape {
    std::size_t min_outcomes = 2;
    std::size_t max_outcomes = 4;
    std::size_t min_vertices = 1;
    std::size_t max_vertices = 4;
    double value_lo = -3.0;
    double value_hi = 3.0;
};

SpacePtr random_space(Rng& rng, std::size_t min_outcomes, std::size_t max_outcomes);
// Weights summing to one within the normalization tolerance; occasionally sparse.
Measure random_measure(Rng& rng, const SpacePtr& space);
CredalSet random_credal_set(Rng& rng, const SpacePtr& space, std::size_t min_vertices, std::size_t max_vertices);
RandomVar random_var(Rng& rng, const SpacePtr& space, double lo, double hi);
EventSet random_event(Rng& rng, const SpacePtr& space);

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
// runs exactly once; callers write results into slot i.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

std::size_t default_thread_count();

} // namespace sublin
