#pragma once

// Brute-force reference values for cross-checking the engines. Nothing here
// calls the sequence or capacity engines; only the model types are shared.

#include "sublin/capacity.hpp"
#include "sublin/model.hpp"
#include "sublin/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace sublin {

inline constexpr std::size_t kOracleCap = 1'000'000;

// |P|^{(m^n - 1)/(m - 1)} (|P|^n when m = 1), saturating at SIZE_MAX.
std::size_t peng_strategy_count(std::size_t vertices, std::size_t outcomes, std::size_t horizon);

// Max over every history-dependent choice of vertex, sampling coordinates in
// the order the model's Peng orientation implies (X_1 first for forward, X_n
// first for backward).
double oracle_peng(const SequenceModel& model, const Functional& f, std::size_t cap = kOracleCap);

// Max over non-adaptive vertex tuples of the product expectation.
double oracle_qwise(const SequenceModel& model, const Functional& f, std::size_t cap = kOracleCap);

struct NdScanReport {
    std::size_t step_pairs = 0;      // 0/1 step-function pairs checked
    std::size_t generated_pairs = 0; // generated ramp pairs checked
    std::size_t inapplicable = 0;    // pairs skipped for failing the sign conditions
    std::size_t violations = 0;
    double worst_margin = 0.0; // min of rhs - lhs over applicable pairs
    std::string first_violation;
    bool pass() const { return violations == 0; }
};

// Checks E[phi1(X) phi2(Y)] <= E[phi1(X)] E[phi2(Y)] for X the first `split`
// coordinates and Y the rest, over all pairs of monotone 0/1 step functions
// on the value grid and `count` generated monotone pairs (each also tried in
// a shifted form that breaks the sign conditions).
NdScanReport oracle_nd_scan(const SequenceModel& model, std::size_t split, std::uint64_t family_seed,
                            std::size_t count);

// Open Gauss-Legendre quadrature between consecutive breakpoints, refined
// until halves agree.
double oracle_choquet(const CapacityView& view, const RandomVar& x);

} // namespace sublin
