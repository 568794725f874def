#pragma once

// Named verification suites producing report lists, shared by the command
// line and the acceptance runner.

#include "sublin/inequality.hpp"
#include "sublin/report.hpp"
#include "sublin/sequence.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sublin {

// Theorem suite names plus: axioms, closure, scalar, capacity, engine-oracle, nd.
std::vector<std::string> suite_names();
bool is_suite(std::string_view name);

// Every report in the result must pass for the suite to pass. Trial i uses
// derive_seed(options.seed, i); output is sorted.
std::vector<InequalityReport> run_suite(std::string_view name, const SuiteOptions& options,
                                        const SequenceModel* fixed = nullptr);

struct OracleInstance {
    SequenceModel model;
    Functional f;
};

// n <= 3, |Omega| <= 3, |P| <= 3, skipping combinations whose adaptive
// strategy count exceeds the oracle cap.
OracleInstance random_oracle_instance(std::uint64_t seed);

} // namespace sublin
