#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sublin {

inline constexpr double kSlackTolerance = 1e-9;

// Outcome of checking lhs <= rhs. pass is derived, never set by hand:
// pass <=> lhs <= rhs + tolerance * max(1, |rhs|).
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 1.0;
    std::string constant_provenance;
    double slack = 0.0;
    bool pass = false;
    std::uint64_t fingerprint = 0;
    std::uint64_t seed = 0;
};

InequalityReport make_report(std::string name, double lhs, double rhs, double constant,
                             std::string provenance, std::uint64_t fingerprint, std::uint64_t seed = 0,
                             double tolerance = kSlackTolerance);

bool within_slack(double lhs, double rhs, double tolerance = kSlackTolerance);

// One JSON object per line, fixed key order.
std::string to_jsonl(const InequalityReport& r);
InequalityReport report_from_json(const std::string& line);

// Sorted by (name, fingerprint, seed) so merged output does not depend on
// the order in which parallel jobs finished.
void sort_reports(std::vector<InequalityReport>& reports);

} // namespace sublin
