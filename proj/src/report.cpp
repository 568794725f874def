#include "sublin/report.hpp"

#include "sublin/error.hpp"
#include "sublin/model.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <tuple>

namespace sublin {

bool within_slack(double lhs, double rhs, double tolerance) {
    return lhs <= rhs + tolerance * std::max(1.0, std::abs(rhs));
}

InequalityReport make_report(std::string name, double lhs, double rhs, double constant,
                             std::string provenance, std::uint64_t fingerprint, std::uint64_t seed,
                             double tolerance) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant = constant;
    r.constant_provenance = std::move(provenance);
    r.slack = rhs - lhs;
    r.pass = std::isfinite(lhs) && std::isfinite(rhs) && within_slack(lhs, rhs, tolerance);
    r.fingerprint = fingerprint;
    r.seed = seed;
    return r;
}

std::string to_jsonl(const InequalityReport& r) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["constant"] = r.constant;
    j["constant_provenance"] = r.constant_provenance;
    j["slack"] = r.slack;
    j["pass"] = r.pass;
    j["fingerprint"] = hex64(r.fingerprint);
    j["seed"] = r.seed;
    return j.dump();
}

InequalityReport report_from_json(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("report line: ") + e.what());
    }
    static const char* const keys[] = {"format_version", "name", "lhs", "rhs", "constant",
                                       "constant_provenance", "slack", "pass", "fingerprint", "seed"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(std::begin(keys), std::end(keys), [&](const char* k) { return it.key() == k; }) ==
            std::end(keys)) {
            throw Error(ErrorCode::FormatError, "unknown report field '" + it.key() + "'");
        }
    }
    try {
        if (j.at("format_version").get<int>() != 1) throw Error(ErrorCode::FormatError, "unsupported format_version");
        InequalityReport r;
        r.name = j.at("name").get<std::string>();
        r.lhs = j.at("lhs").get<double>();
        r.rhs = j.at("rhs").get<double>();
        r.constant = j.at("constant").get<double>();
        r.constant_provenance = j.at("constant_provenance").get<std::string>();
        r.slack = j.at("slack").get<double>();
        r.pass = j.at("pass").get<bool>();
        r.fingerprint = std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
        r.seed = j.at("seed").get<std::uint64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::FormatError, std::string("report line: ") + e.what());
    }
}

void sort_reports(std::vector<InequalityReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
        return std::tie(a.name, a.fingerprint, a.seed) < std::tie(b.name, b.fingerprint, b.seed);
    });
}

} // namespace sublin
