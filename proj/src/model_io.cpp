#include "sublin/model_io.hpp"

#include "sublin/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sublin {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::FormatError, what); }

template <typename T>
T field(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        bad(std::string("field '") + key + "': " + e.what());
    }
}

} // namespace

SequenceModel ModelDocument::sequence(std::size_t default_horizon, Semantics default_semantics) const {
    return SequenceModel(marginal, values, horizon.value_or(default_horizon), semantics.value_or(default_semantics));
}

ModelDocument parse_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("model is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad("model must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "format_version" && key != "outcomes" && key != "values" && key != "vertices" &&
            key != "horizon" && key != "semantics") {
            bad("unknown field '" + key + "'");
        }
    }
    if (j.contains("format_version") && field<int>(j, "format_version") != 1) bad("unsupported format_version");

    const auto space = make_space(field<std::vector<std::string>>(j, "outcomes"));
    RandomVar values(space, field<std::vector<double>>(j, "values"));
    std::vector<Measure> vertices;
    for (auto& w : field<std::vector<std::vector<double>>>(j, "vertices")) vertices.push_back(make_measure(space, std::move(w)));
    ModelDocument doc{CredalSet(space, std::move(vertices)), std::move(values), std::nullopt, std::nullopt};
    if (j.contains("horizon")) {
        const auto n = field<long long>(j, "horizon");
        if (n < 1) bad("horizon must be >= 1");
        doc.horizon = static_cast<std::size_t>(n);
    }
    if (j.contains("semantics")) {
        const auto s = parse_semantics(field<std::string>(j, "semantics"));
        if (!s) bad("unknown semantics");
        doc.semantics = *s;
    }
    return doc;
}

ModelDocument load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string dump_model(const ModelDocument& doc) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["outcomes"] = doc.marginal.space()->labels();
    j["values"] = std::vector<double>(doc.values.values().begin(), doc.values.values().end());
    auto vs = nlohmann::ordered_json::array();
    for (const auto& q : doc.marginal.vertices()) vs.push_back(std::vector<double>(q.weights().begin(), q.weights().end()));
    j["vertices"] = vs;
    if (doc.horizon) j["horizon"] = *doc.horizon;
    if (doc.semantics) j["semantics"] = std::string(to_string(*doc.semantics));
    return j.dump();
}

} // namespace sublin
