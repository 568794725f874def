#pragma once

// Model documents:
//   {"format_version": 1, "outcomes": [...], "values": [...], "vertices": [[...], ...],
//    "horizon": n, "semantics": "peng-forward" | "peng-backward" | "qwise"}
// format_version, horizon and semantics are optional on input. Unknown
// fields are rejected.

#include "sublin/model.hpp"
#include "sublin/sequence.hpp"

#include <optional>
#include <string>

namespace sublin {

struct ModelDocument {
    CredalSet marginal;
    RandomVar values;
    std::optional<std::size_t> horizon;
    std::optional<Semantics> semantics;

    SequenceModel sequence(std::size_t default_horizon, Semantics default_semantics) const;
};

// FormatError for malformed JSON or fields; validation errors from the model
// types propagate with their own codes.
ModelDocument parse_model(const std::string& text);
ModelDocument load_model(const std::string& path);
std::string dump_model(const ModelDocument& doc);

} // namespace sublin
