#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>
#include <variant>

#include "lmo/density.hpp"

namespace lmo {

/// Any density the document format can carry. The `kind` field selects the
/// alternative ("lmo" when absent).
using AnyDensity = std::variant<LabeledDensity, DeltaGlmbDensity, MDeltaGlmbDensity, GlmbDensity,
                                FactorizedDensity>;

const char* kind_name(const AnyDensity& density);

/// Parses a density document. Unknown fields are rejected. Errors are thrown
/// as kParse with a "source:line: message" prefix. A `{"report": ..,
/// "density": ..}` envelope is accepted and its density returned.
AnyDensity parse_document(std::string_view text, std::string_view source = "<input>");
AnyDensity read_document(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const LabeledDensity& density);
nlohmann::ordered_json to_json(const DeltaGlmbDensity& density);
nlohmann::ordered_json to_json(const MDeltaGlmbDensity& density);
nlohmann::ordered_json to_json(const GlmbDensity& density);
nlohmann::ordered_json to_json(const FactorizedDensity& density);
nlohmann::ordered_json to_json(const AnyDensity& density);

/// Canonical text form: two-space indent, trailing newline.
std::string dump_document(const AnyDensity& density);

/// Hypothesis-table view of any document kind.
LabeledDensity as_labeled(const AnyDensity& density);

/// validate() dispatched on the alternative.
std::vector<std::string> validate(const AnyDensity& density);

}  // namespace lmo
