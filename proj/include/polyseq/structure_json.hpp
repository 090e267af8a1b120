#pragma once

#include "polyseq/structure.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace polyseq {

using Json = nlohmann::ordered_json;

// Carried by every JSON report the library emits.
inline constexpr int kReportSchemaVersion = 1;

Json structure_to_json_value(const Structure& s);
Structure structure_from_json_value(const Json& j);

// Compact, canonical key order, tuples sorted.
std::string structure_to_json(const Structure& s);
// Malformed input raises ParseError with line/column.
Structure structure_from_json(std::string_view text);

Json parse_json_text(std::string_view text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Structure load_structure(const std::string& path);
void save_structure(const std::string& path, const Structure& s);

} // namespace polyseq
