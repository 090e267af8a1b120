#pragma once

#include "polyseq/sequence.hpp"
#include "polyseq/structure_json.hpp"

#include <string>
#include <string_view>

namespace polyseq {

// JSON tree mirroring SequenceSpec, e.g.
//   {"type": "interpreted", "scheme": {"builtin": "crown", "params": {}},
//    "inner": {"type": "basic", "k": 1, "l": 2, "orders": ["n"]}}
// Node types: basic, orderedSum, interpreted, strongSum, copies, reindexed,
// custom, and product (shorthand for product_sequences). Schemes are given as
// {"builtin", "params"}, {"text"} or {"file"}; "mark" is a builtin taking
// {"name"}. Polynomials are strings such as "n^2" or "2*C(n,2) + 1".
Json sequence_to_json_value(const SequenceSpec& spec);
// Relative scheme files resolve against `base_dir`.
SpecPtr sequence_from_json_value(const Json& j, const std::string& base_dir = ".");

std::string sequence_to_json(const SequenceSpec& spec);
SpecPtr sequence_from_json(std::string_view text, const std::string& base_dir = ".");

SpecPtr load_sequence(const std::string& path);
void save_sequence(const std::string& path, const SequenceSpec& spec);

} // namespace polyseq
