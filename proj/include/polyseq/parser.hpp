#pragma once

#include "polyseq/formula.hpp"

#include <optional>
#include <string_view>

namespace polyseq {

// Where the text starts inside a larger document (1-based), for diagnostics.
struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;
};

// Grammar:
//   formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" or)* ;
//   or := and ("|" and)* ; and := unary ("&" unary)* ;
//   unary := "!" unary | "(" formula ")" | atom ;
//   atom := IDENT "(" var ("," var)* ")" | var "=" var | "true" | "false"
//         | ("exists"|"forall") var "(" formula ")" ;
// Free variables follow `declared` when given (extra names are errors),
// otherwise first-occurrence order.
Formula parse_formula(std::string_view text, const Signature& signature,
                      const std::optional<std::vector<std::string>>& declared = std::nullopt,
                      SourcePos origin = {});

} // namespace polyseq
