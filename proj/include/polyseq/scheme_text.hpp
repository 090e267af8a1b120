#pragma once

#include "polyseq/interpretation.hpp"

#include <string>
#include <string_view>

namespace polyseq {

// Text format:
//   interpretation NAME {
//     source: basic(k=1,l=2) | graph | sig{E:2, U:1};
//     target: graph | sig{...};
//     p: 2;
//     domain(x1,x2): FORMULA;
//     R(x1,x2; y1,y2): FORMULA;          one per target relation
//     equiv(x1,x2; y1,y2): FORMULA;      optional, makes a quotient
//     class c1: eta=FORMULA, size=POLY;  optional certificates
//   }
//   graphical NAME { source: ...; p: ...; domain(...): ...; edge(...; ...): ...; loops: drop|keep; }
// '#' starts a comment. Errors carry 1-based line and column.
Scheme parse_scheme_text(std::string_view text);
// Canonical rendering; parse_scheme_text(scheme_to_text(s)) prints back identically.
std::string scheme_to_text(const Scheme& scheme);

Scheme load_scheme(const std::string& path);
void save_scheme(const std::string& path, const Scheme& scheme);

// "graph", "basic(k=K,l=L)" or "sig{NAME:ARITY, ...}".
Signature parse_signature_text(std::string_view text);
std::string signature_to_text(const Signature& sig);

} // namespace polyseq
