#pragma once

#include "polyseq/interpretation.hpp"
#include "polyseq/polynomial.hpp"
#include "polyseq/structure.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polyseq {

struct SequenceSpec;
using SpecPtr = std::shared_ptr<const SequenceSpec>;

// B_{k,l} with tournament orders Q_1(n)..Q_k(n).
struct BasicSpec {
    std::size_t k = 0;
    std::size_t l = 0;
    std::vector<IntPolynomial> orders;
};

// T<A>_n over blocks A_1..A_{L(n)}, with S and U added (renamed on clash).
struct OrderedSumSpec {
    SpecPtr inner;
    IntPolynomial length;
};

// How an interpreted node's scheme was named, so that it can be written back.
struct SchemeOrigin {
    std::string builtin;
    SchemeParams params;
};

struct InterpretedSpec {
    Scheme scheme;
    SpecPtr inner;
    std::optional<SchemeOrigin> origin;
};

struct StrongSumSpec {
    std::vector<SpecPtr> parts;
};

struct CopiesSpec {
    IntPolynomial m;
    SpecPtr inner;
};

// n -> inner term at P(n).
struct ReindexedSpec {
    IntPolynomial P;
    SpecPtr inner;
};

// Named generators: constant (fixed structure), complete, empty, cycle, path, tournament.
struct CustomSpec {
    std::string name;
    std::optional<Structure> structure;  // constant only
};

struct SequenceSpec {
    std::variant<BasicSpec, OrderedSumSpec, InterpretedSpec, StrongSumSpec, CopiesSpec,
                 ReindexedSpec, CustomSpec>
        node;
};

// Constructors validate their arguments (Basic orders must be non-constant,
// interpreted sources must match the inner signature, ...).
SpecPtr make_basic(std::size_t k, std::size_t l, std::vector<IntPolynomial> orders);
SpecPtr make_ordered_sum(SpecPtr inner, IntPolynomial length = IntPolynomial::variable());
SpecPtr make_interpreted(Scheme scheme, SpecPtr inner, std::optional<SchemeOrigin> origin = {});
SpecPtr make_builtin_interpreted(const std::string& name, const SchemeParams& params, SpecPtr inner);
SpecPtr make_strong_sum(std::vector<SpecPtr> parts);
SpecPtr make_copies(IntPolynomial m, SpecPtr inner);
SpecPtr make_reindexed(IntPolynomial P, SpecPtr inner);
SpecPtr make_custom(const std::string& name);
SpecPtr make_constant(Structure s);
// Interpreted node adding a unary mark that holds everywhere.
SpecPtr make_mark(SpecPtr inner, const std::string& mark);

std::vector<std::string> custom_generator_names();

// Static signature of every term.
Signature spec_signature(const SequenceSpec& spec);
// True if some node interprets through a quotient scheme.
bool spec_has_quotient(const SequenceSpec& spec);
// Degree bound D with |A_n| <= poly of degree D, composed along the tree:
// Basic max deg Q_i; OrderedSum (D+1) deg L; Interpreted p D (quotients also
// times the largest certificate degree); StrongSum max; Copies deg m + D;
// Reindexed D deg P; Custom 0 (constant) or 1.
std::size_t spec_degree(const SequenceSpec& spec);
std::string spec_summary(const SequenceSpec& spec);

struct GenerateOptions {
    ApplyOptions apply;
};

// Throws NegativeValue when a polynomial is negative at the requested index
// and BudgetExceeded from the interpretation step.
Structure generate_term(const SequenceSpec& spec, long long n, const GenerateOptions& options = {});

// Interpreted(product scheme, Mark(a) (+) Mark(b)); both inputs must be graph sequences.
SpecPtr product_sequences(ProductKind kind, SpecPtr a, SpecPtr b);

} // namespace polyseq
