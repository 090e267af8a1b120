#pragma once

#include "polyseq/evaluate.hpp"
#include "polyseq/formula.hpp"
#include "polyseq/polynomial.hpp"
#include "polyseq/structure.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polyseq {

// (p, rho_0, rho_1..rho_q): target symbol i is defined by rhos[i] on p * arity
// free variables, read as arity consecutive blocks of p.
struct InterpretationScheme {
    std::string name;
    std::size_t p = 1;
    Signature source;
    Signature target;
    Formula rho0;
    std::vector<Formula> rhos;

    bool quantifier_free() const;
};

// Checks exponents, free-variable counts and that every formula is bound
// against `source`. Throws ArityMismatch / InvalidArgument.
void validate_scheme(const InterpretationScheme& scheme);

enum class LoopPolicy { Drop, Keep };

// Graph on iota-tuples; rho must be symmetric, which is certified per input.
struct GraphicalScheme {
    std::string name;
    std::size_t p = 1;
    Signature source;
    Formula iota;
    Formula rho;
    LoopPolicy loops = LoopPolicy::Drop;

    bool quantifier_free() const;
};

void validate_scheme(const GraphicalScheme& scheme);

// Same graph as a plain scheme over {E:2}; loop dropping becomes a conjunct
// saying the two tuples differ.
InterpretationScheme to_interpretation(const GraphicalScheme& g);

struct ClassCertificate {
    Formula eta;       // p free variables
    IntPolynomial size;
};

// Vertices are varpi-classes of rho0-tuples.
struct QuotientScheme {
    InterpretationScheme base;
    Formula varpi;  // 2p free variables
    std::vector<ClassCertificate> certificates;

    bool quantifier_free() const;
};

void validate_scheme(const QuotientScheme& scheme);

using Scheme = std::variant<InterpretationScheme, GraphicalScheme, QuotientScheme>;

const std::string& scheme_name(const Scheme& s);
std::size_t scheme_exponent(const Scheme& s);
const Signature& scheme_source(const Scheme& s);
Signature scheme_target(const Scheme& s);
bool scheme_quantifier_free(const Scheme& s);

// Cap on the number of rho0-tuples an interpretation may produce: 10^6
// unless POLYSEQ_TUPLE_BUDGET is set.
std::uint64_t default_tuple_budget();

struct ApplyOptions {
    std::uint64_t tuple_budget = default_tuple_budget();
    EvalOptions eval;
    // Quotients: index n at which certificate sizes Q_i(n) are checked.
    std::optional<long long> index;
    // Quotients: number of sampled compatibility checks and their seed.
    std::size_t compatibility_samples = 200;
    std::uint64_t seed = 0x5eed;
};

// Output vertex i stands for tuples[i] (quotients: the least tuple of class i).
struct InterpretedStructure {
    Structure structure;
    std::vector<Tuple> tuples;
    std::vector<std::size_t> class_sizes;      // quotients only
    std::vector<std::size_t> class_certificate;  // quotients only: index of eta
};

InterpretedStructure apply_interpretation(const InterpretationScheme& scheme, const Structure& a,
                                          const ApplyOptions& options = {});
InterpretedStructure apply_graphical(const GraphicalScheme& scheme, const Structure& a,
                                     const ApplyOptions& options = {});
InterpretedStructure apply_quotient(const QuotientScheme& scheme, const Structure& a,
                                    const ApplyOptions& options = {});
InterpretedStructure apply_scheme(const Scheme& scheme, const Structure& a,
                                  const ApplyOptions& options = {});

// M_I with rho0 guards on the free variable blocks. Free variable x of phi
// becomes x_1..x_p. Throws UnknownSymbol / ArityMismatch for phi symbols that
// the target does not carry.
Formula translate_formula(const InterpretationScheme& scheme, const Formula& phi);

// Scheme equal to applying `first` and then `second`: exponent p1 * p2 and
// apply(result, A) == apply(second, apply(first, A)).
InterpretationScheme compose(const InterpretationScheme& first, const InterpretationScheme& second);

// Lemma-style merge: on strong sums of inputs marked by marks[i] the result
// equals the strong sum of the individual images. Symbol names follow
// strong_sum_signature, folded left to right.
InterpretationScheme merge_marked_schemes(const std::vector<InterpretationScheme>& schemes,
                                          const std::vector<std::string>& marks);

// ---- built-in schemes ---------------------------------------------------

// Variable names x1..xp, y1..yp, z1..zp, then w<b>_<i> for later blocks.
std::vector<std::string> block_vars(std::size_t p, std::size_t blocks);

InterpretationScheme identity_scheme(const Signature& sig);
// Adds unary `mark` holding everywhere.
InterpretationScheme mark_scheme(const Signature& sig, const std::string& mark);
GraphicalScheme complement_scheme();
// Underlying graph of a binary relation `symbol` of `sig`.
GraphicalScheme forget_orientation_scheme(const Signature& sig, const std::string& symbol);

enum class ProductKind { DisjointUnion, Direct, Cartesian, Strong, Lexicographic };
const char* product_name(ProductKind kind);
std::optional<ProductKind> parse_product(const std::string& text);
// Over Mark(A) + Mark(B), i.e. signature {E:2, U:1, E':2, U':1}.
Signature product_source_signature();
GraphicalScheme product_scheme(ProductKind kind);

// Graph sources {E:2}: line graph (p = 2 over ordered edges) and 1-subdivision.
QuotientScheme line_graph_scheme();
QuotientScheme subdivision_scheme();
// k-cliques of a graph, adjacent when the intersection size lies in `d`.
QuotientScheme clique_intersection_scheme(std::size_t k, const std::vector<std::size_t>& d);

// Gallery constructions. Sources are basic signatures (see basic_signature).
GraphicalScheme crown_scheme();  // over beta_{1,2}
// k-subsets of the order, adjacent when the intersection size lies in d; beta_{1,0}.
GraphicalScheme johnson_scheme(std::size_t k, const std::vector<std::size_t>& d);
// Twin blow-up of the graph ([k], edges); beta_{k,0}.
GraphicalScheme vertex_blowup_scheme(std::size_t k,
                                     const std::vector<std::pair<Vertex, Vertex>>& edges);
// Rooted tree on 0..k-1 with root 0; parents[v] for v >= 1 (parents[0] ignored); beta_{k,0}.
GraphicalScheme tree_blowup_scheme(const std::vector<std::size_t>& parents);
// Union of stars of orders 1..N over T_N. The literal variant has the vertex
// formula S1(y,x), under which no edge formula disjunct can hold.
GraphicalScheme star_union_scheme(bool repaired);
GraphicalScheme half_graph_scheme();  // over beta_{1,2}
// Crossing chords x1 < y1 < x2 < y2; the literal edge formula is one-sided.
GraphicalScheme chord_scheme(bool symmetrized);

using SchemeParams = std::map<std::string, std::string>;

// Named lookup used by scheme files and sequence specs. Throws UnknownEntry.
Scheme builtin_scheme(const std::string& name, const SchemeParams& params = {});
std::vector<std::string> builtin_scheme_names();

} // namespace polyseq
