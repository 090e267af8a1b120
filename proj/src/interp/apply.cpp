#include "polyseq/interpretation.hpp"

#include "polyseq/error.hpp"
#include "polyseq/graphs.hpp"
#include "polyseq/relation_index.hpp"

#include <algorithm>
#include <sstream>

namespace polyseq {

namespace {

std::string tuple_text(const Tuple& t) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ')';
    return out.str();
}

} // namespace

namespace detail {

std::vector<Tuple> satisfying_tuples(const Formula& f, const RelationIndex& index,
                                     const ApplyOptions& options) {
    // The search itself is bounded by the evaluator's assignment budget.
    Evaluator ev(f, index);
    std::vector<Tuple> out;
    for_each_satisfying(
        ev,
        [&](std::span<const Vertex> t) {
            if (out.size() >= options.tuple_budget) {
                throw Error(ErrorCode::BudgetExceeded,
                            "interpretation domain exceeds the tuple budget of " +
                                std::to_string(options.tuple_budget));
            }
            out.emplace_back(t.begin(), t.end());
        },
        options.eval);
    return out;
}

std::vector<Tuple> relation_on(const Formula& f, const RelationIndex& index,
                               const std::vector<Tuple>& domain, std::size_t arity,
                               const ApplyOptions& options) {
    Evaluator ev(f, index);
    std::vector<Tuple> out;
    for_each_block_assignment(
        ev, domain, arity,
        [&](std::span<const std::uint32_t> idx) { out.emplace_back(idx.begin(), idx.end()); },
        options.eval);
    return out;
}

} // namespace detail

InterpretedStructure apply_interpretation(const InterpretationScheme& scheme, const Structure& a,
                                          const ApplyOptions& options) {
    validate_scheme(scheme);
    RelationIndex index(a);
    InterpretedStructure out;
    out.tuples = detail::satisfying_tuples(scheme.rho0, index, options);
    std::vector<std::vector<Tuple>> rels(scheme.target.size());
    for (std::size_t i = 0; i < scheme.target.size(); ++i) {
        rels[i] = detail::relation_on(scheme.rhos[i], index, out.tuples,
                                      static_cast<std::size_t>(scheme.target[i].arity), options);
    }
    out.structure = Structure(scheme.target, out.tuples.size(), std::move(rels));
    return out;
}

InterpretedStructure apply_graphical(const GraphicalScheme& scheme, const Structure& a,
                                     const ApplyOptions& options) {
    validate_scheme(scheme);
    RelationIndex index(a);
    InterpretedStructure out;
    out.tuples = detail::satisfying_tuples(scheme.iota, index, options);
    auto pairs = detail::relation_on(scheme.rho, index, out.tuples, 2, options);
    // Emitted in lexicographic order, so membership is a binary search.
    for (const auto& e : pairs) {
        Tuple rev{e[1], e[0]};
        if (!std::binary_search(pairs.begin(), pairs.end(), rev)) {
            throw Error(ErrorCode::SymmetryViolation,
                        "edge formula of '" + scheme.name + "' is not symmetric: it holds on u = " +
                            tuple_text(out.tuples[e[0]]) + ", v = " + tuple_text(out.tuples[e[1]]) +
                            " but not on v, u");
        }
    }
    if (scheme.loops == LoopPolicy::Drop) {
        std::erase_if(pairs, [](const Tuple& e) { return e[0] == e[1]; });
    }
    out.structure = Structure(Signature::graph(), out.tuples.size(), {std::move(pairs)});
    return out;
}

InterpretedStructure apply_scheme(const Scheme& scheme, const Structure& a,
                                  const ApplyOptions& options) {
    return std::visit(
        [&](const auto& s) -> InterpretedStructure {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, InterpretationScheme>) {
                return apply_interpretation(s, a, options);
            } else if constexpr (std::is_same_v<T, GraphicalScheme>) {
                return apply_graphical(s, a, options);
            } else {
                return apply_quotient(s, a, options);
            }
        },
        scheme);
}

} // namespace polyseq
