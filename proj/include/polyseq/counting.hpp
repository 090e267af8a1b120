#pragma once

#include "polyseq/bigint.hpp"
#include "polyseq/relation_index.hpp"
#include "polyseq/structure.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace polyseq {

enum class CountMode { Hom, Inj, Ind };

const char* mode_name(CountMode mode);
std::optional<CountMode> parse_mode(const std::string& text);

// 10^10 search nodes unless POLYSEQ_NODE_BUDGET is set.
std::uint64_t default_node_budget();

struct CountOptions {
    std::uint64_t node_budget = default_node_budget();
};

struct CountReport {
    BigInt value;
    CountMode mode = CountMode::Hom;
    std::uint64_t nodes_explored = 0;
};

// Symbols are matched by name. A pattern symbol absent from the target (or with
// another arity) is an error unless its relation is empty. For ind, target
// symbols absent from the pattern count as empty pattern relations.
CountReport count(CountMode mode, const Structure& pattern, const RelationIndex& target,
                  const CountOptions& options = {});
CountReport count(CountMode mode, const Structure& pattern, const Structure& target,
                  const CountOptions& options = {});

CountReport hom_count(const Structure& pattern, const Structure& target,
                      const CountOptions& options = {});
CountReport inj_count(const Structure& pattern, const Structure& target,
                      const CountOptions& options = {});
CountReport ind_count(const Structure& pattern, const Structure& target,
                      const CountOptions& options = {});

} // namespace polyseq
