#pragma once

#include "polyseq/bigint.hpp"
#include "polyseq/formula.hpp"
#include "polyseq/relation_index.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>

namespace polyseq {

enum class Tri : std::uint8_t { False, True, Unknown };

// 10^8 unless POLYSEQ_ASSIGNMENT_BUDGET is set.
std::uint64_t default_assignment_budget();

struct EvalOptions {
    std::uint64_t budget = default_assignment_budget();
};

// Formula compiled against one structure. Symbols are matched by name;
// a missing symbol or differing arity raises SignatureMismatch.
class Evaluator {
public:
    Evaluator(const Formula& phi, const RelationIndex& index);
    Evaluator(const Formula& phi, const Structure& s);
    ~Evaluator();
    Evaluator(Evaluator&&) noexcept;
    Evaluator& operator=(Evaluator&&) = delete;

    std::size_t var_count() const { return var_count_; }
    std::size_t free_count() const { return free_count_; }
    std::size_t domain_size() const { return n_; }

    // `slots` has var_count() entries with the free ones filled in.
    bool eval(std::span<Vertex> slots) const;
    // Three-valued evaluation; `known[i]` marks assigned free slots.
    Tri partial(std::span<Vertex> slots, std::span<const char> known) const;

private:
    struct Flat {
        Op op;
        std::uint32_t symbol;
        std::uint32_t first;   // args or kids offset; bound slot for quantifiers
        std::uint32_t count;
        std::uint32_t uses_first;
        std::uint32_t uses_count;
    };

    std::uint32_t compile(const Node& n, const Formula& phi, const Structure& s,
                          std::vector<std::size_t>& uses_out);
    bool ev(std::uint32_t i, Vertex* slots) const;
    Tri pev(std::uint32_t i, Vertex* slots, const char* known) const;

    std::unique_ptr<RelationIndex> owned_;
    const RelationIndex* index_;
    std::size_t n_ = 0;
    std::size_t var_count_ = 0;
    std::size_t free_count_ = 0;
    std::vector<Flat> nodes_;
    std::vector<std::uint32_t> refs_;
    std::vector<std::uint32_t> uses_;
    std::uint32_t root_ = 0;
};

// Standard semantics; the map must cover every free variable.
bool eval_formula(const Formula& phi, const Structure& s,
                  const std::map<std::string, Vertex>& assignment);
bool eval_formula(const Formula& phi, const Structure& s, std::span<const Vertex> free_values);

// |phi(A)|: backtracking over free variables with three-valued pruning.
// The budget bounds explored search nodes; BudgetExceeded past it.
BigInt count_satisfying(const Formula& phi, const Structure& s, const EvalOptions& options = {});
BigInt count_satisfying(const Evaluator& ev, const EvalOptions& options = {});

// Streams satisfying tuples in lexicographic order.
void for_each_satisfying(const Evaluator& ev,
                         const std::function<void(std::span<const Vertex>)>& visit,
                         const EvalOptions& options = {});
void for_each_satisfying(const Formula& phi, const Structure& s,
                         const std::function<void(std::span<const Vertex>)>& visit,
                         const EvalOptions& options = {});

// Free slots are split into `blocks` groups of candidates[i].size() slots each;
// every group ranges over `candidates`. Visits index vectors (one per block)
// whose concatenated tuples satisfy the formula, in lexicographic order.
void for_each_block_assignment(const Evaluator& ev, const std::vector<Tuple>& candidates,
                               std::size_t blocks,
                               const std::function<void(std::span<const std::uint32_t>)>& visit,
                               const EvalOptions& options = {});

} // namespace polyseq
