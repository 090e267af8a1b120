#pragma once

#include "polyseq/formula.hpp"

#include <compare>
#include <vector>

namespace polyseq {

// Equality (op == Op::Eq, vars sorted) or relation atom, possibly negated.
struct Literal {
    Op op = Op::Eq;
    std::size_t symbol = 0;
    std::vector<std::size_t> vars;
    bool positive = true;

    auto operator<=>(const Literal&) const = default;
};

// Sorted, duplicate-free, contradiction-free conjunction of literals.
using Clause = std::vector<Literal>;

struct DnfOptions {
    std::size_t max_literals = 100'000;
};

// Negation normal form then distribution. Trivial literals (x = x) vanish,
// contradictory clauses are dropped. Throws NotQuantifierFree / BudgetExceeded.
std::vector<Clause> dnf_clauses(const Formula& phi, const DnfOptions& options = {});
Formula to_dnf(const Formula& phi, const DnfOptions& options = {});

} // namespace polyseq
