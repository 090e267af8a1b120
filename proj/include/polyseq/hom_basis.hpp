#pragma once

#include "polyseq/bigint.hpp"
#include "polyseq/formula.hpp"
#include "polyseq/structure.hpp"

#include <string>
#include <vector>

namespace polyseq {

struct HomTerm {
    BigInt coefficient;
    Structure pattern;
    std::string key;  // canonical_form(pattern)
};

// |phi(A)| = sum of coefficient * hom(pattern, A). Terms sorted by key,
// coefficients nonzero, patterns pairwise non-isomorphic.
struct HomBasis {
    std::vector<HomTerm> terms;

    // Target must carry every symbol of the patterns (matched by name).
    BigInt evaluate(const Structure& target) const;
    std::string to_string() const;
};

struct HomBasisOptions {
    // Distinct atoms per variable-equality class; 2^atoms subsets are visited.
    std::size_t max_atoms = 16;
};

// Throws NotQuantifierFree, InvalidArgument (no free variables), BudgetExceeded.
HomBasis qf_to_hom_basis(const Formula& phi, const HomBasisOptions& options = {});

} // namespace polyseq
