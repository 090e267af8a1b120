#pragma once

#include "polyseq/polynomial.hpp"
#include "polyseq/sequence.hpp"

#include <string>
#include <vector>

namespace polyseq {

struct DecompositionPart {
    Structure component;  // connected
    IntPolynomial multiplicity;
    std::string key;      // canonical key of the component
};

struct Decomposition {
    std::vector<DecompositionPart> parts;
    IntPolynomial size;              // |A_n|
    std::vector<long long> samples;  // n = 0..d+1
    std::vector<long long> verified; // held-out indices
};

struct DecomposeOptions {
    std::size_t degree_cap = 4;   // largest vertex degree allowed in any generated term
    std::size_t max_size_degree = 8;
    std::size_t held_out = 3;
    GenerateOptions generate;
};

// A_n = sum_i P_i(n) F_i. Samples n = 0..d+1 where d is the degree of |A_n|,
// interpolates each component's multiplicity and confirms the census on
// `held_out` further indices. Throws UnboundedDegree when a term with
// n <= max(d + 1 + held_out, degree_cap + 2) exceeds the cap, CapExceeded when d > max_size_degree, VerificationFailed
// when a held-out census disagrees.
Decomposition bounded_decompose(SpecPtr spec, const DecomposeOptions& options = {});

// Disjoint union of P_i(n) copies of each F_i.
Structure reassemble(const Decomposition& d, long long n);

} // namespace polyseq
