#pragma once

#include "polyseq/structure.hpp"

#include <string>

namespace polyseq {

struct CanonicalOptions {
    std::size_t max_vertices = 12;
};

// Isomorphism-invariant byte key: equal keys iff the structures are isomorphic
// with the identity map on symbols. Throws CapExceeded above max_vertices.
std::string canonical_form(const Structure& s, const CanonicalOptions& options = {});

// Convenience wrapper with a generous cap, for gallery-sized inputs.
bool isomorphic(const Structure& a, const Structure& b, std::size_t cap = 100000);

} // namespace polyseq
