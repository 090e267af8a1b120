#pragma once

#include "polyseq/structure.hpp"

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

namespace polyseq {

// Constant-time membership and adjacency lookups over a fixed structure.
// Binary relations on up to kMatrixLimit vertices use a bit matrix.
class RelationIndex {
public:
    static constexpr std::size_t kMatrixLimit = 4096;

    explicit RelationIndex(const Structure& s);

    const Structure& structure() const { return *s_; }

    bool contains(std::size_t symbol, std::span<const Vertex> tuple) const;
    bool contains1(std::size_t symbol, Vertex v) const { return unary_[symbol][v]; }
    bool contains2(std::size_t symbol, Vertex a, Vertex b) const;

    // Tuples of `symbol` with `v` at position `pos` (indices into relation(symbol)).
    const std::vector<std::uint32_t>& incident(std::size_t symbol, std::size_t pos,
                                               Vertex v) const {
        return incident_[symbol][pos][v];
    }

private:

    const Structure* s_;
    std::size_t n_;
    std::vector<std::vector<bool>> unary_;
    std::vector<std::vector<std::uint64_t>> matrix_;
    std::vector<std::unordered_set<std::uint64_t>> hashed_;
    std::vector<bool> encodable_;
    std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> incident_;
};

} // namespace polyseq
