#pragma once

#include "polyseq/bigint.hpp"
#include "polyseq/structure.hpp"

#include <functional>
#include <span>
#include <vector>

namespace polyseq {

// Set partition of {0..n-1}; blocks sorted internally and by minimum element.
struct Partition {
    std::vector<std::vector<Vertex>> blocks;

    std::size_t element_count() const;
    // block_of()[v] is the index of the block containing v.
    std::vector<std::uint32_t> block_of() const;

    static Partition discrete(std::size_t n);
    // Restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
    static Partition from_rgs(std::span<const std::uint32_t> rgs);

    bool operator==(const Partition&) const = default;
};

// Throws InvalidArgument unless `theta` partitions {0..n-1} in canonical order.
void validate_partition(const Partition& theta, std::size_t n);

// All Bell(n) partitions, generated lazily via restricted growth strings.
void for_each_partition(std::size_t n, const std::function<void(const Partition&)>& visit);

// Product over blocks I of (-1)^{|I|-1} (|I|-1)!.
BigInt mobius(const Partition& theta);

// One vertex per block; a tuple holds iff some preimage tuple holds.
Structure quotient(const Structure& pattern, const Partition& theta);

} // namespace polyseq
