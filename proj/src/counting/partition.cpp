#include "polyseq/partition.hpp"

#include "polyseq/error.hpp"

#include <algorithm>

namespace polyseq {

std::size_t Partition::element_count() const {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.size();
    return n;
}

std::vector<std::uint32_t> Partition::block_of() const {
    std::vector<std::uint32_t> out(element_count(), 0);
    for (std::uint32_t i = 0; i < blocks.size(); ++i) {
        for (Vertex v : blocks[i]) out.at(v) = i;
    }
    return out;
}

Partition Partition::discrete(std::size_t n) {
    Partition p;
    for (Vertex v = 0; v < n; ++v) p.blocks.push_back({v});
    return p;
}

Partition Partition::from_rgs(std::span<const std::uint32_t> rgs) {
    Partition p;
    for (Vertex v = 0; v < rgs.size(); ++v) {
        if (rgs[v] > p.blocks.size()) {
            throw Error(ErrorCode::InvalidArgument, "not a restricted growth string");
        }
        if (rgs[v] == p.blocks.size()) p.blocks.emplace_back();
        p.blocks[rgs[v]].push_back(v);
    }
    return p;
}

void validate_partition(const Partition& theta, std::size_t n) {
    std::vector<bool> seen(n, false);
    Vertex last_min = 0;
    for (std::size_t i = 0; i < theta.blocks.size(); ++i) {
        const auto& b = theta.blocks[i];
        if (b.empty()) throw Error(ErrorCode::InvalidArgument, "invalid partition: empty block");
        if (!std::is_sorted(b.begin(), b.end())) {
            throw Error(ErrorCode::InvalidArgument, "invalid partition: unsorted block");
        }
        if (i > 0 && b.front() <= last_min) {
            throw Error(ErrorCode::InvalidArgument,
                        "invalid partition: blocks not ordered by minimum");
        }
        last_min = b.front();
        for (Vertex v : b) {
            if (v >= n || seen[v]) {
                throw Error(ErrorCode::InvalidArgument,
                            "invalid partition: element " + std::to_string(v) +
                                " repeated or out of range");
            }
            seen[v] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error(ErrorCode::InvalidArgument, "invalid partition: blocks do not cover domain");
    }
}

void for_each_partition(std::size_t n, const std::function<void(const Partition&)>& visit) {
    if (n == 0) {
        visit(Partition{});
        return;
    }
    std::vector<std::uint32_t> rgs(n, 0), maxes(n, 0);
    while (true) {
        visit(Partition::from_rgs(rgs));
        // Next restricted growth string in lexicographic order.
        std::size_t i = n - 1;
        while (i > 0 && rgs[i] == maxes[i - 1] + 1) --i;
        if (i == 0) return;
        ++rgs[i];
        maxes[i] = std::max(maxes[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxes[j] = maxes[i];
        }
    }
}

BigInt mobius(const Partition& theta) {
    BigInt value = 1;
    for (const auto& b : theta.blocks) {
        const std::size_t k = b.size();
        for (std::size_t i = 2; i < k; ++i) value *= i;
        if (k % 2 == 0) value = -value;
    }
    return value;
}

Structure quotient(const Structure& pattern, const Partition& theta) {
    validate_partition(theta, pattern.domain_size());
    const auto block = theta.block_of();
    std::vector<std::vector<Tuple>> rels(pattern.symbol_count());
    for (std::size_t s = 0; s < pattern.symbol_count(); ++s) {
        for (const auto& t : pattern.relation(s)) {
            Tuple m(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) m[i] = block[t[i]];
            rels[s].push_back(std::move(m));
        }
    }
    return Structure(pattern.signature(), theta.blocks.size(), std::move(rels));
}

} // namespace polyseq
