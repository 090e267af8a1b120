#pragma once

#include "polyseq/bigint.hpp"
#include "polyseq/counting.hpp"
#include "polyseq/polynomial.hpp"
#include "polyseq/structure.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polyseq {

struct OrderedSumSymbols {
    std::string s = "S";
    std::string u = "U";
    // "S -> S'" style notes for each renamed symbol.
    std::vector<std::string> renames;
};

// Names the order and mark receive over `inner`; clashing names get ticks.
OrderedSumSymbols ordered_sum_symbols(const Signature& inner);
Signature ordered_sum_signature(const Signature& inner);

// Disjoint union of the blocks (all over `inner`) plus U on every vertex and
// S(x, y) whenever x lies in an earlier block than y.
Structure ordered_sum(const Signature& inner, std::span<const Structure> blocks);

// Sum over 1 <= i_1 < ... < i_k <= n of prod_j values[j][i_j - 1]; each row
// needs at least n entries. Empty `values` gives 1.
BigInt telescoped_sum(const std::vector<std::vector<BigInt>>& values, long long n);
// Same with values[j][i-1] = P_j(i).
BigInt telescoped_inj(std::span<const IntPolynomial> fits, long long n);
// The polynomial Q with Q(n) = telescoped_inj(fits, n) for all n >= 0.
IntPolynomial telescoped_polynomial(std::span<const IntPolynomial> fits);

// Ordered partition F_1..F_k in which S(x, y) holds exactly when x sits in an
// earlier part than y, provided U holds on every vertex. It is unique when it
// exists: two vertices share a part iff S holds in neither direction.
std::optional<std::vector<std::vector<Vertex>>> nice_partition(const Structure& f,
                                                               const OrderedSumSymbols& symbols);

// A_i for i >= 1, over the inner signature.
using BlockSource = std::function<Structure(long long)>;

// Block-product formula over the nice partition, 0 when F is not nice:
// sum over i_1 < ... < i_k of prod_j count(F_j, A_{i_j}), with F_j taken over
// the inner signature. `mode` is Inj for the formula as printed, Ind for the
// induced variant.
BigInt ordered_sum_nice_formula(CountMode mode, const Structure& f, const Signature& inner,
                                const BlockSource& blocks, long long n);

// Exact inj(F, T<A>_n): sums the block-product over every ordered partition
// of F that sends S-pairs strictly forward, keeps inner tuples inside one part
// and has no S inside a part.
BigInt ordered_sum_inj_exact(const Structure& f, const Signature& inner,
                             const BlockSource& blocks, long long n);

} // namespace polyseq
