#include "polyseq/relation_index.hpp"

#include <limits>

namespace polyseq {

namespace {

bool fits(std::size_t n, int arity) {
    long double cells = 1;
    for (int i = 0; i < arity; ++i) cells *= static_cast<long double>(n == 0 ? 1 : n);
    return cells < static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2);
}

std::uint64_t encode(std::span<const Vertex> t, std::size_t n) {
    std::uint64_t code = 0;
    for (Vertex v : t) code = code * n + v;
    return code;
}

} // namespace

RelationIndex::RelationIndex(const Structure& s)
    : s_(&s), n_(s.domain_size()), unary_(s.symbol_count()), matrix_(s.symbol_count()),
      hashed_(s.symbol_count()), encodable_(s.symbol_count(), false),
      incident_(s.symbol_count()) {
    const auto& sig = s.signature();
    for (std::size_t sym = 0; sym < sig.size(); ++sym) {
        const int arity = sig[sym].arity;
        const auto& rel = s.relation(sym);
        if (arity == 1) {
            unary_[sym].assign(n_, false);
            for (const auto& t : rel) unary_[sym][t[0]] = true;
        } else if (arity == 2 && n_ <= kMatrixLimit) {
            matrix_[sym].assign((n_ * n_ + 63) / 64, 0);
            for (const auto& t : rel) {
                std::size_t bit = std::size_t{t[0]} * n_ + t[1];
                matrix_[sym][bit / 64] |= std::uint64_t{1} << (bit % 64);
            }
        } else if (fits(n_, arity)) {
            encodable_[sym] = true;
            hashed_[sym].reserve(rel.size() * 2);
            for (const auto& t : rel) hashed_[sym].insert(encode(t, n_));
        }
        incident_[sym].assign(static_cast<std::size_t>(arity),
                              std::vector<std::vector<std::uint32_t>>(n_));
        for (std::size_t i = 0; i < rel.size(); ++i) {
            for (std::size_t p = 0; p < rel[i].size(); ++p) {
                incident_[sym][p][rel[i][p]].push_back(static_cast<std::uint32_t>(i));
            }
        }
    }
}

bool RelationIndex::contains2(std::size_t symbol, Vertex a, Vertex b) const {
    if (!matrix_[symbol].empty()) {
        std::size_t bit = std::size_t{a} * n_ + b;
        return (matrix_[symbol][bit / 64] >> (bit % 64)) & 1U;
    }
    Vertex t[2] = {a, b};
    return contains(symbol, t);
}

bool RelationIndex::contains(std::size_t symbol, std::span<const Vertex> tuple) const {
    switch (tuple.size()) {
    case 1:
        return unary_[symbol][tuple[0]];
    case 2:
        if (!matrix_[symbol].empty() || n_ == 0) {
            if (n_ == 0) return false;
            std::size_t bit = std::size_t{tuple[0]} * n_ + tuple[1];
            return (matrix_[symbol][bit / 64] >> (bit % 64)) & 1U;
        }
        break;
    default:
        break;
    }
    if (encodable_[symbol]) return hashed_[symbol].count(encode(tuple, n_)) > 0;
    return s_->holds(symbol, tuple);
}

} // namespace polyseq
