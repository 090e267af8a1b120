#include "polyseq/error.hpp"
#include "polyseq/structure.hpp"

#include <algorithm>
#include <map>

namespace polyseq {

namespace {

// Per-vertex profile: occurrence counts per (symbol, position).
std::vector<std::vector<std::size_t>> profiles(const Structure& s,
                                               const std::vector<std::size_t>& order) {
    std::vector<std::size_t> offset(order.size() + 1, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        offset[i + 1] = offset[i] + static_cast<std::size_t>(s.signature()[order[i]].arity);
    }
    std::vector<std::vector<std::size_t>> prof(s.domain_size(),
                                               std::vector<std::size_t>(offset.back(), 0));
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& t : s.relation(order[i])) {
            for (std::size_t p = 0; p < t.size(); ++p) ++prof[t[p]][offset[i] + p];
        }
    }
    return prof;
}

class VertexMatcher {
public:
    // `map_b[i]` is the symbol of b playing the role of a's symbol i.
    VertexMatcher(const Structure& a, const Structure& b, std::vector<std::size_t> map_b)
        : a_(a), b_(b), map_b_(std::move(map_b)) {
        std::vector<std::size_t> ident(a.symbol_count());
        for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
        prof_a_ = profiles(a, ident);
        prof_b_ = profiles(b, map_b_);
        touching_.resize(a.domain_size());
        for (std::size_t s = 0; s < a.symbol_count(); ++s) {
            const auto& rel = a.relation(s);
            for (std::size_t t = 0; t < rel.size(); ++t) {
                for (Vertex v : rel[t]) touching_[v].emplace_back(s, t);
            }
        }
        // Most constrained vertices first.
        order_.resize(a.domain_size());
        for (Vertex v = 0; v < a.domain_size(); ++v) order_[v] = v;
        std::stable_sort(order_.begin(), order_.end(), [&](Vertex x, Vertex y) {
            return touching_[x].size() > touching_[y].size();
        });
        image_.assign(a.domain_size(), kUnset);
        used_.assign(b.domain_size(), false);
    }

    bool run() { return extend(0); }

private:
    static constexpr Vertex kUnset = ~Vertex{0};

    bool consistent(Vertex v) const {
        Tuple mapped;
        for (auto [s, t] : touching_[v]) {
            const auto& tuple = a_.relation(s)[t];
            mapped.clear();
            bool complete = true;
            for (Vertex u : tuple) {
                if (image_[u] == kUnset) {
                    complete = false;
                    break;
                }
                mapped.push_back(image_[u]);
            }
            if (complete && !b_.holds(map_b_[s], mapped)) return false;
        }
        return true;
    }

    bool extend(std::size_t depth) {
        if (depth == order_.size()) return true;
        Vertex v = order_[depth];
        for (Vertex w = 0; w < b_.domain_size(); ++w) {
            if (used_[w] || prof_a_[v] != prof_b_[w]) continue;
            image_[v] = w;
            used_[w] = true;
            if (consistent(v) && extend(depth + 1)) return true;
            used_[w] = false;
            image_[v] = kUnset;
        }
        return false;
    }

    const Structure& a_;
    const Structure& b_;
    std::vector<std::size_t> map_b_;
    std::vector<std::vector<std::size_t>> prof_a_, prof_b_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touching_;
    std::vector<Vertex> order_;
    std::vector<Vertex> image_;
    std::vector<bool> used_;
};

bool try_symbol_maps(const Structure& a, const Structure& b, std::vector<std::size_t>& map_b,
                     std::vector<bool>& taken, std::size_t i) {
    if (i == a.symbol_count()) return VertexMatcher(a, b, map_b).run();
    const auto& sym = a.signature()[i];
    for (std::size_t j = 0; j < b.symbol_count(); ++j) {
        if (taken[j] || b.signature()[j].arity != sym.arity) continue;
        if (b.relation(j).size() != a.relation(i).size()) continue;
        taken[j] = true;
        map_b[i] = j;
        if (try_symbol_maps(a, b, map_b, taken, i + 1)) return true;
        taken[j] = false;
    }
    return false;
}

} // namespace

bool weakly_isomorphic(const Structure& a, const Structure& b, std::size_t cap) {
    if (a.domain_size() > cap || b.domain_size() > cap) {
        throw Error(ErrorCode::CapExceeded, "weak isomorphism test limited to " +
                                                std::to_string(cap) + " vertices");
    }
    if (a.domain_size() != b.domain_size() || a.symbol_count() != b.symbol_count()) return false;
    std::map<int, int> arities;
    for (const auto& s : a.signature().symbols()) ++arities[s.arity];
    for (const auto& s : b.signature().symbols()) --arities[s.arity];
    for (auto [arity, diff] : arities) {
        if (diff != 0) return false;
    }
    std::vector<std::size_t> map_b(a.symbol_count());
    std::vector<bool> taken(b.symbol_count(), false);
    return try_symbol_maps(a, b, map_b, taken, 0);
}

} // namespace polyseq
