#include "polyseq/graphs.hpp"

#include "polyseq/error.hpp"

#include <algorithm>

namespace polyseq {

Structure graph_from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<std::vector<Tuple>> rels(1);
    for (auto [a, b] : edges) {
        if (a == b) throw Error(ErrorCode::InvalidArgument, "graphs are loopless");
        rels[0].push_back({a, b});
        rels[0].push_back({b, a});
    }
    return Structure(Signature::graph(), n, std::move(rels));
}

Structure complete_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return graph_from_edges(n, edges);
}

Structure empty_graph(std::size_t n) { return Structure(Signature::graph(), n); }

Structure cycle_graph(std::size_t n) {
    if (n < 3) return complete_graph(n);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return graph_from_edges(n, edges);
}

Structure path_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return graph_from_edges(n, edges);
}

Structure complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex i = 0; i < a; ++i) {
        for (Vertex j = 0; j < b; ++j) edges.emplace_back(i, static_cast<Vertex>(a + j));
    }
    return graph_from_edges(a + b, edges);
}

bool is_symmetric(const Structure& s, std::size_t symbol) {
    for (const auto& t : s.relation(symbol)) {
        Tuple r{t[1], t[0]};
        if (!s.holds(symbol, r)) return false;
    }
    return true;
}

bool is_graph(const Structure& s) {
    if (s.symbol_count() != 1 || s.signature()[0] != Symbol{"E", 2}) return false;
    for (const auto& t : s.relation(0)) {
        if (t[0] == t[1]) return false;
    }
    return is_symmetric(s, 0);
}

std::size_t edge_count(const Structure& graph) {
    std::size_t count = 0;
    for (const auto& t : graph.relation(0)) {
        if (t[0] < t[1]) ++count;
    }
    return count;
}

std::size_t max_degree(const Structure& s) {
    std::vector<std::vector<Vertex>> nbrs(s.domain_size());
    for (const auto& rel : s.relations()) {
        for (const auto& t : rel) {
            for (Vertex a : t) {
                for (Vertex b : t) {
                    if (a != b) nbrs[a].push_back(b);
                }
            }
        }
    }
    std::size_t best = 0;
    for (auto& list : nbrs) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        best = std::max(best, list.size());
    }
    return best;
}

std::vector<std::vector<Vertex>> adjacency_lists(const Structure& graph) {
    std::vector<std::vector<Vertex>> adj(graph.domain_size());
    for (const auto& t : graph.relation(0)) adj[t[0]].push_back(t[1]);
    return adj;
}

} // namespace polyseq
