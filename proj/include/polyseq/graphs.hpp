#pragma once

#include "polyseq/structure.hpp"

#include <utility>
#include <vector>

namespace polyseq {

// Graphs are structures over {E:2} with E symmetric and loopless.

Structure graph_from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges);
Structure complete_graph(std::size_t n);
Structure empty_graph(std::size_t n);
// C_n for n >= 3; n = 0, 1, 2 give the empty graph, K_1 and K_2.
Structure cycle_graph(std::size_t n);
Structure path_graph(std::size_t n);
Structure complete_bipartite(std::size_t a, std::size_t b);

bool is_graph(const Structure& s);
bool is_symmetric(const Structure& s, std::size_t symbol);
std::size_t edge_count(const Structure& graph);
// Maximum Gaifman degree (number of distinct neighbours).
std::size_t max_degree(const Structure& s);
std::vector<std::vector<Vertex>> adjacency_lists(const Structure& graph);

} // namespace polyseq
