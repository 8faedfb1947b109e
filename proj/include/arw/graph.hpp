#pragma once

#include <string>
#include <utility>
#include <vector>

namespace arw {

// Simple undirected connected graph on vertices 0..k-1. Immutable after
// construction; neighbor lists are kept sorted.
struct Graph {
  int k = 0;
  std::vector<std::vector<int>> adj;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj[v]; }
  bool has_edge(int u, int v) const;
  std::size_t edge_count() const;
};

// Validates simplicity, symmetry and connectivity; throws std::invalid_argument.
Graph make_graph(int k, const std::vector<std::pair<int, int>>& edges,
                 bool collapse_duplicates = false);

// Text format: first line "k", then one "i j" edge per line.
Graph load_graph(const std::string& edge_list_text, bool collapse_duplicates = false);

Graph complete_graph(int k);
Graph path_graph(int k);
Graph grid_graph(int rows, int cols);  // row-major vertex numbering, 4-neighbor edges

// "complete:K" | "path:K" | "grid:RxC" | "file:PATH"
Graph parse_graph_spec(const std::string& spec);

std::vector<int> distances_from(const Graph& g, int u);  // BFS hop counts
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);
int diameter(const Graph& g);
int max_degree(const Graph& g);

}  // namespace arw
