#include "arw/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace arw {

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& nb : adj) total += nb.size();
  return total / 2;
}

namespace {

void check_connected(const Graph& g) {
  std::vector<char> seen(g.k, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : g.adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  if (reached != g.k) throw std::invalid_argument("graph is not connected");
}

}  // namespace

Graph make_graph(int k, const std::vector<std::pair<int, int>>& edges,
                 bool collapse_duplicates) {
  if (k < 1) throw std::invalid_argument("vertex count must be at least 1");
  Graph g;
  g.k = k;
  g.adj.assign(k, {});
  for (auto [i, j] : edges) {
    if (i < 0 || i >= k || j < 0 || j >= k)
      throw std::invalid_argument("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loop is not allowed");
    g.adj[i].push_back(j);
    g.adj[j].push_back(i);
  }
  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    auto dup = std::adjacent_find(nb.begin(), nb.end());
    if (dup != nb.end()) {
      if (!collapse_duplicates) throw std::invalid_argument("duplicate edge");
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
  }
  check_connected(g);
  return g;
}

Graph load_graph(const std::string& edge_list_text, bool collapse_duplicates) {
  std::istringstream in(edge_list_text);
  std::string line;
  int k = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (k < 0) {
      if (!(ls >> k) || k < 1) throw std::invalid_argument("bad header line: " + line);
      std::string rest;
      if (ls >> rest) throw std::invalid_argument("bad header line: " + line);
      continue;
    }
    int i, j;
    if (!(ls >> i >> j)) throw std::invalid_argument("malformed edge line: " + line);
    std::string rest;
    if (ls >> rest) throw std::invalid_argument("malformed edge line: " + line);
    edges.emplace_back(i, j);
  }
  if (k < 0) throw std::invalid_argument("missing header line");
  return make_graph(k, edges, collapse_duplicates);
}

Graph complete_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.emplace_back(i, j);
  return make_graph(k, edges);
}

Graph path_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  return make_graph(k, edges);
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return make_graph(rows * cols, edges);
}

Graph parse_graph_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("graph spec must look like kind:args, got: " + spec);
  std::string kind = spec.substr(0, colon);
  std::string args = spec.substr(colon + 1);
  auto parse_int = [](const std::string& s) {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
    return v;
  };
  if (kind == "complete") return complete_graph(parse_int(args));
  if (kind == "path") return path_graph(parse_int(args));
  if (kind == "grid") {
    auto x = args.find('x');
    if (x == std::string::npos) throw std::invalid_argument("grid spec needs RxC: " + spec);
    return grid_graph(parse_int(args.substr(0, x)), parse_int(args.substr(x + 1)));
  }
  if (kind == "file") {
    std::ifstream f(args);
    if (!f) throw std::invalid_argument("cannot open graph file: " + args);
    std::ostringstream buf;
    buf << f.rdbuf();
    return load_graph(buf.str());
  }
  throw std::invalid_argument("unknown graph kind: " + kind);
}

std::vector<int> distances_from(const Graph& g, int u) {
  if (u < 0 || u >= g.k) throw std::invalid_argument("vertex out of range");
  std::vector<int> dist(g.k, -1);
  std::queue<int> frontier;
  dist[u] = 0;
  frontier.push(u);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : g.adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  std::vector<std::vector<int>> d(g.k);
  for (int u = 0; u < g.k; ++u) d[u] = distances_from(g, u);
  return d;
}

int diameter(const Graph& g) {
  int best = 0;
  for (int u = 0; u < g.k; ++u) {
    auto d = distances_from(g, u);
    best = std::max(best, *std::max_element(d.begin(), d.end()));
  }
  return best;
}

int max_degree(const Graph& g) {
  int best = 0;
  for (int v = 0; v < g.k; ++v) best = std::max(best, g.degree(v));
  return best;
}

}  // namespace arw
