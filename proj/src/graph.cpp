#include "amen/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "amen/error.hpp"

namespace amen {

Graph Graph::from_edges(int n, std::span<const Edge> edges, EdgeListReport* report) {
  if (n < 0) throw GraphError(GraphError::Code::OutOfRange, n, "negative vertex count");
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n)
      throw GraphError(GraphError::Code::OutOfRange, u, "vertex " + std::to_string(u) + " out of range");
    if (v < 0 || v >= n)
      throw GraphError(GraphError::Code::OutOfRange, v, "vertex " + std::to_string(v) + " out of range");
    if (u == v) throw GraphError(GraphError::Code::SelfLoop, u, "self-loop at vertex " + std::to_string(u));
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  const auto last = std::unique(norm.begin(), norm.end());
  if (report) {
    report->edges_read += edges.size();
    report->duplicates += static_cast<std::size_t>(norm.end() - last);
  }
  norm.erase(last, norm.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : norm) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adj_.resize(norm.size() * 2);
  std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // norm is sorted, so row x receives its smaller neighbors (as v) before its
  // larger ones (as u), each in increasing order.
  for (auto [u, v] : norm) {
    g.adj_[fill[u]++] = v;
    g.adj_[fill[v]++] = u;
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(adj_.size() / 2);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  InducedSubgraph sub;
  sub.to_new.assign(static_cast<std::size_t>(g.order()), -1);
  for (Vertex v : vertices) {
    if (v < 0 || v >= g.order())
      throw GraphError(GraphError::Code::OutOfRange, v, "vertex " + std::to_string(v) + " out of range");
    sub.to_new[v] = 0;
  }
  for (Vertex v = 0; v < g.order(); ++v) {
    if (sub.to_new[v] < 0) continue;
    sub.to_new[v] = static_cast<Vertex>(sub.to_old.size());
    sub.to_old.push_back(v);
  }
  std::vector<Edge> edges;
  for (Vertex u : sub.to_old)
    for (Vertex w : g.neighbors(u))
      if (u < w && sub.to_new[w] >= 0) edges.emplace_back(sub.to_new[u], sub.to_new[w]);
  sub.graph = Graph::from_edges(static_cast<int>(sub.to_old.size()), edges);
  return sub;
}

DisjointUnion disjoint_union(const Graph& g, const Graph& h) {
  DisjointUnion out;
  const int shift = g.order();
  std::vector<Edge> edges = g.edges();
  for (auto [u, v] : h.edges()) edges.emplace_back(u + shift, v + shift);
  out.graph = Graph::from_edges(g.order() + h.order(), edges);
  out.origin.reserve(static_cast<std::size_t>(out.graph.order()));
  for (Vertex v = 0; v < g.order(); ++v) out.origin.push_back({0, v});
  for (Vertex v = 0; v < h.order(); ++v) out.origin.push_back({1, v});
  return out;
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const int n = g.order();
  for (Vertex u = 0; u < n; ++u) {
    auto row = g.neighbors(u);
    auto it = row.begin();
    for (Vertex v = u + 1; v < n; ++v) {
      while (it != row.end() && *it < v) ++it;
      if (it == row.end() || *it != v) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.size()));
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.order(), edges);
}

bool is_connected(const Graph& g) {
  if (g.order() <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::queue<Vertex> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        q.push(w);
      }
  }
  return count == g.order();
}

std::optional<std::string> check_invariants(const Graph& g) {
  std::int64_t total = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto row = g.neighbors(v);
    total += static_cast<std::int64_t>(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      Vertex w = row[i];
      if (w < 0 || w >= g.order()) return "neighbor out of range at vertex " + std::to_string(v);
      if (w == v) return "self-loop at vertex " + std::to_string(v);
      if (i > 0 && row[i - 1] >= w) return "adjacency of vertex " + std::to_string(v) + " not strictly increasing";
      if (!g.adjacent(w, v)) return "asymmetric adjacency " + std::to_string(v) + "-" + std::to_string(w);
    }
  }
  if (total != 2 * g.size()) return "degree sum differs from 2m";
  return std::nullopt;
}

}  // namespace amen
