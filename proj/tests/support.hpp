#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "amen/graph.hpp"
#include "amen/partition.hpp"

namespace amen::test {

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

inline Graph random_tree(int n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  return Graph::from_edges(n, edges);
}

inline std::vector<Vertex> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline Graph graph_of(int n, std::initializer_list<Edge> edges) {
  std::vector<Edge> e(edges);
  return Graph::from_edges(n, e);
}

/// Cells as sorted vertex lists, for comparisons against literals.
inline std::vector<std::vector<Vertex>> cells_of(const Partition& p) {
  std::vector<std::vector<Vertex>> out;
  for (int i = 0; i < p.num_cells(); ++i) out.emplace_back(p.cell(i).begin(), p.cell(i).end());
  return out;
}

/// Every set partition of {0..n-1}, as restricted-growth color arrays.
inline std::vector<std::vector<int>> all_set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (int c = 0; c <= blocks && c < n; ++c) {
      a[i] = c;
      self(self, i + 1, std::max(blocks, c + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace amen::test
