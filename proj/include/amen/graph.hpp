#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace amen {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Counters collected while building a graph from raw edges.
struct EdgeListReport {
  std::size_t edges_read = 0;
  std::size_t duplicates = 0;
};

/// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency
/// stored in compressed rows.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate edges (in either orientation)
  /// are dropped and counted in `report`; self-loops and out-of-range
  /// endpoints throw GraphError.
  static Graph from_edges(int n, std::span<const Edge> edges, EdgeListReport* report = nullptr);

  int order() const noexcept { return n_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(adj_.size() / 2); }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const noexcept {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> adj_;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_old;  // new index -> old vertex
  std::vector<Vertex> to_new;  // old vertex -> new index, -1 when dropped
};

/// Subgraph induced by `vertices`; new indices follow increasing old index.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

struct UnionOrigin {
  int side;      // 0 for the first operand, 1 for the second
  Vertex index;  // index inside that operand
};

struct DisjointUnion {
  Graph graph;
  std::vector<UnionOrigin> origin;
};

/// Block-diagonal union: the vertices of `g` come first, then those of `h`.
DisjointUnion disjoint_union(const Graph& g, const Graph& h);

Graph complement(const Graph& g);

/// Applies a vertex relabeling: vertex v of `g` becomes `perm[v]`.
Graph relabel(const Graph& g, std::span<const Vertex> perm);

bool is_connected(const Graph& g);

/// Returns a description of the first violated representation invariant, or
/// nothing when the adjacency is symmetric, sorted, loop-free and sums to 2m.
std::optional<std::string> check_invariants(const Graph& g);

}  // namespace amen
