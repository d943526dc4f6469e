#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "amen/cell_graph.hpp"
#include "amen/graph.hpp"
#include "amen/partition.hpp"
#include "amen/symmetry.hpp"

/// Exhaustive ground truth for small instances. Nothing in here calls the
/// refinement or symmetry code paths, so it can be used to check them.
namespace amen::oracle {

/// Hard ceiling of the bitset search engine.
inline constexpr int kMaxVertices = 64;
inline constexpr int kDefaultAutLimit = 10;
inline constexpr int kDefaultColoringLimit = 8;

class Permutation {
 public:
  explicit Permutation(std::vector<Vertex> image);
  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  Vertex operator()(Vertex v) const noexcept { return image_[v]; }
  const std::vector<Vertex>& image() const noexcept { return image_; }
  bool is_identity() const noexcept;
  Permutation inverse() const;
  /// (a * b)(v) = a(b(v)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> image_;
};

struct AutGroup {
  std::vector<Permutation> elements;  // sorted; the identity comes first
  std::uint64_t order() const noexcept { return elements.size(); }
};

/// Every automorphism of g (cell-preserving when p is given), by
/// backtracking. Throws TooLarge when n > limit_n.
AutGroup automorphisms(const Graph& g, const Partition* p = nullptr, int limit_n = kDefaultAutLimit);

/// |Aut(g, p)| via orbit-stabilizer over existence searches; no element list.
BigInt automorphism_count(const Graph& g, const Partition* p = nullptr, int limit_n = kMaxVertices);

/// |Aut(a, p) ∩ Aut(b, p)| for graphs on the same vertex set.
BigInt common_automorphism_count(const Graph& a, const Graph& b, const Partition* p = nullptr,
                                 int limit_n = kMaxVertices);

/// True when some non-identity automorphism of g preserves `colors`.
bool has_nontrivial_automorphism(const Graph& g, std::span<const int> colors);

std::optional<Permutation> find_isomorphism(const Graph& g, const Graph& h, int limit_n = kMaxVertices);
bool isomorphic(const Graph& g, const Graph& h, int limit_n = kMaxVertices);

/// Least number of colors admitting a labeling that no non-trivial element of
/// Aut(g, p) preserves.
int dist_number_bf(const Graph& g, const Partition* p = nullptr, int limit_n = kDefaultColoringLimit);

/// Number of labelings V -> {1..c} that are distinguishing for Aut(g, p),
/// divided by |Aut(g, p)|. Throws TaggedError("DivisibilityViolated") if the
/// division is not exact.
BigInt dist_count_bf(const Graph& g, const Partition* p, int c, int limit_n = kDefaultColoringLimit);

/// Size of a smallest set whose pointwise stabilizer in Aut(g, p) is trivial.
int fix_number_bf(const Graph& g, const Partition* p = nullptr, int limit_n = kDefaultColoringLimit);

/// Rooted tree given by a parent array (-1 at the root).
class RootedTree {
 public:
  explicit RootedTree(std::vector<int> parent);
  /// Roots the tree `g` at `root`. Throws TaggedError("NotATree").
  static RootedTree from_graph(const Graph& g, Vertex root);

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  int root() const noexcept { return root_; }
  const std::vector<int>& parent() const noexcept { return parent_; }
  Graph to_graph() const;
  /// Partition with the root as a singleton cell, so that cell-preserving
  /// automorphisms are exactly the root-fixing ones.
  Partition root_partition() const;

 private:
  std::vector<int> parent_;
  int root_ = 0;
};

/// D(T, c) = c * prod_j C(D(T_j, c), m_j) over isomorphism classes of child
/// subtrees, classes found by AHU canonical labels.
BigInt tree_dist_count(const RootedTree& t, std::int64_t c);
/// Least c with tree_dist_count(t, c) > 0.
std::int64_t tree_dist_number(const RootedTree& t);
/// Fix(T) = sum_j (m_j - 1) [Fix(T_j) = 0] + m_j Fix(T_j) [Fix(T_j) != 0].
std::int64_t tree_fix(const RootedTree& t);

struct ForestPart {
  Graph graph;  // connected
  int multiplicity = 1;
};

/// D of a disjoint union of connected parts: per isomorphism class,
/// min { c : D(G, c) >= r }, maximised over classes.
int forest_dist(std::span<const ForestPart> parts, int limit_n = kDefaultColoringLimit);
/// Sum over isomorphism classes: r - 1 for a rigid class of r copies,
/// r * Fix(G) otherwise.
int forest_fix(std::span<const ForestPart> parts, int limit_n = kDefaultColoringLimit);

struct Jellyfish {
  Graph graph;                  // on the component's vertices, renumbered
  std::vector<Vertex> vertices;  // new index -> vertex of the source graph
  std::vector<int> cell;         // new index -> cell id of the source partition
  Partition partition() const { return Partition::from_colors(cell); }
};

/// Normalises the subgraph G_i of one anisotropic component: the root cell
/// is complemented when empty or a matching, complete non-root cells are
/// emptied, complete isotropic pairs are emptied and co-star pairs become
/// stars. Throws TaggedError("NotAmenableComponent") on cells or pairs the
/// rules do not cover.
Jellyfish materialize_jellyfish(const Graph& g, const CellGraph& cg, const AnisotropicComponent& comp);

}  // namespace amen::oracle
