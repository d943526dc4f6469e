#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amen/error.hpp"
#include "amen/graph.hpp"
#include "amen/partition.hpp"

namespace amen {

enum class CellKind { Empty, Complete, Matching, CoMatching, FiveCycle, Other };
enum class PairKind { IsoEmpty, IsoComplete, AnisoStars, AnisoCoStars, Other };

const char* to_string(CellKind k);
const char* to_string(PairKind k);

inline bool is_homogeneous(CellKind k) { return k == CellKind::Empty || k == CellKind::Complete; }
inline bool is_isotropic(PairKind k) { return k == PairKind::IsoEmpty || k == PairKind::IsoComplete; }

/// An unordered cell pair with at least one edge between the two cells.
/// `small` is the cell of smaller size (lower id on ties).
struct CellPair {
  int small = 0;
  int large = 0;
  std::int64_t d_small_large = 0;  // neighbours a vertex of `small` has in `large`
  std::int64_t d_large_small = 0;
  PairKind kind = PairKind::Other;
};

/// Quotient structure of an equitable partition: cell sizes, the constants
/// d(i, j), and the homogeneous / isotropic classification.
class CellGraph {
 public:
  int num_cells() const noexcept { return static_cast<int>(sizes_.size()); }
  const Partition& partition() const noexcept { return partition_; }
  std::int64_t size(int cell) const noexcept { return sizes_[cell]; }
  const std::vector<std::int64_t>& sizes() const noexcept { return sizes_; }
  CellKind kind(int cell) const noexcept { return kinds_[cell]; }

  /// Neighbours a vertex of cell i has in cell j (0 when no edge joins them).
  std::int64_t d(int i, int j) const;
  PairKind pair_kind(int i, int j) const;

  /// Edge-bearing pairs of distinct cells, sorted by (min id, max id).
  const std::vector<CellPair>& pairs() const noexcept { return pairs_; }

  friend CellGraph build_cell_graph(const Graph& g, const Partition& p);

 private:
  Partition partition_;
  std::vector<std::int64_t> sizes_;
  std::vector<CellKind> kinds_;
  std::map<std::pair<int, int>, std::int64_t> d_;
  std::map<std::pair<int, int>, std::size_t> pair_index_;
  std::vector<CellPair> pairs_;
};

/// Throws PartitionError(NotEquitable) if `p` is not equitable for `g`.
CellGraph build_cell_graph(const Graph& g, const Partition& p);

CellKind classify_cell(std::int64_t size, std::int64_t d_self);
/// Classifies the bipartite graph between a cell of size `small_size` and a
/// cell of size `large_size >= small_size`.
PairKind classify_pair(std::int64_t small_size, std::int64_t large_size, std::int64_t d_small_large,
                       std::int64_t d_large_small);

/// One anisotropic component, rooted. Local node 0 is the root; nodes are in
/// BFS order, so iterating in reverse visits children before parents.
struct AnisotropicComponent {
  std::vector<int> cells;                  // cell id per local node
  std::vector<int> parent;                 // local parent index, -1 at the root
  std::vector<std::int64_t> sizes;         // cell size per local node
  std::vector<std::int64_t> multiplicity;  // size / parent size, 0 at the root
  bool heterogeneous = false;              // contains a heterogeneous cell
  std::int64_t num_vertices = 0;

  int root() const { return cells.front(); }
  int num_nodes() const { return static_cast<int>(cells.size()); }
  int min_cell() const;

  /// Builds a rooted component directly from a parent array and cell sizes
  /// (cell ids become 0..k-1). The root must be the unique -1 entry and every
  /// child size must be a positive multiple of its parent's.
  static AnisotropicComponent from_tree(const std::vector<int>& parent, const std::vector<std::int64_t>& sizes);
};

struct AnisotropicForest {
  std::vector<AnisotropicComponent> components;  // ordered by lowest cell id
};

/// A violation of the tree conditions found while rooting the components.
struct ForestIssue {
  enum class Kind { NotATree, NotMonotone, BadDivisibility, MultipleHeterogeneous, HeterogeneousNotMinimal };
  Kind kind;
  int component = -1;
  int cell_a = -1;  // offending edge (parent, child) or heterogeneous cells
  int cell_b = -1;
  bool tree_condition() const {
    return kind == Kind::NotATree || kind == Kind::NotMonotone || kind == Kind::BadDivisibility;
  }
};

const char* to_string(ForestIssue::Kind k);

struct ForestAnalysis {
  AnisotropicForest forest;
  /// Tree-shape issues (NotATree, NotMonotone, BadDivisibility) for every
  /// component first, then heterogeneity issues.
  std::vector<ForestIssue> issues;
};

/// Groups cells into anisotropic components (every non-isotropic pair is an
/// edge), roots each one and checks the tree, monotonicity, divisibility and
/// heterogeneity conditions without throwing.
ForestAnalysis analyze_anisotropic(const CellGraph& cg);

class StructureError : public Error {
 public:
  explicit StructureError(ForestIssue issue);
  const ForestIssue& issue() const noexcept { return issue_; }
  const char* kind() const noexcept override { return to_string(issue_.kind); }

 private:
  ForestIssue issue_;
};

/// Like analyze_anisotropic but throws StructureError for the first issue.
AnisotropicForest anisotropic_components(const CellGraph& cg);

}  // namespace amen
