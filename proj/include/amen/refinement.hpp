#pragma once

#include <optional>
#include <span>

#include "amen/graph.hpp"
#include "amen/partition.hpp"

namespace amen {

/// Coarsest equitable partition of `g` refining `initial` (color refinement).
/// Runs in O((n + m) log n) using smaller-half splitter bookkeeping. Throws
/// PartitionError(InvalidPartition) when `initial` is not a partition of V(g).
Partition refine(const Graph& g, const Partition& initial);

/// Same, with the initial partition given as a color per vertex.
Partition refine(const Graph& g, std::span<const int> colors);

/// refine(g, {V(g)}).
Partition stable_partition(const Graph& g);

/// For every ordered cell pair (i, j), all vertices of cell i have the same
/// number of neighbours in cell j.
bool is_equitable(const Graph& g, const Partition& p);

enum class CrOutcome { Distinguished, CrEquivalent };

struct CrVerdict {
  CrOutcome outcome = CrOutcome::CrEquivalent;
  /// Cell of the stable partition of the union with unequal side counts.
  std::optional<int> witness_cell;
};

/// Color refinement isomorphism test on the disjoint union of g and h.
CrVerdict cr_iso_test(const Graph& g, const Graph& h);

}  // namespace amen
