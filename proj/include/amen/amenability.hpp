#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amen/cell_graph.hpp"
#include "amen/graph.hpp"
#include "amen/partition.hpp"

namespace amen {

/// Stable partition, cell graph and rooted anisotropic forest of a graph that
/// passed the amenability conditions.
struct AmenableStructure {
  CellGraph cells;
  AnisotropicForest forest;
  const Partition& partition() const { return cells.partition(); }
};

struct AmenabilityFailure {
  enum class Condition { A, B, C, D };
  Condition condition;
  int cell = -1;       // A: offending cell; B: smaller cell of the pair
  int other = -1;      // B: larger cell of the pair
  int component = -1;  // C, D
  std::string reason;  // cell/pair kind for A/B, issue kind for C/D
};

const char* to_string(AmenabilityFailure::Condition c);

struct AmenabilityVerdict {
  bool amenable = false;
  std::optional<AmenableStructure> structure;
  std::optional<AmenabilityFailure> failure;
  /// Every violation in A, B, C, D order; filled only when requested.
  std::vector<AmenabilityFailure> all_failures;
};

/// Decides amenability by checking conditions (A)-(D) on the stable
/// partition. The reported failure is the first one in condition order, then
/// lowest index.
AmenabilityVerdict check_amenable(const Graph& g, bool collect_all = false);

enum class IsoAnswer { Isomorphic, NotIsomorphic, HeuristicEquivalent };

const char* to_string(IsoAnswer a);

/// Color refinement isomorphism test that is exact whenever g or h is
/// amenable; otherwise a CR-equivalent pair is reported as heuristic.
IsoAnswer amenable_iso(const Graph& g, const Graph& h);

class NotAmenable : public Error {
 public:
  explicit NotAmenable(AmenabilityVerdict verdict);
  const AmenabilityVerdict& verdict() const noexcept { return verdict_; }
  const char* kind() const noexcept override { return "NotAmenable"; }

 private:
  AmenabilityVerdict verdict_;
};

}  // namespace amen
