#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "amen/amenability.hpp"
#include "amen/cell_graph.hpp"
#include "amen/graph.hpp"

namespace amen {

using BigInt = boost::multiprecision::cpp_int;

/// Shape of the head J_i[R_i] of a component once the root cell has been
/// normalised to contain a Hamiltonian cycle.
enum class HeadKind { Complete, FiveCycle, CoMatching };

const char* to_string(HeadKind k);

struct Head {
  HeadKind kind = HeadKind::Complete;
  std::int64_t size = 1;  // |R_i|

  /// Number of matching edges whose complement forms the head (CoMatching).
  std::int64_t r() const { return size / 2; }
  friend bool operator==(const Head&, const Head&) = default;
};

struct HeadInvariants {
  std::int64_t dist = 0;
  std::int64_t fix = 0;
  friend bool operator==(const HeadInvariants&, const HeadInvariants&) = default;
};

/// D and Fix of a head graph: K_s -> (s, s-1), C5 -> (3, 2), and the
/// complement of rK2 -> (least c with C(c,2) >= r, r).
HeadInvariants head_invariants(const Head& head);

/// Reads the head off the root cell: empty or complete roots give K_s,
/// matching or co-matching roots give the co-matching head. Throws
/// TaggedError("UnsupportedRootKind") for any other root.
Head head_of_component(const CellGraph& cg, const AnisotropicComponent& comp);

/// Least c >= 2 with c(c-1)/2 >= r, for r >= 1. Integer arithmetic only.
std::int64_t min_c_binom(std::int64_t r);

/// A count clamped at a fixed cap. Once a value reaches the cap it stays
/// there; `saturated()` then means "the true count is at least cap".
class SaturatingCount {
 public:
  SaturatingCount(std::uint64_t value, std::uint64_t cap) : value_(value < cap ? value : cap), cap_(cap) {}

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t cap() const noexcept { return cap_; }
  bool saturated() const noexcept { return value_ == cap_; }

 private:
  std::uint64_t value_;
  std::uint64_t cap_;
};

/// Number of inequivalent cell-preserving distinguishing labelings of one leg
/// with at most c colors, evaluated bottom-up over the component tree with
/// every intermediate clamped at `cap`. Requires cap > component vertex count
/// (TaggedError "BadCap" otherwise); then for any threshold t <= cap - 1 the
/// test value() >= t agrees with the exact count.
SaturatingCount leg_dist_count(const AnisotropicComponent& comp, std::int64_t c, std::uint64_t cap);

/// The same recursion in arbitrary precision.
BigInt leg_dist_count_exact(const AnisotropicComponent& comp, std::int64_t c);

/// Fixing number of one leg: 0 at leaf cells; at an internal cell the sum over
/// child cells of m - 1 (rigid child legs) or m * fix(child).
std::int64_t leg_fix(const AnisotropicComponent& comp);

enum class CountMode { Saturating, Exact };

/// Least c in [1, n_i] whose leg count reaches D(head), found by binary search.
std::int64_t component_dist(const AnisotropicComponent& comp, const Head& head, CountMode mode = CountMode::Saturating);
std::int64_t component_dist(const CellGraph& cg, const AnisotropicComponent& comp,
                            CountMode mode = CountMode::Saturating);

/// Fix(head) when the legs are rigid, |R_i| * leg_fix otherwise.
std::int64_t component_fix(const AnisotropicComponent& comp, const Head& head);
std::int64_t component_fix(const CellGraph& cg, const AnisotropicComponent& comp);

struct ComponentReport {
  int first_cell = 0;  // lowest cell id in the component
  int root_cell = 0;
  int num_cells = 0;
  std::int64_t num_vertices = 0;
  Head head;
  HeadInvariants head_invariants;
  std::int64_t leg_fix = 0;
  std::int64_t dist = 0;  // D(G_i, P_G), the chosen color count
  std::int64_t fix = 0;   // Fix(G_i, P_G)
  /// Exact leg count at `dist` colors, filled in exact mode.
  std::optional<std::string> exact_leg_count;
};

struct SymmetryReport {
  std::vector<ComponentReport> components;
  std::int64_t dist_number = 0;  // max over components
  std::int64_t fix_number = 0;   // sum over components
};

struct SymmetryOptions {
  bool exact_counts = false;
};

SymmetryReport symmetry_report(const AmenableStructure& s, const SymmetryOptions& opts = {});
/// Throws NotAmenable when g fails the amenability conditions.
SymmetryReport symmetry_report(const Graph& g, const SymmetryOptions& opts = {});

/// Distinguishing number of an amenable graph (0 for the empty graph).
std::int64_t dist_number(const Graph& g);
/// Fixing number of an amenable graph.
std::int64_t fix_number(const Graph& g);

}  // namespace amen
