#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "amen/graph.hpp"
#include "amen/partition.hpp"

namespace amen::gen {

/// How the root cell of a component is realized.
enum class RootKind { Complete, Empty, Matching, CoMatching, FiveCycle };

const char* to_string(RootKind k);
RootKind root_kind_from_string(const std::string& s);  // throws BadSpec

/// A cell of a component tree. Each child is joined to this cell by stars
/// (centers here, `size / parent size` leaves each) or, with co_stars, by the
/// bipartite complement of those stars.
struct CellSpec {
  std::int64_t size = 1;
  bool complete = false;  // non-root cells only: K_size instead of empty
  bool co_stars = false;  // realization of the edge to the parent
  std::vector<CellSpec> children;
};

struct ComponentSpec {
  RootKind head = RootKind::Complete;
  CellSpec tree;  // tree.size is the root cell size
};

/// Complete join between two cells of different components. Cells are
/// numbered in preorder, component after component.
struct Wire {
  int a = 0;
  int b = 0;
};

struct GraphSpec {
  std::vector<ComponentSpec> components;
  std::vector<Wire> wiring;
};

GraphSpec spec_from_json(const nlohmann::json& j);  // throws BadSpec
nlohmann::json to_json(const GraphSpec& spec);

/// Throws TaggedError("BadSpec") on any violated size or kind rule.
void check_spec(const GraphSpec& spec);

struct Generated {
  Graph graph;
  Partition intended;  // one cell per spec cell; vertices of a cell are contiguous, in preorder
};

/// Builds the graph. Deterministic for a given seed.
Generated generate(const GraphSpec& spec, std::uint64_t seed);

/// stable_partition(g) == intended.
bool validate_spec(const Graph& g, const Partition& intended);

/// Canonical text for a component's shape: head kind plus the size-labelled
/// tree with children sorted. Edge realization flags are included.
std::string shape_signature(const ComponentSpec& c);

/// Canonical forms of the anisotropic trees the recognizer should recover:
/// "size(child,child,...)" strings, children sorted, one per tree, sorted.
/// A parent cell of size 1 makes its child edges isotropic, so those
/// subtrees become separate trees.
std::vector<std::string> expected_forest(const GraphSpec& spec);

enum class Family { Complete, Path, Cycle, CompleteBipartite, Matching, Figure1, JellyfishFig3, Figure5 };

Family family_from_string(const std::string& s);  // throws BadParams
/// K_n (n), P_n (n), C_n (n >= 3), K_{a,b} (a, b), rK2 (r), and the fixed
/// instances figure1, jellyfish_fig3, figure5. Throws BadParams.
Graph named(Family f, const std::vector<std::int64_t>& params = {});

/// Spec of the 100-vertex component with root K5 and tree
/// 5 -> {10 -> {30, 20}, 15, 5 -> {15}}; the 20-cell is complete.
GraphSpec figure5_spec();
/// Same tree as figure5_spec as a bare component.
ComponentSpec figure5_component();

struct ShapeParams {
  int max_components = 3;
  int max_depth = 3;
  int max_children = 3;
  int max_multiplicity = 3;
  double wiring_probability = 0.3;
  int max_attempts = 500;
};

struct RandomInstance {
  GraphSpec spec;
  Graph graph;
  Partition partition;
  int attempts = 0;
};

/// Random amenable graph with at most n_target vertices (n_target 0 gives
/// the empty graph, 1 gives K1). Retries until validate_spec passes; throws
/// TaggedError("BudgetExhausted") after max_attempts.
RandomInstance random_amenable(int n_target, const ShapeParams& params, std::uint64_t seed);

/// Benchmark family: matching root R of size s, R -> X (2s), X -> Y (2s),
/// X -> Z (4s) -> W (4s). 13s vertices with s the largest even number
/// (at least 4) with 13s <= n_target, and O(n) edges.
GraphSpec scaling_spec(std::int64_t n_target);
RandomInstance scaling_family(std::int64_t n_target, std::uint64_t seed);

}  // namespace amen::gen
