#include <doctest.h>

#include "amen/error.hpp"
#include "amen/oracle.hpp"
#include "amen/refinement.hpp"
#include "support.hpp"

using namespace amen;
using amen::test::cells_of;
using amen::test::graph_of;

namespace {

using Cells = std::vector<std::vector<Vertex>>;

Graph figure1() {
  return graph_of(11, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}, {0, 8},
                       {1, 9}, {8, 9}, {4, 10}, {5, 10}, {2, 3}, {6, 7}});
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph two_triangles() { return graph_of(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

}  // namespace

TEST_CASE("partition canonical numbering") {
  std::vector<int> colors{7, 3, 7, -1, 3};
  const Partition p = Partition::from_colors(colors);
  CHECK(p.num_cells() == 3);
  CHECK(cells_of(p) == Cells{{0, 2}, {1, 4}, {3}});
  CHECK(p.cell_of(4) == 1);
  CHECK(Partition::discrete(3).refines(Partition::unit(3)));
  CHECK_FALSE(Partition::unit(3).refines(Partition::discrete(3)));
  CHECK(Partition::unit(0).num_cells() == 0);
}

TEST_CASE("stable partition examples") {
  CHECK(cells_of(stable_partition(figure1())) == Cells{{0}, {1, 4, 5, 8}, {2, 3, 6, 7}, {9, 10}});
  CHECK(cells_of(stable_partition(cycle(5))) == Cells{{0, 1, 2, 3, 4}});
  CHECK(cells_of(stable_partition(graph_of(3, {{0, 1}, {1, 2}}))) == Cells{{0, 2}, {1}});
  CHECK(stable_partition(Graph()).num_cells() == 0);
}

TEST_CASE("refine respects the initial partition") {
  const Graph c6 = cycle(6);
  std::vector<int> colors{5, 0, 0, 0, 0, 0};
  // Individualizing one vertex of C6 splits it by distance.
  CHECK(cells_of(refine(c6, colors)) == Cells{{0}, {1, 5}, {2, 4}, {3}});
  std::vector<int> short_colors{0, 0};
  CHECK_THROWS_AS(refine(c6, short_colors), PartitionError);
  CHECK_THROWS_AS(refine(c6, Partition::unit(4)), PartitionError);
}

TEST_CASE("is_equitable") {
  CHECK(is_equitable(cycle(6), Partition::unit(6)));
  CHECK_FALSE(is_equitable(graph_of(3, {{0, 1}, {1, 2}}), Partition::unit(3)));
  const Graph g = figure1();
  CHECK(is_equitable(g, stable_partition(g)));
  CHECK_THROWS_AS(is_equitable(g, Partition::unit(3)), PartitionError);
}

TEST_CASE("cr_iso_test") {
  const Graph k3 = graph_of(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(cr_iso_test(k3, k3).outcome == CrOutcome::CrEquivalent);
  CHECK(cr_iso_test(cycle(6), two_triangles()).outcome == CrOutcome::CrEquivalent);
  const CrVerdict v = cr_iso_test(k3, graph_of(3, {{0, 1}, {1, 2}}));
  CHECK(v.outcome == CrOutcome::Distinguished);
  CHECK(v.witness_cell.has_value());
}

TEST_CASE("refine output is equitable, refines the input and is idempotent") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 40)(rng);
    const Graph g = test::random_graph(n, std::uniform_real_distribution<double>(0.02, 0.5)(rng), rng);
    std::vector<int> colors(n);
    for (int& c : colors) c = std::uniform_int_distribution<int>(0, 2)(rng);
    const Partition init = Partition::from_colors(colors);
    const Partition p = refine(g, init);
    CHECK(is_equitable(g, p));
    CHECK(p.refines(init));
    CHECK(refine(g, p) == p);
  }
}

TEST_CASE("stable partition is equivariant") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    const Graph g = t % 2 ? test::random_graph(n, 0.2, rng) : test::random_tree(n, rng);
    const auto perm = test::random_permutation(n, rng);
    const Partition p = stable_partition(g);
    const Partition q = stable_partition(relabel(g, perm));
    std::vector<int> moved(n);
    for (Vertex v = 0; v < n; ++v) moved[perm[v]] = p.cell_of(v);
    CHECK(q == Partition::from_colors(moved));
  }
}

TEST_CASE("refine is the coarsest equitable refinement (exhaustive, n <= 6)") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 6; ++n) {
    const auto all = test::all_set_partitions(n);
    for (int t = 0; t < 12; ++t) {
      const Graph g = test::random_graph(n, 0.45, rng);
      std::vector<int> init_colors(n);
      for (int& c : init_colors) c = std::uniform_int_distribution<int>(0, t % 3)(rng);
      const Partition init = Partition::from_colors(init_colors);
      const Partition p = refine(g, init);
      for (const auto& colors : all) {
        const Partition q = Partition::from_colors(colors);
        if (q.refines(init) && is_equitable(g, q)) CHECK(q.refines(p));
      }
    }
  }
}

TEST_CASE("automorphisms never leave a stable cell") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 9)(rng);
    const Graph g = t % 3 ? test::random_graph(n, 0.35, rng) : test::random_tree(n, rng);
    const Partition p = stable_partition(g);
    for (const auto& pi : oracle::automorphisms(g).elements)
      for (Vertex v = 0; v < n; ++v) CHECK(p.cell_of(v) == p.cell_of(pi(v)));
  }
}
