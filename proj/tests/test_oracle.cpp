#include <doctest.h>

#include <set>

#include "amen/amenability.hpp"
#include "amen/error.hpp"
#include "amen/generators.hpp"
#include "amen/oracle.hpp"
#include "amen/refinement.hpp"
#include "support.hpp"

using namespace amen;
using namespace amen::oracle;
using test::graph_of;

namespace {

// Spider with legs of length 1, 2 and 3: the smallest asymmetric tree.
Graph rigid_tree() { return graph_of(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}}); }

Graph family(gen::Family f, std::vector<std::int64_t> p = {}) { return gen::named(f, p); }

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// G_i in the jellyfish vertex order.
Graph source_subgraph(const Graph& g, const Jellyfish& j) {
  std::vector<Edge> edges;
  const int n = static_cast<int>(j.vertices.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (g.adjacent(j.vertices[a], j.vertices[b])) edges.emplace_back(a, b);
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("permutations") {
  const Permutation a({1, 2, 0});
  const Permutation b({1, 0, 2});
  CHECK((a * a.inverse()).is_identity());
  CHECK((a * b)(0) == a(b(0)));
  CHECK((a * b)(0) == 2);
  CHECK(Permutation::identity(3).is_identity());
  CHECK_FALSE(a.is_identity());
}

TEST_CASE("automorphism groups of small graphs") {
  CHECK(automorphisms(family(gen::Family::Complete, {3})).order() == 6);
  CHECK(automorphisms(family(gen::Family::Cycle, {5})).order() == 10);
  CHECK(automorphisms(family(gen::Family::CompleteBipartite, {3, 3})).order() == 72);
  CHECK(automorphisms(rigid_tree()).order() == 1);
  CHECK(automorphisms(Graph()).order() == 1);
  CHECK(automorphism_count(family(gen::Family::Figure1), nullptr) == 64);
  CHECK(automorphism_count(family(gen::Family::JellyfishFig3), nullptr) == 320);
  CHECK(automorphism_count(family(gen::Family::Matching, {5}), nullptr) == 3840);
  const Partition p = Partition::from_colors(std::vector<int>{0, 1, 1});
  CHECK(automorphisms(family(gen::Family::Complete, {3}), &p).order() == 2);
}

TEST_CASE("groups are closed and the counting matches enumeration") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const Graph g = test::random_graph(n, 0.4, rng);
    const AutGroup grp = automorphisms(g);
    REQUIRE(grp.elements.front().is_identity());
    const std::set<Permutation> all(grp.elements.begin(), grp.elements.end());
    for (const auto& a : grp.elements) {
      CHECK(all.count(a.inverse()) == 1);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v : g.neighbors(u)) CHECK(g.adjacent(a(u), a(v)));
    }
    for (std::size_t i = 0; i < grp.elements.size() && i < 6; ++i)
      for (std::size_t j = 0; j < grp.elements.size() && j < 6; ++j)
        CHECK(all.count(grp.elements[i] * grp.elements[j]) == 1);
    CHECK(factorial(n) % grp.order() == 0);
    CHECK(automorphism_count(g) == grp.order());
  }
}

TEST_CASE("the stable partition is preserved by every automorphism") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Graph g = test::random_graph(std::uniform_int_distribution<int>(2, 14)(rng), 0.3, rng);
    const Partition p = stable_partition(g);
    CHECK(automorphism_count(g) == automorphism_count(g, &p));
  }
}

TEST_CASE("common automorphisms") {
  const Graph c4 = family(gen::Family::Cycle, {4});
  const Graph k22 = relabel(family(gen::Family::CompleteBipartite, {2, 2}), std::vector<Vertex>{0, 2, 1, 3});
  CHECK(common_automorphism_count(c4, c4) == 8);
  CHECK(common_automorphism_count(c4, Graph::from_edges(4, {})) == 8);
  const Graph one = graph_of(4, {{0, 1}});
  CHECK(common_automorphism_count(c4, one) == 2);
  CHECK(common_automorphism_count(c4, k22) == automorphism_count(c4));
}

TEST_CASE("isomorphism search") {
  const Graph c6 = family(gen::Family::Cycle, {6});
  const Graph tri2 = graph_of(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_FALSE(isomorphic(c6, tri2));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Graph g = test::random_graph(10, 0.5, rng);
    const auto perm = test::random_permutation(10, rng);
    const Graph h = relabel(g, perm);
    const auto iso = find_isomorphism(g, h);
    REQUIRE(iso.has_value());
    for (auto [u, v] : g.edges()) CHECK(h.adjacent((*iso)(u), (*iso)(v)));
  }
  CHECK_FALSE(isomorphic(graph_of(3, {{0, 1}}), graph_of(4, {{0, 1}})));
}

TEST_CASE("distinguishing and fixing numbers of small graphs") {
  const Graph k33 = family(gen::Family::CompleteBipartite, {3, 3});
  CHECK(dist_number_bf(k33) == 4);
  CHECK(fix_number_bf(k33) == 4);
  const Graph c5 = family(gen::Family::Cycle, {5});
  CHECK(dist_number_bf(c5) == 3);
  CHECK(fix_number_bf(c5) == 2);
  const Graph two_k2 = family(gen::Family::Matching, {2});
  CHECK(dist_number_bf(two_k2) == 3);
  CHECK(fix_number_bf(two_k2) == 2);
  CHECK(dist_number_bf(rigid_tree()) == 1);
  CHECK(fix_number_bf(rigid_tree()) == 0);
  CHECK(dist_number_bf(Graph()) == 0);
  CHECK(dist_number_bf(family(gen::Family::Path, {4})) == 2);
  CHECK(fix_number_bf(family(gen::Family::Complete, {6})) == 5);
}

TEST_CASE("counts of inequivalent distinguishing labelings") {
  const Graph k2 = family(gen::Family::Complete, {2});
  const Graph k1 = family(gen::Family::Complete, {1});
  const Graph p3 = family(gen::Family::Path, {3});
  for (int c = 1; c <= 6; ++c) {
    CHECK(dist_count_bf(k2, nullptr, c) == c * (c - 1) / 2);
    CHECK(dist_count_bf(k1, nullptr, c) == c);
    CHECK(dist_count_bf(p3, nullptr, c) == c * c * (c - 1) / 2);
  }
  CHECK(dist_count_bf(p3, nullptr, 3) == 9);
  const Graph k3 = family(gen::Family::Complete, {3});
  CHECK(dist_count_bf(k3, nullptr, 2) == 0);
  CHECK(dist_count_bf(k3, nullptr, 4) == 4);
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(dist_number_bf(family(gen::Family::Path, {9})), TooLarge);
  CHECK_NOTHROW(dist_number_bf(family(gen::Family::Path, {9}), nullptr, 9));
  CHECK_THROWS_AS(automorphisms(family(gen::Family::Path, {11})), TooLarge);
  CHECK_THROWS_AS(automorphism_count(family(gen::Family::Path, {65})), TooLarge);
  try {
    fix_number_bf(family(gen::Family::Path, {12}));
    FAIL("expected TooLarge");
  } catch (const TooLarge& e) {
    CHECK(e.n() == 12);
    CHECK(e.limit() == kDefaultColoringLimit);
  }
}

TEST_CASE("rooted tree recursions") {
  const RootedTree star({-1, 0, 0, 0});
  CHECK(tree_dist_count(star, 2) == 0);
  CHECK(tree_dist_count(star, 3) == 3);
  CHECK(tree_dist_number(star) == 3);
  CHECK(tree_fix(star) == 2);
  const RootedTree p3({1, -1, 1});
  CHECK(p3.root() == 1);
  CHECK(tree_dist_count(p3, 3) == 9);
  CHECK(tree_fix(p3) == 1);
  CHECK(tree_fix(RootedTree({-1})) == 0);
  CHECK(tree_dist_count(RootedTree({-1}), 5) == 5);
  CHECK_THROWS_AS(RootedTree::from_graph(family(gen::Family::Cycle, {4}), 0), TaggedError);
  const RootedTree back = RootedTree::from_graph(star.to_graph(), 0);
  CHECK(back.parent() == star.parent());
}

TEST_CASE("tree recursions agree with exhaustive search") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const Graph g = test::random_tree(n, rng);
    const Vertex root = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const RootedTree tree = RootedTree::from_graph(g, root);
    const Partition p = tree.root_partition();
    const Graph tg = tree.to_graph();
    const int d = dist_number_bf(tg, &p);
    CHECK(tree_dist_number(tree) == d);
    CHECK(tree_fix(tree) == fix_number_bf(tg, &p));
    for (int c = 1; c <= 3; ++c) {
      CHECK(tree_dist_count(tree, c) == dist_count_bf(tg, &p, c));
      CHECK((tree_dist_count(tree, c) > 0) == (d <= c));
    }
  }
}

TEST_CASE("forest rules") {
  const Graph k2 = family(gen::Family::Complete, {2});
  const std::vector<ForestPart> pair{{k2, 2}};
  CHECK(forest_dist(pair) == 3);
  CHECK(forest_fix(pair) == 2);
  const std::vector<ForestPart> rigid{{rigid_tree(), 3}};
  CHECK(forest_fix(rigid) == 2);
  CHECK(forest_dist(rigid) == 2);
  // Parts given separately but isomorphic are grouped.
  const std::vector<ForestPart> split{{k2, 1}, {k2, 1}, {family(gen::Family::Complete, {1}), 1}};
  CHECK(forest_dist(split) == 3);
  CHECK(forest_fix(split) == 2);
  const std::vector<ForestPart> bad{{family(gen::Family::Matching, {2}), 1}};
  CHECK_THROWS_AS(forest_dist(bad), TaggedError);
}

TEST_CASE("forest rules agree with exhaustive search on the union") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    std::vector<ForestPart> parts;
    Graph all;
    int n = 0;
    while (true) {
      const int k = std::uniform_int_distribution<int>(1, 3)(rng);
      Graph part = test::random_tree(k, rng);
      const int r = std::uniform_int_distribution<int>(1, 3)(rng);
      if (n + k * r > 8) break;
      for (int i = 0; i < r; ++i) all = disjoint_union(all, part).graph;
      n += k * r;
      parts.push_back({part, r});
    }
    if (parts.empty()) continue;
    CHECK(forest_dist(parts) == dist_number_bf(all));
    CHECK(forest_fix(parts) == fix_number_bf(all));
  }
}

TEST_CASE("jellyfish of the Figure 1 components") {
  const Graph g = family(gen::Family::Figure1);
  const auto v = check_amenable(g);
  REQUIRE(v.amenable);
  const auto& s = *v.structure;
  const Jellyfish j = materialize_jellyfish(g, s.cells, s.forest.components[1]);
  CHECK(j.graph.order() == 6);
  CHECK(j.vertices == std::vector<Vertex>{1, 4, 5, 8, 9, 10});
  CHECK(j.graph.size() == 5);
  CHECK(j.graph.adjacent(4, 5));  // the empty root {9, 10} became K2
  CHECK(j.partition().num_cells() == 2);
  // The matching root becomes its complement, a 4-cycle.
  const Jellyfish head = materialize_jellyfish(g, s.cells, s.forest.components[2]);
  CHECK(isomorphic(head.graph, family(gen::Family::Cycle, {4})));
}

TEST_CASE("a single empty cell becomes complete") {
  const Graph g = Graph::from_edges(3, {});
  const auto v = check_amenable(g);
  REQUIRE(v.amenable);
  const Jellyfish j = materialize_jellyfish(g, v.structure->cells, v.structure->forest.components[0]);
  CHECK(j.graph == family(gen::Family::Complete, {3}));
}

TEST_CASE("materialization is idempotent and keeps the group") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int t = 0; t < 120; ++t) {
    const auto inst = gen::random_amenable(16, {}, rng());
    const auto v = check_amenable(inst.graph);
    REQUIRE(v.amenable);
    for (const auto& comp : v.structure->forest.components) {
      const Jellyfish j = materialize_jellyfish(inst.graph, v.structure->cells, comp);
      const Partition p = j.partition();
      CHECK(is_equitable(j.graph, p));
      const CellGraph jcg = build_cell_graph(j.graph, p);
      const auto forest = anisotropic_components(jcg);
      REQUIRE(forest.components.size() == 1);
      const Jellyfish again = materialize_jellyfish(j.graph, jcg, forest.components[0]);
      CHECK(again.graph == j.graph);
      const Graph gi = source_subgraph(inst.graph, j);
      const BigInt a = automorphism_count(gi, &p);
      CHECK(automorphism_count(j.graph, &p) == a);
      CHECK(common_automorphism_count(gi, j.graph, &p) == a);
      ++checked;
    }
  }
  CHECK(checked > 150);
}
