#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "amen/amenability.hpp"
#include "amen/error.hpp"
#include "amen/generators.hpp"
#include "amen/oracle.hpp"
#include "amen/refinement.hpp"
#include "support.hpp"

using namespace amen;
using namespace amen::gen;

namespace {

struct Tree {
  std::vector<int> parent;
  std::vector<std::int64_t> size;
};

// Rooted "size(child,...)" string of `t` hung from `root`.
std::string rooted(const Tree& t, int root) {
  std::vector<std::vector<int>> adj(t.parent.size());
  for (std::size_t v = 0; v < t.parent.size(); ++v)
    if (t.parent[v] >= 0) {
      adj[v].push_back(t.parent[v]);
      adj[t.parent[v]].push_back(static_cast<int>(v));
    }
  std::function<std::string(int, int)> walk = [&](int v, int from) {
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != from) kids.push_back(walk(w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = std::to_string(t.size[v]);
    if (kids.empty()) return s;
    s += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) s += (i ? "," : "") + kids[i];
    return s + ')';
  };
  return walk(root, -1);
}

// Rooting-independent form: the least rooted string over minimum-size nodes.
std::string unrooted(const Tree& t) {
  const std::int64_t least = *std::min_element(t.size.begin(), t.size.end());
  std::string best;
  for (std::size_t v = 0; v < t.size.size(); ++v)
    if (t.size[v] == least) {
      std::string s = rooted(t, static_cast<int>(v));
      if (best.empty() || s < best) best = s;
    }
  return best;
}

// Trees of the spec with edges below a size-1 cell cut, spec root first.
std::vector<Tree> spec_trees(const GraphSpec& spec) {
  std::vector<Tree> out;
  std::function<void(const CellSpec&, int, int)> walk = [&](const CellSpec& cell, int tree, int parent) {
    if (tree < 0) {
      out.push_back({});
      tree = static_cast<int>(out.size()) - 1;
      parent = -1;
    }
    const int self = static_cast<int>(out[tree].size.size());
    out[tree].parent.push_back(parent);
    out[tree].size.push_back(cell.size);
    for (const CellSpec& child : cell.children) {
      if (cell.size == 1) walk(child, -1, -1);
      else walk(child, tree, self);
    }
  };
  for (const ComponentSpec& c : spec.components) walk(c.tree, -1, -1);
  return out;
}

std::vector<std::string> recovered_forest(const Graph& g) {
  const auto v = check_amenable(g);
  REQUIRE(v.amenable);
  std::vector<std::string> out;
  for (const auto& comp : v.structure->forest.components) out.push_back(unrooted({comp.parent, comp.sizes}));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> expected_unrooted(const GraphSpec& spec) {
  std::vector<std::string> out;
  for (const Tree& t : spec_trees(spec)) out.push_back(unrooted(t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("root kinds round trip through their names") {
  for (RootKind k : {RootKind::Complete, RootKind::Empty, RootKind::Matching, RootKind::CoMatching, RootKind::FiveCycle})
    CHECK(root_kind_from_string(to_string(k)) == k);
  CHECK(root_kind_from_string("co_matching") == RootKind::CoMatching);
  CHECK_THROWS_AS(root_kind_from_string("STAR"), TaggedError);
}

TEST_CASE("Figure 5 instance") {
  const Generated g = generate(figure5_spec(), 7);
  CHECK(g.graph.order() == 100);
  CHECK(g.intended.num_cells() == 7);
  CHECK(validate_spec(g.graph, g.intended));
  CHECK(named(Family::Figure5).order() == 100);
  CHECK(expected_forest(figure5_spec()) == std::vector<std::string>{"5(10(20,30),15,5(15))"});
  CHECK(recovered_forest(g.graph) == expected_unrooted(figure5_spec()));
}

TEST_CASE("single-cell specs") {
  GraphSpec spec{{ComponentSpec{RootKind::Complete, CellSpec{6, false, false, {}}}}, {}};
  CHECK(generate(spec, 0).graph == named(Family::Complete, {6}));
  spec.components[0].head = RootKind::Matching;
  CHECK(generate(spec, 0).graph == named(Family::Matching, {3}));
  spec.components[0].head = RootKind::CoMatching;
  CHECK(generate(spec, 0).graph == complement(named(Family::Matching, {3})));
  spec.components[0].head = RootKind::FiveCycle;
  spec.components[0].tree.size = 5;
  CHECK(oracle::isomorphic(generate(spec, 0).graph, named(Family::Cycle, {5})));
}

TEST_CASE("jellyfish spec matches the named instance") {
  const std::string text = R"({"components": [{"head": "FIVE_CYCLE", "root_size": 5,
      "tree": {"size": 5, "children": [{"size": 5}, {"size": 5, "children": [{"size": 10}]}]}}]})";
  const Generated g = generate(spec_from_json(nlohmann::json::parse(text)), 3);
  CHECK(g.graph.order() == 25);
  CHECK(validate_spec(g.graph, g.intended));
  CHECK(oracle::isomorphic(g.graph, named(Family::JellyfishFig3)));
}

TEST_CASE("validation rejects a partition refinement would merge") {
  GraphSpec spec{{ComponentSpec{RootKind::Empty, CellSpec{1, false, false, {}}},
                  ComponentSpec{RootKind::Empty, CellSpec{1, false, false, {}}}},
                 {}};
  const Generated g = generate(spec, 0);
  CHECK(g.intended.num_cells() == 2);
  CHECK_FALSE(validate_spec(g.graph, g.intended));
}

TEST_CASE("named families") {
  CHECK(named(Family::Complete, {4}).size() == 6);
  CHECK(named(Family::Path, {5}).size() == 4);
  CHECK(named(Family::Cycle, {7}).size() == 7);
  CHECK(named(Family::CompleteBipartite, {2, 3}).size() == 6);
  CHECK(named(Family::Matching, {4}).order() == 8);
  const Graph fig1 = named(Family::Figure1);
  CHECK(fig1.order() == 11);
  CHECK(fig1.size() == 14);
  CHECK(named(Family::JellyfishFig3).size() == 25);
  CHECK(family_from_string("Kab") == Family::CompleteBipartite);
  CHECK(family_from_string("jellyfish_fig3") == Family::JellyfishFig3);
  CHECK_THROWS_AS(family_from_string("petersen"), TaggedError);
  CHECK_THROWS_AS(named(Family::Cycle, {2}), TaggedError);
  CHECK_THROWS_AS(named(Family::Path, {}), TaggedError);
  CHECK_THROWS_AS(named(Family::Figure1, {3}), TaggedError);
}

TEST_CASE("bad specs") {
  auto bad = [](const std::string& text) {
    try {
      check_spec(spec_from_json(nlohmann::json::parse(text)));
    } catch (const TaggedError& e) {
      return std::string(e.kind()) == "BadSpec";
    }
    return false;
  };
  CHECK(bad(R"({})"));
  CHECK(bad(R"({"components": [{"head": "HEXAGON", "root_size": 3}]})"));
  CHECK(bad(R"({"components": [{"head": "FIVE_CYCLE", "root_size": 4}]})"));
  CHECK(bad(R"({"components": [{"head": "MATCHING", "root_size": 6, "tree": {"size": 6, "children": [{"size": 9}]}}]})"));
  CHECK(bad(R"({"components": [{"head": "CO_MATCHING", "root_size": 5}]})"));
  CHECK(bad(R"({"components": [{"head": "COMPLETE", "root_size": 0}]})"));
  CHECK(bad(R"({"components": [{"head": "COMPLETE", "root_size": 2}], "wiring": [[0, 1]]})"));
  CHECK(bad(R"({"components": [{"head": "COMPLETE", "root_size": 2, "tree": {"size": 3}}]})"));
  CHECK_FALSE(bad(R"({"components": [{"head": "COMPLETE", "root_size": 2}, {"head": "EMPTY", "root_size": 3}],
                      "wiring": [{"a": 0, "b": 1}]})"));
}

TEST_CASE("spec JSON round trip") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_amenable(60, {}, rng());
    const nlohmann::json j = to_json(inst.spec);
    const GraphSpec back = spec_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(generate(back, 9).graph == generate(inst.spec, 9).graph);
  }
}

TEST_CASE("generation is deterministic per seed") {
  CHECK(generate(figure5_spec(), 1).graph == generate(figure5_spec(), 1).graph);
  CHECK(random_amenable(50, {}, 77).graph == random_amenable(50, {}, 77).graph);
  CHECK(scaling_family(2000, 5).graph == scaling_family(2000, 5).graph);
}

TEST_CASE("random instances are amenable with the intended forest") {
  std::mt19937_64 rng(41);
  std::set<std::string> shapes;
  for (int t = 0; t < 300; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 80)(rng);
    const auto inst = random_amenable(n, {}, rng());
    CHECK(inst.graph.order() <= n);
    CHECK(inst.partition == stable_partition(inst.graph));
    CHECK(check_amenable(inst.graph).amenable);
    CHECK(recovered_forest(inst.graph) == expected_unrooted(inst.spec));
    std::vector<std::string> rooted_expected;
    for (const Tree& tr : spec_trees(inst.spec)) rooted_expected.push_back(rooted(tr, 0));
    std::sort(rooted_expected.begin(), rooted_expected.end());
    CHECK(expected_forest(inst.spec) == rooted_expected);
    for (const auto& c : inst.spec.components) shapes.insert(shape_signature(c));
  }
  CHECK(shapes.size() >= 50);
}

TEST_CASE("small random instances") {
  CHECK(random_amenable(0, {}, 1).graph.order() == 0);
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(random_amenable(1, {}, s).graph.order() == 1);
  for (std::uint64_t s = 0; s < 200; ++s) CHECK(random_amenable(12, {}, s).graph.order() <= 12);
  ShapeParams p;
  p.max_attempts = 0;
  CHECK_THROWS_AS(random_amenable(5, p, 0), TaggedError);
}

TEST_CASE("shape signatures") {
  const auto sig = shape_signature(figure5_component());
  CHECK(sig == "COMPLETE:5(10(20k,30),15,5(15))");
  ComponentSpec a{RootKind::Empty, CellSpec{2, false, false, {CellSpec{4, false, false, {}}, CellSpec{2, true, false, {}}}}};
  ComponentSpec b{RootKind::Empty, CellSpec{2, false, false, {CellSpec{2, true, false, {}}, CellSpec{4, false, false, {}}}}};
  CHECK(shape_signature(a) == shape_signature(b));
  b.tree.children[1].co_stars = true;
  CHECK(shape_signature(a) != shape_signature(b));
}

TEST_CASE("scaling family") {
  for (std::int64_t n : {100, 1000, 10000, 50000}) {
    const auto inst = scaling_family(n, 1);
    CHECK(inst.graph.order() <= std::max<std::int64_t>(n, 52));
    CHECK(inst.graph.order() % 13 == 0);
    CHECK(inst.graph.size() <= 2 * inst.graph.order());
    CHECK(validate_spec(inst.graph, inst.partition));
  }
  CHECK(scaling_family(10, 0).graph.order() == 52);
}
