#include "amen/generators.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <functional>
#include <optional>
#include <random>

#include "amen/error.hpp"
#include "amen/refinement.hpp"

namespace amen::gen {

namespace {

[[noreturn]] void bad_spec(const std::string& why) { throw TaggedError("BadSpec", why); }
[[noreturn]] void bad_params(const std::string& why) { throw TaggedError("BadParams", why); }

struct FlatCell {
  std::int64_t size = 0;
  std::int64_t offset = 0;
  int parent = -1;
  int component = 0;
  const CellSpec* spec = nullptr;
};

std::vector<FlatCell> flatten(const GraphSpec& spec) {
  std::vector<FlatCell> out;
  std::int64_t offset = 0;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    std::function<void(const CellSpec&, int)> walk = [&](const CellSpec& cell, int parent) {
      const int id = static_cast<int>(out.size());
      out.push_back({cell.size, offset, parent, static_cast<int>(c), &cell});
      offset += cell.size;
      for (const CellSpec& child : cell.children) walk(child, id);
    };
    walk(spec.components[c].tree, -1);
  }
  return out;
}

void check_cell(const CellSpec& cell, bool root) {
  if (cell.size < 1) bad_spec("cell sizes must be positive");
  if (root && (cell.complete || cell.co_stars)) bad_spec("root cells take their shape from the head kind");
  for (const CellSpec& child : cell.children) {
    if (child.size % cell.size != 0) bad_spec("child size must be a multiple of its parent's size");
    check_cell(child, false);
  }
}

// "size(child,...)" with children sorted; `mark` adds per-cell flags.
struct Canon {
  std::function<std::string(const CellSpec&)> mark;
  std::string operator()(const CellSpec& cell) const {
    std::vector<std::string> kids;
    for (const CellSpec& child : cell.children) kids.push_back((*this)(child));
    return join(std::to_string(cell.size) + (mark ? mark(cell) : ""), kids);
  }
  static std::string join(std::string head, std::vector<std::string> kids) {
    if (kids.empty()) return head;
    std::sort(kids.begin(), kids.end());
    head += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) head += (i ? "," : "") + kids[i];
    return head + ')';
  }
};

std::string upper(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

CellSpec cell_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad_spec("tree nodes must be objects");
  CellSpec cell;
  if (!j.contains("size") || !j["size"].is_number_integer()) bad_spec("tree node needs an integer size");
  cell.size = j["size"].get<std::int64_t>();
  if (j.contains("complete")) cell.complete = j["complete"].get<bool>();
  if (j.contains("co_stars")) cell.co_stars = j["co_stars"].get<bool>();
  if (j.contains("children")) {
    if (!j["children"].is_array()) bad_spec("children must be an array");
    for (const auto& child : j["children"]) cell.children.push_back(cell_from_json(child));
  }
  return cell;
}

nlohmann::json cell_to_json(const CellSpec& cell) {
  nlohmann::json j{{"size", cell.size}};
  if (cell.complete) j["complete"] = true;
  if (cell.co_stars) j["co_stars"] = true;
  if (!cell.children.empty()) {
    j["children"] = nlohmann::json::array();
    for (const CellSpec& child : cell.children) j["children"].push_back(cell_to_json(child));
  }
  return j;
}

}  // namespace

const char* to_string(RootKind k) {
  switch (k) {
    case RootKind::Complete: return "COMPLETE";
    case RootKind::Empty: return "EMPTY";
    case RootKind::Matching: return "MATCHING";
    case RootKind::CoMatching: return "CO_MATCHING";
    case RootKind::FiveCycle: return "FIVE_CYCLE";
  }
  return "?";
}

RootKind root_kind_from_string(const std::string& s) {
  const std::string u = upper(s);
  for (RootKind k : {RootKind::Complete, RootKind::Empty, RootKind::Matching, RootKind::CoMatching, RootKind::FiveCycle})
    if (u == to_string(k)) return k;
  bad_spec("unknown head kind '" + s + "'");
}

GraphSpec spec_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
      bad_spec("spec needs a components array");
    GraphSpec spec;
    for (const auto& c : j["components"]) {
      ComponentSpec comp;
      comp.head = root_kind_from_string(c.at("head").get<std::string>());
      if (c.contains("tree")) {
        comp.tree = cell_from_json(c["tree"]);
        if (c.contains("root_size") && c["root_size"].get<std::int64_t>() != comp.tree.size)
          bad_spec("root_size disagrees with tree.size");
      } else {
        comp.tree.size = c.at("root_size").get<std::int64_t>();
      }
      spec.components.push_back(std::move(comp));
    }
    if (j.contains("wiring")) {
      for (const auto& w : j["wiring"]) {
        if (w.is_array() && w.size() == 2) spec.wiring.push_back({w[0].get<int>(), w[1].get<int>()});
        else spec.wiring.push_back({w.at("a").get<int>(), w.at("b").get<int>()});
      }
    }
    check_spec(spec);
    return spec;
  } catch (const nlohmann::json::exception& e) {
    bad_spec(std::string("malformed spec: ") + e.what());
  }
}

nlohmann::json to_json(const GraphSpec& spec) {
  nlohmann::json comps = nlohmann::json::array();
  for (const ComponentSpec& c : spec.components)
    comps.push_back({{"head", to_string(c.head)}, {"root_size", c.tree.size}, {"tree", cell_to_json(c.tree)}});
  nlohmann::json wiring = nlohmann::json::array();
  for (const Wire& w : spec.wiring) wiring.push_back({{"a", w.a}, {"b", w.b}});
  return {{"components", comps}, {"wiring", wiring}};
}

void check_spec(const GraphSpec& spec) {
  for (const ComponentSpec& c : spec.components) {
    check_cell(c.tree, true);
    const std::int64_t s = c.tree.size;
    if (c.head == RootKind::FiveCycle && s != 5) bad_spec("FIVE_CYCLE root needs size 5");
    if ((c.head == RootKind::Matching || c.head == RootKind::CoMatching) && (s < 4 || s % 2 != 0))
      bad_spec("MATCHING and CO_MATCHING roots need an even size >= 4");
  }
  const auto cells = flatten(spec);
  std::int64_t n = 0;
  for (const FlatCell& f : cells) n += f.size;
  if (n > INT_MAX) bad_spec("spec has too many vertices");
  for (const Wire& w : spec.wiring) {
    const int k = static_cast<int>(cells.size());
    if (w.a < 0 || w.b < 0 || w.a >= k || w.b >= k) bad_spec("wiring refers to a missing cell");
    if (cells[w.a].component == cells[w.b].component) bad_spec("wiring must join cells of different components");
  }
}

Generated generate(const GraphSpec& spec, std::uint64_t seed) {
  check_spec(spec);
  std::mt19937_64 rng(seed);
  const auto cells = flatten(spec);
  const std::int64_t n = cells.empty() ? 0 : cells.back().offset + cells.back().size;
  std::vector<Edge> edges;
  auto vtx = [](std::int64_t x) { return static_cast<Vertex>(x); };

  for (std::size_t id = 0; id < cells.size(); ++id) {
    const FlatCell& f = cells[id];
    const std::int64_t a = f.offset, s = f.size;
    if (f.parent < 0) {
      const RootKind kind = spec.components[f.component].head;
      for (std::int64_t i = 0; i < s; ++i)
        for (std::int64_t j = i + 1; j < s; ++j) {
          const bool paired = i % 2 == 0 && j == i + 1;
          bool on = false;
          switch (kind) {
            case RootKind::Complete: on = true; break;
            case RootKind::Empty: on = false; break;
            case RootKind::Matching: on = paired; break;
            case RootKind::CoMatching: on = !paired; break;
            case RootKind::FiveCycle: on = j == i + 1 || (i == 0 && j == 4); break;
          }
          if (on) edges.emplace_back(vtx(a + i), vtx(a + j));
        }
      continue;
    }
    if (f.spec->complete)
      for (std::int64_t i = 0; i < s; ++i)
        for (std::int64_t j = i + 1; j < s; ++j) edges.emplace_back(vtx(a + i), vtx(a + j));

    const FlatCell& p = cells[f.parent];
    const std::int64_t m = s / p.size;
    std::vector<Vertex> order(s);
    for (std::int64_t i = 0; i < s; ++i) order[i] = vtx(a + i);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::int64_t k = 0; k < s; ++k) {
      const std::int64_t owner = k / m;
      if (!f.spec->co_stars) {
        edges.emplace_back(vtx(p.offset + owner), order[k]);
      } else {
        for (std::int64_t q = 0; q < p.size; ++q)
          if (q != owner) edges.emplace_back(vtx(p.offset + q), order[k]);
      }
    }
  }
  for (const Wire& w : spec.wiring) {
    const FlatCell &x = cells[w.a], &y = cells[w.b];
    for (std::int64_t i = 0; i < x.size; ++i)
      for (std::int64_t j = 0; j < y.size; ++j) edges.emplace_back(vtx(x.offset + i), vtx(y.offset + j));
  }

  std::vector<int> colors(n);
  for (std::size_t id = 0; id < cells.size(); ++id)
    std::fill_n(colors.begin() + cells[id].offset, cells[id].size, static_cast<int>(id));
  return {Graph::from_edges(static_cast<int>(n), edges), Partition::from_colors(colors)};
}

bool validate_spec(const Graph& g, const Partition& intended) {
  return intended.num_vertices() == g.order() && stable_partition(g) == intended;
}

std::string shape_signature(const ComponentSpec& c) {
  Canon canon{[](const CellSpec& cell) {
    return std::string(cell.complete ? "k" : "") + (cell.co_stars ? "~" : "");
  }};
  return std::string(to_string(c.head)) + ":" + canon(c.tree);
}

std::vector<std::string> expected_forest(const GraphSpec& spec) {
  std::vector<std::string> trees;
  std::function<std::string(const CellSpec&)> walk = [&](const CellSpec& cell) {
    std::vector<std::string> kids;
    for (const CellSpec& child : cell.children) {
      if (cell.size == 1) trees.push_back(walk(child));
      else kids.push_back(walk(child));
    }
    return Canon::join(std::to_string(cell.size), std::move(kids));
  };
  for (const ComponentSpec& c : spec.components) trees.push_back(walk(c.tree));
  std::sort(trees.begin(), trees.end());
  return trees;
}

Family family_from_string(const std::string& s) {
  static const std::pair<const char*, Family> names[] = {
      {"K", Family::Complete},         {"complete", Family::Complete},
      {"P", Family::Path},             {"path", Family::Path},
      {"C", Family::Cycle},            {"cycle", Family::Cycle},
      {"Kab", Family::CompleteBipartite}, {"complete_bipartite", Family::CompleteBipartite},
      {"rK2", Family::Matching},       {"matching", Family::Matching},
      {"figure1", Family::Figure1},    {"jellyfish_fig3", Family::JellyfishFig3},
      {"figure5", Family::Figure5},
  };
  for (const auto& [name, f] : names)
    if (s == name) return f;
  bad_params("unknown family '" + s + "'");
}

Graph named(Family f, const std::vector<std::int64_t>& params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) bad_params("family expects " + std::to_string(count) + " parameter(s)");
    for (std::int64_t x : params)
      if (x < 0 || x > 1'000'000) bad_params("parameter out of range");
  };
  std::vector<Edge> edges;
  switch (f) {
    case Family::Complete: {
      want(1);
      const int n = static_cast<int>(params[0]);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      return Graph::from_edges(n, edges);
    }
    case Family::Path: {
      want(1);
      const int n = static_cast<int>(params[0]);
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      return Graph::from_edges(n, edges);
    }
    case Family::Cycle: {
      want(1);
      const int n = static_cast<int>(params[0]);
      if (n < 3) bad_params("cycles need n >= 3");
      for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      return Graph::from_edges(n, edges);
    }
    case Family::CompleteBipartite: {
      want(2);
      const int a = static_cast<int>(params[0]), b = static_cast<int>(params[1]);
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
      return Graph::from_edges(a + b, edges);
    }
    case Family::Matching: {
      want(1);
      const int r = static_cast<int>(params[0]);
      for (int i = 0; i < r; ++i) edges.emplace_back(2 * i, 2 * i + 1);
      return Graph::from_edges(2 * r, edges);
    }
    case Family::Figure1: {
      want(0);
      // c = 0, v_i = i.
      for (int v = 1; v <= 8; ++v) edges.emplace_back(0, v);
      edges.insert(edges.end(), {{1, 9}, {8, 9}, {4, 10}, {5, 10}, {2, 3}, {6, 7}});
      return Graph::from_edges(11, edges);
    }
    case Family::JellyfishFig3: {
      want(0);
      // Head 0..4; leaf 5+i and inner 10+i hang off head vertex i; the inner
      // vertex carries leaves 15+2i and 16+2i.
      for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, 5 + i);
        edges.emplace_back(i, 10 + i);
        edges.emplace_back(10 + i, 15 + 2 * i);
        edges.emplace_back(10 + i, 16 + 2 * i);
      }
      return Graph::from_edges(25, edges);
    }
    case Family::Figure5:
      want(0);
      return generate(figure5_spec(), 0).graph;
  }
  bad_params("unknown family");
}

ComponentSpec figure5_component() {
  auto leaf = [](std::int64_t s) { return CellSpec{s, false, false, {}}; };
  ComponentSpec c;
  c.head = RootKind::Complete;
  c.tree = CellSpec{5, false, false,
                    {CellSpec{10, false, false, {leaf(30), CellSpec{20, true, false, {}}}}, leaf(15),
                     CellSpec{5, false, false, {leaf(15)}}}};
  return c;
}

GraphSpec figure5_spec() { return GraphSpec{{figure5_component()}, {}}; }

namespace {

constexpr std::int64_t kMaxCompleteCell = 16;
constexpr std::int64_t kMaxDenseProduct = 1024;

struct Sampler {
  const ShapeParams& params;
  std::mt19937_64& rng;
  std::int64_t budget = 0;

  std::int64_t pick(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng); }

  void grow(CellSpec& cell, int depth) {
    if (depth >= params.max_depth) return;
    const std::int64_t wanted = pick(0, params.max_children);
    Canon canon{[](const CellSpec& c) { return std::string(c.complete ? "k" : "") + (c.co_stars ? "~" : ""); }};
    std::vector<std::string> seen;
    for (std::int64_t k = 0; k < wanted; ++k) {
      const std::int64_t max_m = std::min<std::int64_t>(params.max_multiplicity, budget / cell.size);
      if (max_m < 1) return;
      CellSpec child;
      child.size = cell.size * pick(1, max_m);
      child.complete = child.size >= 2 && child.size <= kMaxCompleteCell && coin(0.3);
      child.co_stars = cell.size >= 2 && cell.size * child.size <= kMaxDenseProduct && coin(0.2);
      budget -= child.size;
      grow(child, depth + 1);
      const std::string sig = canon(child);
      // Identical siblings cannot be told apart by refinement.
      if (std::find(seen.begin(), seen.end(), sig) != seen.end()) {
        std::function<std::int64_t(const CellSpec&)> total = [&](const CellSpec& c) {
          std::int64_t t = c.size;
          for (const CellSpec& x : c.children) t += total(x);
          return t;
        };
        budget += total(child);
        continue;
      }
      seen.push_back(sig);
      cell.children.push_back(std::move(child));
    }
  }

  std::optional<ComponentSpec> component() {
    std::vector<std::pair<RootKind, std::vector<std::int64_t>>> options;
    std::vector<std::int64_t> small, even;
    for (std::int64_t s = 1; s <= std::min<std::int64_t>(budget, 5); ++s) small.push_back(s);
    for (std::int64_t s = 4; s <= std::min<std::int64_t>(budget, 8); s += 2) even.push_back(s);
    if (!small.empty()) {
      options.push_back({RootKind::Complete, small});
      options.push_back({RootKind::Empty, small});
    }
    if (budget >= 5) options.push_back({RootKind::FiveCycle, {5}});
    if (!even.empty()) {
      options.push_back({RootKind::Matching, even});
      options.push_back({RootKind::CoMatching, even});
    }
    if (options.empty()) return std::nullopt;
    const auto& [kind, sizes] = options[pick(0, static_cast<std::int64_t>(options.size()) - 1)];
    ComponentSpec c;
    c.head = kind;
    c.tree.size = sizes[pick(0, static_cast<std::int64_t>(sizes.size()) - 1)];
    budget -= c.tree.size;
    grow(c.tree, 0);
    return c;
  }
};

std::vector<std::int64_t> cell_sizes(const GraphSpec& spec) {
  std::vector<std::int64_t> out;
  for (const FlatCell& f : flatten(spec)) out.push_back(f.size);
  return out;
}

}  // namespace

RandomInstance random_amenable(int n_target, const ShapeParams& params, std::uint64_t seed) {
  if (n_target < 0) bad_params("n_target must be non-negative");
  if (params.max_components < 1 || params.max_depth < 0 || params.max_children < 0 || params.max_multiplicity < 1 ||
      params.max_attempts < 1)
    bad_params("invalid shape parameters");
  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
    Sampler sampler{params, rng, n_target};
    GraphSpec spec;
    const std::int64_t comps = std::uniform_int_distribution<std::int64_t>(1, params.max_components)(rng);
    for (std::int64_t k = 0; k < comps; ++k) {
      auto c = sampler.component();
      if (!c) break;
      spec.components.push_back(std::move(*c));
    }
    // Wiring between components, one random cell pair per chosen component pair.
    std::vector<std::vector<int>> cells_of(spec.components.size());
    {
      const auto flat = flatten(spec);
      for (std::size_t id = 0; id < flat.size(); ++id) cells_of[flat[id].component].push_back(static_cast<int>(id));
    }
    const auto sizes = cell_sizes(spec);
    for (std::size_t i = 0; i < cells_of.size(); ++i)
      for (std::size_t j = i + 1; j < cells_of.size(); ++j) {
        if (!sampler.coin(params.wiring_probability)) continue;
        const int a = cells_of[i][sampler.pick(0, static_cast<std::int64_t>(cells_of[i].size()) - 1)];
        const int b = cells_of[j][sampler.pick(0, static_cast<std::int64_t>(cells_of[j].size()) - 1)];
        if (sizes[a] * sizes[b] <= kMaxDenseProduct) spec.wiring.push_back({a, b});
      }
    Generated g = generate(spec, rng());
    if (validate_spec(g.graph, g.intended))
      return {std::move(spec), std::move(g.graph), std::move(g.intended), attempt};
  }
  throw TaggedError("BudgetExhausted", "no validated instance within the attempt budget");
}

GraphSpec scaling_spec(std::int64_t n_target) {
  std::int64_t s = std::max<std::int64_t>(4, n_target / 13);
  if (s % 2) --s;
  s = std::max<std::int64_t>(s, 4);
  auto cell = [](std::int64_t size, std::vector<CellSpec> kids = {}) {
    return CellSpec{size, false, false, std::move(kids)};
  };
  ComponentSpec c;
  c.head = RootKind::Matching;
  c.tree = cell(s, {cell(2 * s, {cell(2 * s), cell(4 * s, {cell(4 * s)})})});
  return GraphSpec{{c}, {}};
}

RandomInstance scaling_family(std::int64_t n_target, std::uint64_t seed) {
  GraphSpec spec = scaling_spec(n_target);
  Generated g = generate(spec, seed);
  return {std::move(spec), std::move(g.graph), std::move(g.intended), 1};
}

}  // namespace amen::gen
