#include "amen/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

#include "amen/error.hpp"

namespace amen::oracle {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

void guard(int n, int limit) {
  if (n > std::min(limit, kMaxVertices)) throw TooLarge(n, std::min(limit, kMaxVertices));
}

// Vertex-colored structure with one or more edge layers, as bit rows.
struct Structure {
  int n = 0;
  std::vector<std::vector<Mask>> layers;
  std::vector<int> color;
};

Structure make_structure(std::initializer_list<const Graph*> graphs, std::vector<int> color) {
  Structure s;
  s.n = static_cast<int>(color.size());
  for (const Graph* g : graphs) {
    if (g->order() != s.n) throw TaggedError("BadArgument", "graph and coloring disagree on vertex count");
    std::vector<Mask> rows(s.n, 0);
    for (Vertex v = 0; v < s.n; ++v)
      for (Vertex w : g->neighbors(v)) rows[v] |= bit(w);
    s.layers.push_back(std::move(rows));
  }
  s.color = std::move(color);
  return s;
}

std::vector<int> base_colors(int n, const Partition* p) {
  if (!p) return std::vector<int>(n, 0);
  if (p->num_vertices() != n) throw TaggedError("BadArgument", "partition and graph disagree on vertex count");
  auto ids = p->cell_ids();
  return {ids.begin(), ids.end()};
}

// Backtracking search for color- and layer-preserving bijections a -> b.
class Matcher {
 public:
  Matcher(const Structure& a, const Structure& b) : a_(a), b_(b), n_(a.n), map_(a.n, -1) {
    plan();
  }

  // visit(map) returns true to stop; run() returns true if a visit stopped it.
  template <class F>
  bool run(F&& visit) {
    if (!compatible()) return false;
    return extend(0, visit);
  }

 private:
  bool compatible() const {
    if (a_.n != b_.n || a_.layers.size() != b_.layers.size()) return false;
    auto ca = a_.color, cb = b_.color;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
  }

  void plan() {
    std::map<int, std::vector<Vertex>> by_color_b;
    for (Vertex w = 0; w < b_.n; ++w) by_color_b[b_.color[w]].push_back(w);
    std::map<int, int> class_size_a;
    for (Vertex v = 0; v < n_; ++v) ++class_size_a[a_.color[v]];
    candidates_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) {
      auto it = by_color_b.find(a_.color[v]);
      if (it != by_color_b.end()) candidates_[v] = it->second;
    }
    // Greedy order: most links into the prefix, then smallest color class.
    Mask placed = 0;
    prefix_.assign(n_ + 1, 0);
    for (int depth = 0; depth < n_; ++depth) {
      int best = -1, best_links = -1, best_class = 0;
      for (Vertex v = 0; v < n_; ++v) {
        if (placed & bit(v)) continue;
        int links = 0;
        for (const auto& rows : a_.layers) links += std::popcount(rows[v] & placed);
        const int cls = class_size_a[a_.color[v]];
        if (links > best_links || (links == best_links && cls < best_class)) {
          best = v, best_links = links, best_class = cls;
        }
      }
      order_.push_back(best);
      prefix_[depth] = placed;
      placed |= bit(best);
    }
  }

  bool fits(Vertex v, Vertex w, Mask prefix) const {
    for (std::size_t l = 0; l < a_.layers.size(); ++l) {
      const Mask ra = a_.layers[l][v], rb = b_.layers[l][w];
      if (std::popcount(ra) != std::popcount(rb)) return false;
      Mask image = 0;
      for (Mask x = ra & prefix; x; x &= x - 1) image |= bit(map_[std::countr_zero(x)]);
      if (image != (rb & used_)) return false;
    }
    return true;
  }

  template <class F>
  bool extend(int depth, F& visit) {
    if (depth == n_) return visit(map_);
    const Vertex v = order_[depth];
    for (Vertex w : candidates_[v]) {
      if (used_ & bit(w)) continue;
      if (!fits(v, w, prefix_[depth])) continue;
      map_[v] = w;
      used_ |= bit(w);
      const bool stop = extend(depth + 1, visit);
      used_ &= ~bit(w);
      map_[v] = -1;
      if (stop) return true;
    }
    return false;
  }

  const Structure& a_;
  const Structure& b_;
  int n_;
  std::vector<Vertex> map_;
  Mask used_ = 0;
  std::vector<Vertex> order_;
  std::vector<Mask> prefix_;
  std::vector<std::vector<Vertex>> candidates_;
};

bool exists_map(const Structure& a, const Structure& b) {
  return Matcher(a, b).run([](const std::vector<Vertex>&) { return true; });
}

bool nontrivial_self_map(const Structure& s) {
  std::vector<int> sorted = s.color;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return false;
  return Matcher(s, s).run([](const std::vector<Vertex>& m) {
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] != static_cast<Vertex>(v)) return true;
    return false;
  });
}

// Group order by orbit-stabilizer: individualize one vertex at a time and
// measure its orbit with existence searches.
BigInt group_order(Structure s) {
  BigInt order = 1;
  int fresh = s.color.empty() ? 0 : *std::max_element(s.color.begin(), s.color.end()) + 1;
  while (true) {
    std::map<int, std::vector<Vertex>> classes;
    for (Vertex v = 0; v < s.n; ++v) classes[s.color[v]].push_back(v);
    const std::vector<Vertex>* pick = nullptr;
    for (const auto& [c, members] : classes)
      if (members.size() > 1 && (!pick || members.size() < pick->size())) pick = &members;
    if (!pick) break;
    const Vertex v = pick->front();
    Structure a = s;
    a.color[v] = fresh;
    long orbit = 1;
    for (std::size_t k = 1; k < pick->size(); ++k) {
      Structure b = s;
      b.color[(*pick)[k]] = fresh;
      if (exists_map(a, b)) ++orbit;
    }
    order *= orbit;
    s.color[v] = fresh++;
  }
  return order;
}

// Walks set partitions of the vertices into at most c blocks in
// restricted-growth form, pruning a prefix as soon as some non-identity
// automorphism preserves it with every unassigned vertex held fixed.
// leaf(blocks) is called for each distinguishing partition; it returns true
// to stop the walk.
template <class Leaf>
bool walk_distinguishing(const Graph& g, const std::vector<int>& cells, int c, Leaf&& leaf) {
  const int n = g.order();
  Structure s = make_structure({&g}, std::vector<int>(n, 0));
  auto key = [&](Vertex v, int col) { return cells[v] * (n + 1) + col; };
  for (Vertex v = 0; v < n; ++v) s.color[v] = -(v + 1);
  auto rec = [&](auto&& self, Vertex v, int blocks) -> bool {
    if (v == n) return leaf(blocks);
    const int top = std::min(c, blocks + 1);
    for (int col = 0; col < top; ++col) {
      s.color[v] = key(v, col);
      if (!nontrivial_self_map(s) && self(self, v + 1, std::max(blocks, col + 1))) return true;
    }
    s.color[v] = -(v + 1);
    return false;
  };
  return rec(rec, 0, 0);
}

BigInt binom(const BigInt& f, std::int64_t m) {
  if (m < 0 || f < m) return 0;
  BigInt v = 1;
  for (std::int64_t k = 0; k < m; ++k) v = v * (f - k) / (k + 1);
  return v;
}

}  // namespace

Permutation::Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Vertex v : image_) {
    if (v < 0 || v >= size() || seen[v]) throw TaggedError("BadArgument", "not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), 0);
  return Permutation(std::move(id));
}

bool Permutation::is_identity() const noexcept {
  for (int v = 0; v < size(); ++v)
    if (image_[v] != v) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(image_.size());
  for (int v = 0; v < size(); ++v) inv[image_[v]] = v;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw TaggedError("BadArgument", "permutation sizes differ");
  std::vector<Vertex> img(a.size());
  for (int v = 0; v < a.size(); ++v) img[v] = a(b(v));
  return Permutation(std::move(img));
}

AutGroup automorphisms(const Graph& g, const Partition* p, int limit_n) {
  guard(g.order(), limit_n);
  const Structure s = make_structure({&g}, base_colors(g.order(), p));
  AutGroup group;
  Matcher(s, s).run([&](const std::vector<Vertex>& m) {
    group.elements.emplace_back(m);
    return false;
  });
  std::sort(group.elements.begin(), group.elements.end());
  return group;
}

BigInt automorphism_count(const Graph& g, const Partition* p, int limit_n) {
  guard(g.order(), limit_n);
  return group_order(make_structure({&g}, base_colors(g.order(), p)));
}

BigInt common_automorphism_count(const Graph& a, const Graph& b, const Partition* p, int limit_n) {
  guard(a.order(), limit_n);
  return group_order(make_structure({&a, &b}, base_colors(a.order(), p)));
}

bool has_nontrivial_automorphism(const Graph& g, std::span<const int> colors) {
  guard(g.order(), kMaxVertices);
  return nontrivial_self_map(make_structure({&g}, {colors.begin(), colors.end()}));
}

std::optional<Permutation> find_isomorphism(const Graph& g, const Graph& h, int limit_n) {
  guard(g.order(), limit_n);
  guard(h.order(), limit_n);
  if (g.order() != h.order() || g.size() != h.size()) return std::nullopt;
  const Structure a = make_structure({&g}, std::vector<int>(g.order(), 0));
  const Structure b = make_structure({&h}, std::vector<int>(h.order(), 0));
  std::optional<Permutation> found;
  Matcher(a, b).run([&](const std::vector<Vertex>& m) {
    found.emplace(m);
    return true;
  });
  return found;
}

bool isomorphic(const Graph& g, const Graph& h, int limit_n) {
  return find_isomorphism(g, h, limit_n).has_value();
}

int dist_number_bf(const Graph& g, const Partition* p, int limit_n) {
  guard(g.order(), limit_n);
  const int n = g.order();
  const auto cells = base_colors(n, p);
  for (int c = 1; c <= n; ++c)
    if (walk_distinguishing(g, cells, c, [](int) { return true; })) return c;
  return 0;
}

BigInt dist_count_bf(const Graph& g, const Partition* p, int c, int limit_n) {
  guard(g.order(), limit_n);
  if (c < 1) throw TaggedError("BadColors", "color count must be positive");
  const auto cells = base_colors(g.order(), p);
  // A partition into b blocks stands for c (c-1) ... (c-b+1) labelings.
  BigInt labelings = 0;
  walk_distinguishing(g, cells, c, [&](int blocks) {
    BigInt falling = 1;
    for (int k = 0; k < blocks; ++k) falling *= c - k;
    labelings += falling;
    return false;
  });
  const BigInt order = automorphism_count(g, p, limit_n);
  if (labelings % order != 0)
    throw TaggedError("DivisibilityViolated", "distinguishing labelings not divisible by the group order");
  return labelings / order;
}

int fix_number_bf(const Graph& g, const Partition* p, int limit_n) {
  guard(g.order(), limit_n);
  const int n = g.order();
  const auto cells = base_colors(n, p);
  Structure s = make_structure({&g}, cells);
  for (int k = 0; k <= n; ++k) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      for (Vertex v = 0; v < n; ++v) s.color[v] = cells[v];
      for (int j = 0; j < k; ++j) s.color[pick[j]] = n + pick[j];
      if (!nontrivial_self_map(s)) return k;
      int j = k - 1;
      while (j >= 0 && pick[j] == n - k + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int t = j + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  return n;
}

RootedTree::RootedTree(std::vector<int> parent) : parent_(std::move(parent)) {
  const int n = size();
  int roots = 0;
  for (int v = 0; v < n; ++v) {
    if (parent_[v] == -1) ++roots, root_ = v;
    else if (parent_[v] < 0 || parent_[v] >= n || parent_[v] == v) throw TaggedError("BadTree", "parent out of range");
  }
  if (n > 0 && roots != 1) throw TaggedError("BadTree", "tree needs exactly one root");
  for (int v = 0; v < n; ++v) {
    int u = v, steps = 0;
    while (parent_[u] != -1) {
      u = parent_[u];
      if (++steps > n) throw TaggedError("BadTree", "parent array has a cycle");
    }
  }
}

RootedTree RootedTree::from_graph(const Graph& g, Vertex root) {
  const int n = g.order();
  if (n == 0 || root < 0 || root >= n || g.size() != n - 1 || !is_connected(g))
    throw TaggedError("NotATree", "graph is not a tree or root is out of range");
  std::vector<int> parent(n, -2);
  parent[root] = -1;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v))
      if (parent[w] == -2) parent[w] = v, queue.push_back(w);
  }
  return RootedTree(std::move(parent));
}

Graph RootedTree::to_graph() const {
  std::vector<Edge> edges;
  for (int v = 0; v < size(); ++v)
    if (parent_[v] >= 0) edges.emplace_back(parent_[v], v);
  return Graph::from_edges(size(), edges);
}

Partition RootedTree::root_partition() const {
  std::vector<int> colors(size(), 0);
  if (size() > 0) colors[root_] = 1;
  return Partition::from_colors(colors);
}

namespace {

// AHU labels: shapes[label] is the sorted child-label multiset of that shape.
struct Shapes {
  std::vector<std::vector<int>> children;
  int root_label = -1;
};

Shapes ahu(const RootedTree& t) {
  const int n = t.size();
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v)
    if (t.parent()[v] >= 0) kids[t.parent()[v]].push_back(v);
  std::vector<int> order{t.root()};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : kids[order[i]]) order.push_back(w);
  std::map<std::vector<int>, int> ids;
  std::vector<int> label(n);
  Shapes out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<int> key;
    for (int w : kids[*it]) key.push_back(label[w]);
    std::sort(key.begin(), key.end());
    auto [pos, inserted] = ids.emplace(key, static_cast<int>(out.children.size()));
    if (inserted) out.children.push_back(key);
    label[*it] = pos->second;
  }
  out.root_label = label[t.root()];
  return out;
}

// Runs of equal labels in a sorted multiset, as (label, count).
std::vector<std::pair<int, std::int64_t>> runs(const std::vector<int>& sorted) {
  std::vector<std::pair<int, std::int64_t>> out;
  for (int x : sorted) {
    if (!out.empty() && out.back().first == x) ++out.back().second;
    else out.emplace_back(x, 1);
  }
  return out;
}

}  // namespace

BigInt tree_dist_count(const RootedTree& t, std::int64_t c) {
  if (c < 1) throw TaggedError("BadColors", "color count must be positive");
  if (t.size() == 0) return 1;
  const Shapes s = ahu(t);
  std::vector<BigInt> value(s.children.size());
  for (std::size_t l = 0; l < s.children.size(); ++l) {
    BigInt v = c;
    for (auto [child, m] : runs(s.children[l])) v *= binom(value[child], m);
    value[l] = v;
  }
  return value[s.root_label];
}

std::int64_t tree_dist_number(const RootedTree& t) {
  for (std::int64_t c = 1; c <= t.size(); ++c)
    if (tree_dist_count(t, c) > 0) return c;
  return 0;
}

std::int64_t tree_fix(const RootedTree& t) {
  if (t.size() == 0) return 0;
  const Shapes s = ahu(t);
  std::vector<std::int64_t> value(s.children.size());
  for (std::size_t l = 0; l < s.children.size(); ++l) {
    std::int64_t v = 0;
    for (auto [child, m] : runs(s.children[l])) v += value[child] == 0 ? m - 1 : m * value[child];
    value[l] = v;
  }
  return value[s.root_label];
}

namespace {

struct IsoClass {
  const Graph* graph;
  int copies;
};

std::vector<IsoClass> group_parts(std::span<const ForestPart> parts, int limit_n) {
  std::vector<IsoClass> classes;
  for (const ForestPart& part : parts) {
    if (part.multiplicity < 1) throw TaggedError("BadArgument", "multiplicity must be positive");
    if (!is_connected(part.graph) || part.graph.order() == 0)
      throw TaggedError("Disconnected", "forest parts must be connected and non-empty");
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const IsoClass& c) { return isomorphic(*c.graph, part.graph, limit_n); });
    if (it == classes.end()) classes.push_back({&part.graph, part.multiplicity});
    else it->copies += part.multiplicity;
  }
  return classes;
}

}  // namespace

int forest_dist(std::span<const ForestPart> parts, int limit_n) {
  int best = 0;
  for (const IsoClass& cls : group_parts(parts, limit_n)) {
    int c = 1;
    while (dist_count_bf(*cls.graph, nullptr, c, limit_n) < cls.copies) ++c;
    best = std::max(best, c);
  }
  return best;
}

int forest_fix(std::span<const ForestPart> parts, int limit_n) {
  int total = 0;
  for (const IsoClass& cls : group_parts(parts, limit_n)) {
    const int f = fix_number_bf(*cls.graph, nullptr, limit_n);
    total += f == 0 ? cls.copies - 1 : cls.copies * f;
  }
  return total;
}

Jellyfish materialize_jellyfish(const Graph& g, const CellGraph& cg, const AnisotropicComponent& comp) {
  const Partition& p = cg.partition();
  std::vector<int> local(cg.num_cells(), -1);
  for (int i = 0; i < comp.num_nodes(); ++i) local[comp.cells[i]] = i;
  auto tree_edge = [&](int x, int y) {
    const int lx = local[x], ly = local[y];
    return comp.parent[lx] == ly || comp.parent[ly] == lx;
  };

  Jellyfish jf;
  for (int cell : comp.cells)
    for (Vertex v : p.cell(cell)) jf.vertices.push_back(v);
  std::sort(jf.vertices.begin(), jf.vertices.end());
  std::vector<int> to_new(g.order(), -1);
  for (std::size_t i = 0; i < jf.vertices.size(); ++i) {
    to_new[jf.vertices[i]] = static_cast<int>(i);
    jf.cell.push_back(p.cell_of(jf.vertices[i]));
  }

  std::vector<Edge> edges;
  const int root = comp.root();
  const CellKind root_kind = cg.kind(root);
  if (root_kind == CellKind::Other) throw TaggedError("NotAmenableComponent", "root cell kind not covered");
  const bool flip_root = root_kind == CellKind::Empty || root_kind == CellKind::Matching;
  if (flip_root) {
    auto r = p.cell(root);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j)
        if (!g.adjacent(r[i], r[j])) edges.emplace_back(to_new[r[i]], to_new[r[j]]);
  }
  for (int cell : comp.cells)
    if (cell != root && !is_homogeneous(cg.kind(cell)))
      throw TaggedError("NotAmenableComponent", "heterogeneous non-root cell");

  for (Vertex u : jf.vertices) {
    const int cu = p.cell_of(u);
    for (Vertex w : g.neighbors(u)) {
      if (w <= u || to_new[w] < 0) continue;
      const int cw = p.cell_of(w);
      if (cu == cw) {
        if (cu == root && !flip_root) edges.emplace_back(to_new[u], to_new[w]);
        continue;
      }
      const PairKind k = cg.pair_kind(cu, cw);
      if (tree_edge(cu, cw)) {
        if (k == PairKind::AnisoStars) edges.emplace_back(to_new[u], to_new[w]);
        else if (k != PairKind::AnisoCoStars)
          throw TaggedError("NotAmenableComponent", "tree edge is neither stars nor co-stars");
      } else if (!is_isotropic(k)) {
        throw TaggedError("NotAmenableComponent", "anisotropic pair off the tree");
      }
    }
  }
  for (int i = 1; i < comp.num_nodes(); ++i) {
    const int x = comp.cells[comp.parent[i]], y = comp.cells[i];
    if (cg.pair_kind(x, y) != PairKind::AnisoCoStars) continue;
    for (Vertex u : p.cell(x))
      for (Vertex w : p.cell(y))
        if (!g.adjacent(u, w)) edges.emplace_back(to_new[u], to_new[w]);
  }
  jf.graph = Graph::from_edges(static_cast<int>(jf.vertices.size()), edges);
  return jf;
}

}  // namespace amen::oracle
