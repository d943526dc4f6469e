#include "amen/cell_graph.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "amen/error.hpp"
#include "amen/refinement.hpp"

namespace amen {

const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::Empty: return "EMPTY";
    case CellKind::Complete: return "COMPLETE";
    case CellKind::Matching: return "MATCHING";
    case CellKind::CoMatching: return "CO_MATCHING";
    case CellKind::FiveCycle: return "FIVE_CYCLE";
    case CellKind::Other: return "OTHER";
  }
  return "?";
}

const char* to_string(PairKind k) {
  switch (k) {
    case PairKind::IsoEmpty: return "ISO_EMPTY";
    case PairKind::IsoComplete: return "ISO_COMPLETE";
    case PairKind::AnisoStars: return "ANISO_STARS";
    case PairKind::AnisoCoStars: return "ANISO_CO_STARS";
    case PairKind::Other: return "OTHER";
  }
  return "?";
}

const char* to_string(ForestIssue::Kind k) {
  switch (k) {
    case ForestIssue::Kind::NotATree: return "NotATree";
    case ForestIssue::Kind::NotMonotone: return "NotMonotone";
    case ForestIssue::Kind::BadDivisibility: return "BadDivisibility";
    case ForestIssue::Kind::MultipleHeterogeneous: return "MultipleHeterogeneous";
    case ForestIssue::Kind::HeterogeneousNotMinimal: return "HeterogeneousNotMinimal";
  }
  return "?";
}

CellKind classify_cell(std::int64_t size, std::int64_t d_self) {
  if (d_self == 0) return CellKind::Empty;
  if (d_self == size - 1) return CellKind::Complete;
  if (d_self == 1 && size >= 4 && size % 2 == 0) return CellKind::Matching;
  if (d_self == size - 2 && size >= 4 && size % 2 == 0) return CellKind::CoMatching;
  if (size == 5 && d_self == 2) return CellKind::FiveCycle;
  return CellKind::Other;
}

PairKind classify_pair(std::int64_t small_size, std::int64_t large_size, std::int64_t d_small_large,
                       std::int64_t d_large_small) {
  if (d_small_large == 0) return PairKind::IsoEmpty;
  if (d_small_large == large_size) return PairKind::IsoComplete;
  if (d_large_small == 1) return PairKind::AnisoStars;
  if (d_large_small == small_size - 1) return PairKind::AnisoCoStars;
  return PairKind::Other;
}

std::int64_t CellGraph::d(int i, int j) const {
  auto it = d_.find({i, j});
  return it == d_.end() ? 0 : it->second;
}

PairKind CellGraph::pair_kind(int i, int j) const {
  auto it = pair_index_.find({std::min(i, j), std::max(i, j)});
  return it == pair_index_.end() ? PairKind::IsoEmpty : pairs_[it->second].kind;
}

CellGraph build_cell_graph(const Graph& g, const Partition& p) {
  if (!is_equitable(g, p))
    throw PartitionError(PartitionError::Code::NotEquitable, "partition is not equitable for the graph");
  CellGraph cg;
  cg.partition_ = p;
  const int k = p.num_cells();
  cg.sizes_.resize(static_cast<std::size_t>(k));
  cg.kinds_.resize(static_cast<std::size_t>(k));
  std::vector<std::int64_t> count(static_cast<std::size_t>(k), 0);
  std::vector<int> touched;
  for (int i = 0; i < k; ++i) {
    cg.sizes_[i] = p.cell_size(i);
    const Vertex rep = p.cell(i).front();
    touched.clear();
    for (Vertex w : g.neighbors(rep)) {
      const int c = p.cell_of(w);
      if (count[c]++ == 0) touched.push_back(c);
    }
    cg.d_[{i, i}] = 0;
    for (int c : touched) {
      cg.d_[{i, c}] = count[c];
      count[c] = 0;
    }
  }
  for (int i = 0; i < k; ++i) cg.kinds_[i] = classify_cell(cg.sizes_[i], cg.d(i, i));
  for (const auto& [key, value] : cg.d_) {
    const auto [i, j] = key;
    if (i >= j || value == 0) continue;
    CellPair pr;
    const bool i_small = cg.sizes_[i] <= cg.sizes_[j];
    pr.small = i_small ? i : j;
    pr.large = i_small ? j : i;
    pr.d_small_large = cg.d(pr.small, pr.large);
    pr.d_large_small = cg.d(pr.large, pr.small);
    pr.kind = classify_pair(cg.sizes_[pr.small], cg.sizes_[pr.large], pr.d_small_large, pr.d_large_small);
    cg.pair_index_[{i, j}] = cg.pairs_.size();
    cg.pairs_.push_back(pr);
  }
  return cg;
}

int AnisotropicComponent::min_cell() const { return *std::min_element(cells.begin(), cells.end()); }

AnisotropicComponent AnisotropicComponent::from_tree(const std::vector<int>& parent,
                                                     const std::vector<std::int64_t>& sizes) {
  const int k = static_cast<int>(parent.size());
  if (k == 0 || sizes.size() != parent.size())
    throw TaggedError("BadTree", "parent and size arrays must be non-empty and of equal length");
  std::vector<std::vector<int>> children(static_cast<std::size_t>(k));
  int root = -1;
  for (int v = 0; v < k; ++v) {
    if (parent[v] < 0) {
      if (root >= 0) throw TaggedError("BadTree", "more than one root");
      root = v;
    } else if (parent[v] >= k) {
      throw TaggedError("BadTree", "parent index out of range");
    } else {
      children[parent[v]].push_back(v);
    }
  }
  if (root < 0) throw TaggedError("BadTree", "no root");
  AnisotropicComponent comp;
  std::vector<int> local(static_cast<std::size_t>(k), -1);
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    local[v] = comp.num_nodes();
    comp.cells.push_back(v);
    comp.sizes.push_back(sizes[v]);
    comp.num_vertices += sizes[v];
    if (parent[v] < 0) {
      comp.parent.push_back(-1);
      comp.multiplicity.push_back(0);
    } else {
      const std::int64_t ps = sizes[parent[v]];
      if (sizes[v] < ps || ps <= 0 || sizes[v] % ps != 0)
        throw TaggedError("BadTree", "child size must be a positive multiple of its parent size");
      comp.parent.push_back(local[parent[v]]);
      comp.multiplicity.push_back(sizes[v] / ps);
    }
    for (int c : children[v]) q.push(c);
  }
  if (comp.num_nodes() != k) throw TaggedError("BadTree", "parent array contains a cycle");
  return comp;
}

ForestAnalysis analyze_anisotropic(const CellGraph& cg) {
  const int k = cg.num_cells();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(k));
  for (const CellPair& pr : cg.pairs()) {
    if (is_isotropic(pr.kind)) continue;
    adj[pr.small].push_back(pr.large);
    adj[pr.large].push_back(pr.small);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());

  ForestAnalysis out;
  std::vector<ForestIssue> hetero_issues;
  std::vector<int> component_of(static_cast<std::size_t>(k), -1);
  std::vector<int> local(static_cast<std::size_t>(k), -1);
  for (int start = 0; start < k; ++start) {
    if (component_of[start] >= 0) continue;
    const int id = static_cast<int>(out.forest.components.size());

    // Collect the component and count its anisotropic edges.
    std::vector<int> members{start};
    component_of[start] = id;
    std::int64_t degree_sum = 0;
    for (std::size_t h = 0; h < members.size(); ++h) {
      degree_sum += static_cast<std::int64_t>(adj[members[h]].size());
      for (int y : adj[members[h]])
        if (component_of[y] < 0) {
          component_of[y] = id;
          members.push_back(y);
        }
    }
    const bool is_tree = degree_sum / 2 == static_cast<std::int64_t>(members.size()) - 1;

    std::vector<int> hetero;
    for (int x : members)
      if (!is_homogeneous(cg.kind(x))) hetero.push_back(x);
    std::sort(hetero.begin(), hetero.end());

    // Root: a minimum-size cell, heterogeneous first, then lowest id.
    int root = members.front();
    for (int x : members) {
      const auto key = [&](int c) {
        return std::make_tuple(cg.size(c), is_homogeneous(cg.kind(c)) ? 1 : 0, c);
      };
      if (key(x) < key(root)) root = x;
    }

    AnisotropicComponent comp;
    comp.heterogeneous = !hetero.empty();
    std::vector<int> order{root};
    local[root] = 0;
    comp.cells.push_back(root);
    comp.parent.push_back(-1);
    comp.sizes.push_back(cg.size(root));
    comp.multiplicity.push_back(0);
    std::optional<ForestIssue> shape_issue;
    if (!is_tree) shape_issue = ForestIssue{ForestIssue::Kind::NotATree, id, members.front(), -1};
    for (std::size_t h = 0; h < order.size(); ++h) {
      const int x = order[h];
      for (int y : adj[x]) {
        if (local[y] >= 0) continue;
        local[y] = static_cast<int>(comp.cells.size());
        order.push_back(y);
        comp.cells.push_back(y);
        comp.parent.push_back(local[x]);
        comp.sizes.push_back(cg.size(y));
        const std::int64_t px = cg.size(x), py = cg.size(y);
        comp.multiplicity.push_back(py % px == 0 ? py / px : 0);
        if (!shape_issue && py < px) shape_issue = ForestIssue{ForestIssue::Kind::NotMonotone, id, x, y};
        if (!shape_issue && py % px != 0) shape_issue = ForestIssue{ForestIssue::Kind::BadDivisibility, id, x, y};
      }
    }
    for (int x : members) local[x] = -1;
    for (std::int64_t s : comp.sizes) comp.num_vertices += s;
    if (shape_issue) out.issues.push_back(*shape_issue);

    if (hetero.size() > 1) {
      hetero_issues.push_back({ForestIssue::Kind::MultipleHeterogeneous, id, hetero[0], hetero[1]});
    } else if (hetero.size() == 1 && cg.size(hetero[0]) > cg.size(root)) {
      hetero_issues.push_back({ForestIssue::Kind::HeterogeneousNotMinimal, id, hetero[0], root});
    }
    out.forest.components.push_back(std::move(comp));
  }
  out.issues.insert(out.issues.end(), hetero_issues.begin(), hetero_issues.end());
  return out;
}

namespace {

std::string describe(const ForestIssue& issue) {
  std::string s = std::string(to_string(issue.kind)) + " in anisotropic component " + std::to_string(issue.component);
  if (issue.cell_a >= 0) s += " (cells " + std::to_string(issue.cell_a);
  if (issue.cell_b >= 0) s += ", " + std::to_string(issue.cell_b);
  if (issue.cell_a >= 0) s += ")";
  return s;
}

}  // namespace

StructureError::StructureError(ForestIssue issue) : Error(describe(issue)), issue_(issue) {}

AnisotropicForest anisotropic_components(const CellGraph& cg) {
  ForestAnalysis a = analyze_anisotropic(cg);
  if (!a.issues.empty()) throw StructureError(a.issues.front());
  return std::move(a.forest);
}

}  // namespace amen
