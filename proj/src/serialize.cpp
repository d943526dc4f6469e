#include "amen/serialize.hpp"

namespace amen {

using nlohmann::json;

json partition_json(const Partition& p) {
  json cells = json::array();
  for (int i = 0; i < p.num_cells(); ++i) {
    auto c = p.cell(i);
    cells.push_back(std::vector<Vertex>(c.begin(), c.end()));
  }
  return {{"cells", cells}};
}

json component_json(const AnisotropicComponent& c) {
  std::vector<int> parent_cells;
  for (int i = 0; i < c.num_nodes(); ++i) parent_cells.push_back(c.parent[i] < 0 ? -1 : c.cells[c.parent[i]]);
  return {{"root", c.root()},
          {"cells", c.cells},
          {"parent", parent_cells},
          {"sizes", c.sizes},
          {"multiplicity", c.multiplicity},
          {"heterogeneous", c.heterogeneous},
          {"num_vertices", c.num_vertices}};
}

json cells_json(const CellGraph& cg, const ForestAnalysis& fa) {
  json cells = json::array();
  for (int i = 0; i < cg.num_cells(); ++i) {
    auto members = cg.partition().cell(i);
    cells.push_back({{"id", i},
                     {"size", cg.size(i)},
                     {"kind", to_string(cg.kind(i))},
                     {"d_self", cg.d(i, i)},
                     {"vertices", std::vector<Vertex>(members.begin(), members.end())}});
  }
  json pairs = json::array();
  for (const CellPair& p : cg.pairs())
    pairs.push_back({{"small", p.small},
                     {"large", p.large},
                     {"d_small_large", p.d_small_large},
                     {"d_large_small", p.d_large_small},
                     {"kind", to_string(p.kind)}});
  json comps = json::array();
  for (const AnisotropicComponent& c : fa.forest.components) comps.push_back(component_json(c));
  json issues = json::array();
  for (const ForestIssue& is : fa.issues)
    issues.push_back({{"kind", to_string(is.kind)}, {"component", is.component}, {"cell_a", is.cell_a}, {"cell_b", is.cell_b}});
  return {{"cells", cells}, {"pairs", pairs}, {"components", comps}, {"issues", issues}};
}

namespace {

json failure_json(const AmenabilityFailure& f) {
  json j{{"condition", to_string(f.condition)}, {"reason", f.reason}};
  if (f.cell >= 0) j["cell"] = f.cell;
  if (f.other >= 0) j["other"] = f.other;
  if (f.component >= 0) j["component"] = f.component;
  return j;
}

}  // namespace

json verdict_json(const AmenabilityVerdict& v) {
  json j{{"amenable", v.amenable}};
  if (v.failure) j["failure"] = failure_json(*v.failure);
  if (v.structure) {
    json comps = json::array();
    for (const AnisotropicComponent& c : v.structure->forest.components) comps.push_back(component_json(c));
    j["components"] = comps;
  }
  if (!v.all_failures.empty()) {
    json all = json::array();
    for (const AmenabilityFailure& f : v.all_failures) all.push_back(failure_json(f));
    j["all_failures"] = all;
  }
  return j;
}

json report_json(const SymmetryReport& r) {
  json comps = json::array();
  for (const ComponentReport& c : r.components) {
    json j{{"first_cell", c.first_cell},
           {"root_cell", c.root_cell},
           {"num_cells", c.num_cells},
           {"num_vertices", c.num_vertices},
           {"head", {{"kind", to_string(c.head.kind)}, {"size", c.head.size}}},
           {"head_dist", c.head_invariants.dist},
           {"head_fix", c.head_invariants.fix},
           {"leg_fix", c.leg_fix},
           {"dist", c.dist},
           {"fix", c.fix}};
    if (c.exact_leg_count) j["exact_leg_count"] = *c.exact_leg_count;
    comps.push_back(std::move(j));
  }
  return {{"dist_number", r.dist_number}, {"fix_number", r.fix_number}, {"components", comps}};
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

json error_json(const Error& e) {
  json j = error_json(e.kind(), e.what());
  if (const auto* na = dynamic_cast<const NotAmenable*>(&e)) j["error"]["verdict"] = verdict_json(na->verdict());
  return j;
}

}  // namespace amen
