#include "amen/amenability.hpp"

#include "amen/refinement.hpp"

namespace amen {

const char* to_string(AmenabilityFailure::Condition c) {
  switch (c) {
    case AmenabilityFailure::Condition::A: return "A";
    case AmenabilityFailure::Condition::B: return "B";
    case AmenabilityFailure::Condition::C: return "C";
    case AmenabilityFailure::Condition::D: return "D";
  }
  return "?";
}

const char* to_string(IsoAnswer a) {
  switch (a) {
    case IsoAnswer::Isomorphic: return "Isomorphic";
    case IsoAnswer::NotIsomorphic: return "NotIsomorphic";
    case IsoAnswer::HeuristicEquivalent: return "HeuristicEquivalent";
  }
  return "?";
}

AmenabilityVerdict check_amenable(const Graph& g, bool collect_all) {
  using Cond = AmenabilityFailure::Condition;
  AmenabilityVerdict verdict;
  CellGraph cg = build_cell_graph(g, stable_partition(g));

  std::vector<AmenabilityFailure> failures;
  auto note = [&](AmenabilityFailure f) {
    failures.push_back(std::move(f));
    return !collect_all;
  };
  auto finish = [&]() {
    verdict.failure = failures.front();
    verdict.all_failures = collect_all ? std::move(failures) : std::vector<AmenabilityFailure>{};
    return verdict;
  };

  for (int i = 0; i < cg.num_cells(); ++i)
    if (cg.kind(i) == CellKind::Other && note({Cond::A, i, -1, -1, to_string(cg.kind(i))})) return finish();
  for (const CellPair& pr : cg.pairs())
    if (pr.kind == PairKind::Other && note({Cond::B, pr.small, pr.large, -1, to_string(pr.kind)}))
      return finish();
  // The forest is only meaningful once every pair is classified.
  if (!failures.empty()) return finish();

  ForestAnalysis analysis = analyze_anisotropic(cg);
  for (const ForestIssue& issue : analysis.issues) {
    const Cond c = issue.tree_condition() ? Cond::C : Cond::D;
    if (note({c, issue.cell_a, issue.cell_b, issue.component, to_string(issue.kind)})) return finish();
  }
  if (!failures.empty()) return finish();

  verdict.amenable = true;
  verdict.structure = AmenableStructure{std::move(cg), std::move(analysis.forest)};
  return verdict;
}

IsoAnswer amenable_iso(const Graph& g, const Graph& h) {
  if (cr_iso_test(g, h).outcome == CrOutcome::Distinguished) return IsoAnswer::NotIsomorphic;
  if (check_amenable(g).amenable || check_amenable(h).amenable) return IsoAnswer::Isomorphic;
  return IsoAnswer::HeuristicEquivalent;
}

namespace {

std::string describe(const AmenabilityVerdict& v) {
  if (!v.failure) return "graph is not amenable";
  const auto& f = *v.failure;
  std::string s = "graph is not amenable: condition (" + std::string(to_string(f.condition)) + ") fails";
  switch (f.condition) {
    case AmenabilityFailure::Condition::A:
      s += " at cell " + std::to_string(f.cell) + " (" + f.reason + ")";
      break;
    case AmenabilityFailure::Condition::B:
      s += " at cells " + std::to_string(f.cell) + ", " + std::to_string(f.other) + " (" + f.reason + ")";
      break;
    default:
      s += " in component " + std::to_string(f.component) + " (" + f.reason + ")";
  }
  return s;
}

}  // namespace

NotAmenable::NotAmenable(AmenabilityVerdict verdict) : Error(describe(verdict)), verdict_(std::move(verdict)) {}

}  // namespace amen
