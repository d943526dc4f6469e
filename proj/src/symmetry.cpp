#include "amen/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "amen/error.hpp"

namespace amen {

namespace {

using u128 = unsigned __int128;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const u128 p = static_cast<u128>(a) * b;
  return p >= cap ? cap : static_cast<std::uint64_t>(p);
}

// C(f, m) clamped at cap, for f <= cap. Partial products C(f, k), k <= m,
// are exact integers and nondecreasing while k <= f / 2, so hitting the cap
// early is final.
std::uint64_t sat_binom(std::uint64_t f, std::uint64_t m, std::uint64_t cap) {
  if (m > f) return 0;
  m = std::min(m, f - m);
  u128 v = 1;
  for (std::uint64_t k = 1; k <= m; ++k) {
    v = v * (f - k + 1) / k;
    if (v >= cap) return cap;
  }
  return static_cast<std::uint64_t>(v);
}

BigInt big_binom(const BigInt& f, std::int64_t m) {
  if (f < m) return 0;
  const BigInt rest = f - m;
  const std::int64_t k_max = rest < m ? static_cast<std::int64_t>(rest) : m;
  BigInt v = 1;
  for (std::int64_t k = 1; k <= k_max; ++k) v = v * (f - k + 1) / k;
  return v;
}

void require_colors(std::int64_t c) {
  if (c < 1) throw TaggedError("BadColors", "color count must be positive");
}

}  // namespace

const char* to_string(HeadKind k) {
  switch (k) {
    case HeadKind::Complete: return "COMPLETE";
    case HeadKind::FiveCycle: return "FIVE_CYCLE";
    case HeadKind::CoMatching: return "CO_MATCHING";
  }
  return "?";
}

std::int64_t min_c_binom(std::int64_t r) {
  if (r < 1) throw TaggedError("BadArgument", "min_c_binom requires r >= 1");
  // c(c-1)/2 >= r  <=>  (2c-1)^2 >= 8r + 1. Seed with an integer square root.
  const auto target = static_cast<u128>(8) * static_cast<u128>(r) + 1;
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(target)));
  while (static_cast<u128>(s) * s > target) --s;
  while (static_cast<u128>(s + 1) * (s + 1) <= target) ++s;
  auto c = static_cast<std::int64_t>((s + 1) / 2);
  auto pairs = [](std::int64_t x) { return static_cast<u128>(x) * static_cast<u128>(x - 1) / 2; };
  while (pairs(c) < static_cast<u128>(r)) ++c;
  while (c > 2 && pairs(c - 1) >= static_cast<u128>(r)) --c;
  return std::max<std::int64_t>(c, 2);
}

HeadInvariants head_invariants(const Head& head) {
  switch (head.kind) {
    case HeadKind::Complete:
      if (head.size < 1) throw TaggedError("BadHead", "complete head needs size >= 1");
      return {head.size, head.size - 1};
    case HeadKind::FiveCycle:
      if (head.size != 5) throw TaggedError("BadHead", "five-cycle head needs size 5");
      return {3, 2};
    case HeadKind::CoMatching:
      if (head.size < 4 || head.size % 2 != 0)
        throw TaggedError("BadHead", "co-matching head needs even size >= 4");
      return {min_c_binom(head.r()), head.r()};
  }
  throw TaggedError("BadHead", "unknown head kind");
}

Head head_of_component(const CellGraph& cg, const AnisotropicComponent& comp) {
  const int root = comp.root();
  const std::int64_t size = cg.size(root);
  switch (cg.kind(root)) {
    case CellKind::Empty:
    case CellKind::Complete: return {HeadKind::Complete, size};
    case CellKind::FiveCycle: return {HeadKind::FiveCycle, size};
    case CellKind::Matching:
    case CellKind::CoMatching: return {HeadKind::CoMatching, size};
    case CellKind::Other: break;
  }
  throw TaggedError("UnsupportedRootKind", "root cell " + std::to_string(root) + " has no jellyfish head");
}

SaturatingCount leg_dist_count(const AnisotropicComponent& comp, std::int64_t c, std::uint64_t cap) {
  require_colors(c);
  if (cap <= static_cast<std::uint64_t>(comp.num_vertices))
    throw TaggedError("BadCap", "cap " + std::to_string(cap) + " must exceed the component vertex count " +
                                    std::to_string(comp.num_vertices));
  const auto base = std::min<std::uint64_t>(static_cast<std::uint64_t>(c), cap);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(comp.num_nodes()), base);
  for (int i = comp.num_nodes() - 1; i > 0; --i) {
    const auto factor = sat_binom(acc[i], static_cast<std::uint64_t>(comp.multiplicity[i]), cap);
    acc[comp.parent[i]] = sat_mul(acc[comp.parent[i]], factor, cap);
  }
  return SaturatingCount(acc[0], cap);
}

BigInt leg_dist_count_exact(const AnisotropicComponent& comp, std::int64_t c) {
  require_colors(c);
  std::vector<BigInt> acc(static_cast<std::size_t>(comp.num_nodes()), BigInt(c));
  for (int i = comp.num_nodes() - 1; i > 0; --i) acc[comp.parent[i]] *= big_binom(acc[i], comp.multiplicity[i]);
  return acc[0];
}

std::int64_t leg_fix(const AnisotropicComponent& comp) {
  std::vector<std::int64_t> acc(static_cast<std::size_t>(comp.num_nodes()), 0);
  for (int i = comp.num_nodes() - 1; i > 0; --i) {
    const std::int64_t m = comp.multiplicity[i];
    acc[comp.parent[i]] += acc[i] == 0 ? m - 1 : m * acc[i];
  }
  return acc[0];
}

std::int64_t component_dist(const AnisotropicComponent& comp, const Head& head, CountMode mode) {
  const std::int64_t target = head_invariants(head).dist;
  const auto cap = static_cast<std::uint64_t>(target + comp.num_vertices + 1);
  auto enough = [&](std::int64_t c) {
    if (mode == CountMode::Exact) return leg_dist_count_exact(comp, c) >= target;
    return leg_dist_count(comp, c, cap).value() >= static_cast<std::uint64_t>(target);
  };
  std::int64_t lo = 1, hi = comp.num_vertices;
  if (!enough(hi))
    throw TaggedError("InternalError", "leg count with one color per vertex is below the head requirement");
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (enough(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::int64_t component_dist(const CellGraph& cg, const AnisotropicComponent& comp, CountMode mode) {
  return component_dist(comp, head_of_component(cg, comp), mode);
}

std::int64_t component_fix(const AnisotropicComponent& comp, const Head& head) {
  const std::int64_t legs = leg_fix(comp);
  return legs == 0 ? head_invariants(head).fix : head.size * legs;
}

std::int64_t component_fix(const CellGraph& cg, const AnisotropicComponent& comp) {
  return component_fix(comp, head_of_component(cg, comp));
}

SymmetryReport symmetry_report(const AmenableStructure& s, const SymmetryOptions& opts) {
  SymmetryReport report;
  const CountMode mode = opts.exact_counts ? CountMode::Exact : CountMode::Saturating;
  for (const AnisotropicComponent& comp : s.forest.components) {
    ComponentReport r;
    r.first_cell = comp.min_cell();
    r.root_cell = comp.root();
    r.num_cells = comp.num_nodes();
    r.num_vertices = comp.num_vertices;
    r.head = head_of_component(s.cells, comp);
    r.head_invariants = head_invariants(r.head);
    r.leg_fix = leg_fix(comp);
    r.dist = component_dist(comp, r.head, mode);
    r.fix = component_fix(comp, r.head);
    if (opts.exact_counts) r.exact_leg_count = leg_dist_count_exact(comp, r.dist).str();
    report.dist_number = std::max(report.dist_number, r.dist);
    report.fix_number += r.fix;
    report.components.push_back(std::move(r));
  }
  std::sort(report.components.begin(), report.components.end(),
            [](const ComponentReport& a, const ComponentReport& b) { return a.first_cell < b.first_cell; });
  return report;
}

SymmetryReport symmetry_report(const Graph& g, const SymmetryOptions& opts) {
  AmenabilityVerdict v = check_amenable(g);
  if (!v.amenable) throw NotAmenable(std::move(v));
  return symmetry_report(*v.structure, opts);
}

std::int64_t dist_number(const Graph& g) { return symmetry_report(g).dist_number; }

std::int64_t fix_number(const Graph& g) { return symmetry_report(g).fix_number; }

}  // namespace amen
