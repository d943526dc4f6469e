#include "amen/partition.hpp"

#include <unordered_map>

namespace amen {

Partition Partition::from_colors(std::span<const int> colors) {
  Partition p;
  const int n = static_cast<int>(colors.size());
  p.cell_of_.assign(colors.size(), 0);
  std::unordered_map<int, int> id_of;
  id_of.reserve(colors.size());
  std::vector<int> sizes;
  for (Vertex v = 0; v < n; ++v) {
    auto [it, inserted] = id_of.try_emplace(colors[v], static_cast<int>(sizes.size()));
    if (inserted) sizes.push_back(0);
    p.cell_of_[v] = it->second;
    ++sizes[it->second];
  }
  p.offsets_.assign(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) p.offsets_[i + 1] = p.offsets_[i] + sizes[i];
  p.members_.resize(colors.size());
  std::vector<int> fill(p.offsets_.begin(), p.offsets_.end() - 1);
  for (Vertex v = 0; v < n; ++v) p.members_[fill[p.cell_of_[v]]++] = v;
  return p;
}

Partition Partition::unit(int n) {
  std::vector<int> colors(static_cast<std::size_t>(n), 0);
  return from_colors(colors);
}

Partition Partition::discrete(int n) {
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) colors[v] = v;
  return from_colors(colors);
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_vertices() != num_vertices()) return false;
  for (int i = 0; i < num_cells(); ++i) {
    auto c = cell(i);
    for (Vertex v : c)
      if (coarser.cell_of(v) != coarser.cell_of(c.front())) return false;
  }
  return true;
}

}  // namespace amen
