#pragma once

#include <span>
#include <vector>

#include "amen/graph.hpp"

namespace amen {

/// Vertex partition in canonical form: cells are numbered by increasing
/// minimum vertex and each cell lists its vertices in increasing order. Two
/// Partition values compare equal iff they describe the same set partition.
class Partition {
 public:
  Partition() = default;

  /// Cells are the color classes of `colors`; color values are arbitrary.
  static Partition from_colors(std::span<const int> colors);
  static Partition unit(int n);
  static Partition discrete(int n);

  int num_vertices() const noexcept { return static_cast<int>(cell_of_.size()); }
  int num_cells() const noexcept { return static_cast<int>(offsets_.size()) - 1; }
  int cell_of(Vertex v) const noexcept { return cell_of_[v]; }
  std::span<const int> cell_ids() const noexcept { return cell_of_; }
  std::span<const Vertex> cell(int i) const noexcept {
    return {members_.data() + offsets_[i], members_.data() + offsets_[i + 1]};
  }
  int cell_size(int i) const noexcept { return offsets_[i + 1] - offsets_[i]; }

  /// True when every cell of *this is contained in a cell of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.cell_of_ == b.cell_of_; }

 private:
  std::vector<int> cell_of_;
  std::vector<int> offsets_{0};
  std::vector<Vertex> members_;
};

}  // namespace amen
