#include "amen/refinement.hpp"

#include <algorithm>
#include <vector>

#include "amen/error.hpp"

namespace amen {

namespace {

void require_partition_of(const Graph& g, const Partition& p) {
  if (p.num_vertices() != g.order())
    throw PartitionError(PartitionError::Code::InvalidPartition,
                         "partition covers " + std::to_string(p.num_vertices()) + " vertices, graph has " +
                             std::to_string(g.order()));
}

// Cells occupy contiguous ranges of `elems`. A cell keeps its id when split;
// the largest fragment inherits it and every other fragment gets a fresh id.
class Refiner {
 public:
  Refiner(const Graph& g, std::span<const int> cell_of_initial, int num_initial)
      : g_(g),
        n_(g.order()),
        elems_(static_cast<std::size_t>(n_)),
        pos_(static_cast<std::size_t>(n_)),
        cell_of_(cell_of_initial.begin(), cell_of_initial.end()),
        count_(static_cast<std::size_t>(n_), 0) {
    std::vector<int> sizes(static_cast<std::size_t>(num_initial), 0);
    for (int c : cell_of_) ++sizes[c];
    begin_.resize(static_cast<std::size_t>(num_initial));
    end_.resize(static_cast<std::size_t>(num_initial));
    int acc = 0;
    for (int c = 0; c < num_initial; ++c) {
      begin_[c] = end_[c] = acc;
      acc += sizes[c];
    }
    for (Vertex v = 0; v < n_; ++v) {
      const int c = cell_of_[v];
      pos_[v] = end_[c];
      elems_[end_[c]++] = v;
    }
    marked_.assign(static_cast<std::size_t>(num_initial), 0);
    for (int c = 0; c < num_initial; ++c) queue_.push_back(c);
  }

  std::vector<int> run() {
    std::size_t head = 0;
    while (head < queue_.size()) {
      const int s = queue_[head++];
      split_by(s);
      if (head > 4096 && head * 2 > queue_.size()) {
        queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(head));
        head = 0;
      }
    }
    return cell_of_;
  }

 private:
  void split_by(int s) {
    touched_.clear();
    touched_cells_.clear();
    for (int i = begin_[s]; i < end_[s]; ++i) {
      for (Vertex w : g_.neighbors(elems_[i])) {
        if (count_[w]++ == 0) touched_.push_back(w);
      }
    }
    // Move touched vertices to the front of their cells.
    for (Vertex w : touched_) {
      const int c = cell_of_[w];
      if (marked_[c] == 0) touched_cells_.push_back(c);
      const int target = begin_[c] + marked_[c]++;
      const Vertex other = elems_[target];
      elems_[pos_[w]] = other;
      pos_[other] = pos_[w];
      elems_[target] = w;
      pos_[w] = target;
    }
    for (int c : touched_cells_) {
      split_cell(c);
    }
    for (Vertex w : touched_) count_[w] = 0;
  }

  void split_cell(int c) {
    const int b = begin_[c];
    const int e = end_[c];
    const int k = marked_[c];
    marked_[c] = 0;
    auto first = elems_.begin() + b;
    std::sort(first, first + k, [&](Vertex x, Vertex y) { return count_[x] < count_[y]; });
    for (int i = b; i < b + k; ++i) pos_[elems_[i]] = i;

    // Fragment boundaries: equal-count runs of the touched prefix, then the
    // untouched suffix (count 0).
    bounds_.clear();
    bounds_.push_back(b);
    for (int i = b + 1; i < b + k; ++i)
      if (count_[elems_[i]] != count_[elems_[i - 1]]) bounds_.push_back(i);
    if (k < e - b && k > 0) bounds_.push_back(b + k);
    bounds_.push_back(e);
    const std::size_t fragments = bounds_.size() - 1;
    if (fragments == 1) return;

    std::size_t largest = 0;
    for (std::size_t f = 1; f < fragments; ++f)
      if (bounds_[f + 1] - bounds_[f] > bounds_[largest + 1] - bounds_[largest]) largest = f;

    for (std::size_t f = 0; f < fragments; ++f) {
      if (f == largest) {
        begin_[c] = bounds_[f];
        end_[c] = bounds_[f + 1];
        continue;
      }
      const int id = static_cast<int>(begin_.size());
      begin_.push_back(bounds_[f]);
      end_.push_back(bounds_[f + 1]);
      marked_.push_back(0);
      queue_.push_back(id);
      for (int i = bounds_[f]; i < bounds_[f + 1]; ++i) cell_of_[elems_[i]] = id;
    }
    // If c was still pending it now stands for its largest fragment; if it
    // was already processed, that fragment's counts are implied by c's and
    // the other fragments', so it need not be queued again.
  }

  const Graph& g_;
  int n_;
  std::vector<Vertex> elems_;
  std::vector<int> pos_;
  std::vector<int> cell_of_;
  std::vector<int> count_;
  std::vector<int> begin_, end_, marked_;
  std::vector<int> queue_;
  std::vector<Vertex> touched_;
  std::vector<int> touched_cells_;
  std::vector<int> bounds_;
};

}  // namespace

Partition refine(const Graph& g, const Partition& initial) {
  require_partition_of(g, initial);
  Refiner r(g, initial.cell_ids(), initial.num_cells());
  return Partition::from_colors(r.run());
}

Partition refine(const Graph& g, std::span<const int> colors) {
  if (static_cast<int>(colors.size()) != g.order())
    throw PartitionError(PartitionError::Code::InvalidPartition,
                         "color array has " + std::to_string(colors.size()) + " entries, graph has " +
                             std::to_string(g.order()) + " vertices");
  return refine(g, Partition::from_colors(colors));
}

Partition stable_partition(const Graph& g) { return refine(g, Partition::unit(g.order())); }

bool is_equitable(const Graph& g, const Partition& p) {
  require_partition_of(g, p);
  // Profile of a vertex: sorted (cell, count) pairs over its neighbourhood.
  std::vector<int> count(static_cast<std::size_t>(p.num_cells()), 0);
  std::vector<std::pair<int, int>> reference, current;
  auto profile = [&](Vertex v, std::vector<std::pair<int, int>>& out) {
    out.clear();
    for (Vertex w : g.neighbors(v)) ++count[p.cell_of(w)];
    for (Vertex w : g.neighbors(v)) {
      const int c = p.cell_of(w);
      if (count[c] > 0) {
        out.emplace_back(c, count[c]);
        count[c] = 0;
      }
    }
    std::sort(out.begin(), out.end());
  };
  for (int i = 0; i < p.num_cells(); ++i) {
    auto cell = p.cell(i);
    profile(cell.front(), reference);
    for (std::size_t k = 1; k < cell.size(); ++k) {
      profile(cell[k], current);
      if (current != reference) return false;
    }
  }
  return true;
}

CrVerdict cr_iso_test(const Graph& g, const Graph& h) {
  const DisjointUnion u = disjoint_union(g, h);
  const Partition p = stable_partition(u.graph);
  std::vector<long long> balance(static_cast<std::size_t>(p.num_cells()), 0);
  for (Vertex v = 0; v < u.graph.order(); ++v) balance[p.cell_of(v)] += u.origin[v].side == 0 ? 1 : -1;
  CrVerdict verdict;
  for (int i = 0; i < p.num_cells(); ++i) {
    if (balance[i] != 0) {
      verdict.outcome = CrOutcome::Distinguished;
      verdict.witness_cell = i;
      break;
    }
  }
  return verdict;
}

}  // namespace amen
