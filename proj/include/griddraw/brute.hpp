#pragma once

#include "griddraw/coloring.hpp"
#include "griddraw/graph.hpp"
#include "griddraw/grid.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace griddraw {

struct EnumerationOptions {
  std::uint64_t limit = 10'000'000;
  /// Only used for bijections: visit one drawing per pair {v, -v}.
  bool symmetry_pruning = true;
  std::size_t witness_cap = 1000;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Aggregate of a visitor metric over an enumeration. Witnesses are kept in
/// enumeration order up to the cap; the optimum counts are always exact.
template <class Witness>
struct EnumerationStats {
  std::uint64_t visited = 0;
  std::int64_t min_metric = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_metric = std::numeric_limits<std::int64_t>::min();
  std::uint64_t argmin_count = 0;
  std::uint64_t argmax_count = 0;
  std::vector<Witness> argmins;
  std::vector<Witness> argmaxes;
};

using ColoringStats = EnumerationStats<std::vector<int>>;
using BijectionStats = EnumerationStats<std::vector<std::int64_t>>;

/// Metric of one coloring given its label vector over the canonical point order.
/// Called concurrently from several threads.
using ColoringVisitor = std::function<std::int64_t(std::span<const int> labels)>;
/// Metric of one bijection given the position of every vertex.
using BijectionVisitor = std::function<std::int64_t(std::span<const std::int64_t> positions)>;

/// Visits every labelled coloring of the grid with the given class sizes exactly
/// once, in lexicographic order of the label vector. Throws InstanceTooLarge when
/// the multinomial coefficient exceeds the limit.
ColoringStats enumerate_colorings(const PartitionSpec& spec, const GridSpec& grid, const ColoringVisitor& visitor,
                                  const EnumerationOptions& opts = {});

/// enumerate_colorings with the edge energy as metric (λ = energy / S).
ColoringStats enumerate_coloring_energies(const PartitionSpec& spec, const GridSpec& grid,
                                          const EnumerationOptions& opts = {});

/// Visits every bijection from the vertices to `point_set`. With symmetry pruning
/// the point set must be symmetric about its midpoint and only one drawing of each
/// mirrored pair is visited: the first vertex off the midpoint sits above it.
BijectionStats enumerate_bijections(const Graph& g, std::span<const std::int64_t> point_set,
                                    const BijectionVisitor& visitor, const EnumerationOptions& opts = {});

/// Σ over edges of the squared position difference.
std::int64_t line_energy(const Graph& g, std::span<const std::int64_t> positions);

std::uint64_t factorial_saturating(int n);

}  // namespace griddraw
