#pragma once

#include "griddraw/brute.hpp"
#include "griddraw/coloring.hpp"
#include "griddraw/rational.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace griddraw {

enum class MinMethod { ring_heuristic, zero_sum_construction, penalty_local_search, exact_search };

std::string_view to_string(MinMethod m);

struct MinResult {
  Coloring coloring;
  Rational lambda;
  MinMethod method;
  /// Set exactly when λ equals the spectral lower bound N - n_r, which proves optimality.
  bool certified = false;
};

/// Sorts grid points by (‖v‖², lexicographic) and hands them out to A_1, A_2, ... in order.
MinResult ring_construction(const PartitionSpec& spec, const GridSpec& grid);

struct ZeroSumOptions {
  std::uint64_t node_cap = 1'000'000;
  unsigned seed = 0;
};

/// Equal class sizes only. Searches for a coloring in which every class sums to the
/// zero vector; falls back to pairwise-swap descent on Σ‖Σ_{A_i} v‖² when none is found.
MinResult zero_sum_construction(const PartitionSpec& spec, const GridSpec& grid, const ZeroSumOptions& opts = {});

/// Exhaustive minimum over all colorings; ties go to the lexicographically smallest label vector.
MinResult exact_min_search(const PartitionSpec& spec, const GridSpec& grid, std::uint64_t limit = 10'000'000,
                           unsigned threads = 0);

struct OptimalDrawingCount {
  int m = 0;
  /// Colorings of {-2m..2m} with A_1 = {0} and every class summing to zero.
  std::uint64_t zero_sum_count = 0;
  /// λ-minimizers of K_{1,2m,2m} found by exhaustive enumeration.
  std::optional<std::uint64_t> exhaustive_minimizers;
  std::uint64_t upper_bound = 0;  // 16^m
};

/// Counts the optimal drawings of K_{1,2m,2m} on the 1-D grid {-2m..2m}, m <= 4.
/// Cross-checks against exhaustive search when the multinomial fits `limit`.
OptimalDrawingCount count_optimal_drawings(int m, std::uint64_t limit = 10'000'000);

}  // namespace griddraw
