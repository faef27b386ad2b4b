#pragma once

#include "griddraw/graph.hpp"
#include "griddraw/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace griddraw {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  /// Criterion ids to run; empty runs 1..13.
  std::vector<int> only;
  /// Criterion 13 runs the large annealing instances; off skips it.
  bool figures = true;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  /// Where criterion 13 writes its SVG files, if set.
  std::optional<std::filesystem::path> svg_dir;
};

inline constexpr int criterion_count = 13;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress = nullptr);

/// "PASS  7  exact maximizers ... (1.23 s, budget 60 s): detail"
std::string format_result(const CriterionResult& r);

struct SmallInstance {
  PartitionSpec spec;
  GridSpec grid;
};

/// Every class-size vector with r >= 2 on the grids d=1 (M = 1..4) and d=2 (M = 1)
/// whose multinomial coefficient is at most `max_multinomial`.
std::vector<SmallInstance> small_instance_family(std::uint64_t max_multinomial);

/// Uniformly random composition of n into r >= 2 positive parts, sorted.
PartitionSpec random_partition(int n, int max_classes, std::mt19937_64& rng);

}  // namespace griddraw
