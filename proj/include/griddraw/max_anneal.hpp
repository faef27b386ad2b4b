#pragma once

#include "griddraw/coloring.hpp"
#include "griddraw/rational.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string_view>
#include <vector>

namespace griddraw {

/// Geometric-cooling schedule. Temperatures are in units of λ, so a move that
/// changes λ by -δ is accepted with probability exp(-δ / T).
struct AnnealConfig {
  double initial_temperature = 1.0;
  double cooling_factor = 0.995;
  /// 0 means 200·N.
  std::uint64_t steps_per_temperature = 0;
  double minimum_temperature = 1e-4;
  unsigned chains = 4;
  std::uint64_t seed = 0;
  /// Worker threads for the chains; 0 picks hardware concurrency. Does not affect results.
  unsigned threads = 0;

  /// Throws std::invalid_argument for an unusable schedule.
  void validate() const;
};

enum class Objective { minimize, maximize };

struct AnnealResult {
  Coloring coloring;
  Rational lambda;
  std::int64_t energy = 0;
  unsigned best_chain = 0;
  /// Best energy of every chain, by chain index.
  std::vector<std::int64_t> chain_energies;
  /// Best-so-far energy of the winning chain after each temperature level.
  std::vector<std::int64_t> best_history;
};

/// Simulated annealing over colorings with two-point class swaps. Chains start
/// from independent random colorings and use private generators derived from
/// (seed, chain index); the result depends only on the config, not on threading.
AnnealResult anneal(const PartitionSpec& spec, const GridSpec& grid, const AnnealConfig& cfg, Objective objective);
AnnealResult anneal_max(const PartitionSpec& spec, const GridSpec& grid, const AnnealConfig& cfg = {});

struct ExactMaxResult {
  Coloring coloring;
  Rational lambda;
};

/// Exhaustive maximum; ties go to the lexicographically smallest label vector.
ExactMaxResult exact_max_search(const PartitionSpec& spec, const GridSpec& grid, std::uint64_t limit = 10'000'000,
                                unsigned threads = 0);

/// How the region predicate is parametrized.
enum class WeightRule {
  /// Multiplicative weights that separate the classes whenever such weights exist,
  /// otherwise the best ones a coordinate search finds.
  fitted,
  /// w_i = 1/√n_i, which compares n_i‖x-c_i‖² across classes.
  inverse_sqrt_size,
  sqrt_size,
  uniform,
  /// Not multiplicative: compares n_i‖x-c_i‖² + μ_i with fitted offsets μ, the
  /// optimality condition of the size-constrained scatter minimization.
  capacity_offsets,
};

std::string_view to_string(WeightRule rule);

struct VoronoiReport {
  /// Exact class means, r rows of d coordinates.
  std::vector<std::vector<Rational>> centroids;
  Eigen::VectorXd weights;
  /// Additive offsets μ; zero except for capacity_offsets.
  Eigen::VectorXd offsets;
  WeightRule rule = WeightRule::fitted;
  /// For the fitted rules: parameters without any violation were found.
  bool weights_fitted = false;
  /// Canonical indices of points lying strictly inside another class's region.
  std::vector<Index> violations;
  /// Σ_i n_i Σ_{v∈A_i} ‖v - c_i‖².
  std::int64_t scatter = 0;
  /// Σ over unordered pairs of grid points of ‖v - w‖².
  std::int64_t total_pairwise_energy = 0;
  std::int64_t edge_energy = 0;
  /// edge_energy == total_pairwise_energy - scatter.
  bool decomposition_holds = false;
};

/// A point v ∈ A_i is a violation when ‖v-c_j‖·w_i < ‖v-c_i‖·w_j for some j ≠ i
/// (for capacity_offsets: n_j‖v-c_j‖² + μ_j < n_i‖v-c_i‖² + μ_i). Equality is
/// allowed. Throws std::invalid_argument for an empty class.
VoronoiReport voronoi_check(const Coloring& c, WeightRule rule = WeightRule::fitted);

std::int64_t weighted_scatter(const Coloring& c);

/// Size-preserving Lloyd iteration: each round fixes the centroids, applies strictly
/// improving pair swaps of Σ n_i‖v-c_i‖² until none is left, then recomputes centroids.
/// Stops early at a fixed point. Scatter never increases and λ never decreases.
Coloring lloyd_refine(const Coloring& c, int rounds);

}  // namespace griddraw
