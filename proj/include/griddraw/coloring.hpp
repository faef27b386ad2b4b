#pragma once

#include "griddraw/graph.hpp"
#include "griddraw/grid.hpp"
#include "griddraw/rational.hpp"

#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace griddraw {

/// Enumerated grid points with their squared norms and S = Σ‖v‖².
struct GridGeometry {
  GridSpec spec;
  PointSet points;
  VectorX<std::int64_t> norms;
  std::int64_t second_moment = 0;

  [[nodiscard]] Index size() const { return points.cols(); }
};

std::shared_ptr<const GridGeometry> make_geometry(const GridSpec& spec);

/// A drawing of K_{n_1..n_r} on a grid: label(p) is the class of the p-th grid point
/// in canonical (lexicographic) order. Class i holds exactly n_i points.
class Coloring {
 public:
  Coloring(const GridSpec& grid, PartitionSpec partition, std::vector<int> labels);
  Coloring(std::shared_ptr<const GridGeometry> geometry, PartitionSpec partition, std::vector<int> labels);

  /// Builds a coloring from explicit class point sets, listed in non-decreasing size order.
  static Coloring from_classes(const GridSpec& grid, const std::vector<PointSet>& classes);

  [[nodiscard]] const GridSpec& grid() const { return geometry_->spec; }
  [[nodiscard]] const GridGeometry& geometry() const { return *geometry_; }
  [[nodiscard]] std::shared_ptr<const GridGeometry> geometry_ptr() const { return geometry_; }
  [[nodiscard]] const PartitionSpec& partition() const { return partition_; }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
  [[nodiscard]] int label(Index p) const { return labels_[static_cast<std::size_t>(p)]; }
  [[nodiscard]] int class_count() const { return partition_.class_count(); }

  [[nodiscard]] std::vector<Index> members(int cls) const;
  [[nodiscard]] PointSet class_points(int cls) const;
  [[nodiscard]] std::vector<PointSet> classes() const;

  /// Exchanges the classes of two grid points.
  void swap_points(Index a, Index b);

  friend bool operator==(const Coloring& a, const Coloring& b) {
    return a.grid() == b.grid() && a.partition_ == b.partition_ && a.labels_ == b.labels_;
  }

 private:
  std::shared_ptr<const GridGeometry> geometry_;
  PartitionSpec partition_;
  std::vector<int> labels_;
};

/// Σ over point pairs in different classes of the squared distance, by double loop.
std::int64_t edge_energy_raw(const Coloring& c);

/// The same energy from per-class accumulators: N·S - Σ n_i Σ_{A_i}‖v‖² + Σ‖Σ_{A_i} v‖².
/// Requires Σ_{v∈P} v = 0, which holds for every symmetric grid.
std::int64_t edge_energy_closed_form(const Coloring& c);

/// λ(v) for the multipartite drawing, raw definition. Throws std::domain_error when S = 0.
Rational lambda_raw(const Coloring& c);

/// λ(v) assembled term by term as N + (1/S)Σ(-n_i Σ‖v‖²) + (1/S)Σ‖Σ v‖².
Rational lambda_closed_form(const Coloring& c);

/// Σ_i ‖Σ_{v∈A_i} v‖² next to -2 Σ_{i<j} A_i·A_j, the latter summed point pair by point pair.
struct ClassSumPenalty {
  std::int64_t penalty = 0;
  std::int64_t cross_term = 0;
};

/// Throws std::invalid_argument unless the union of all classes sums to zero.
ClassSumPenalty class_sum_penalty(std::span<const PointSet> classes);
ClassSumPenalty class_sum_penalty(const Coloring& c);

/// Σ_{i<j}‖p_i - p_j‖² and n·Σ‖p_i - c‖² for the centroid c, both exact.
std::pair<Rational, Rational> pairwise_to_centroid_identity(const PointSet& points);

/// Per-class accumulators (Σ‖v‖², Σv) that price a two-point class swap in O(d).
/// One instance per search thread; it owns its own copy of the labels.
class SwapEvaluator {
 public:
  explicit SwapEvaluator(const Coloring& c);

  [[nodiscard]] std::int64_t energy() const { return energy_; }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
  [[nodiscard]] int label(Index p) const { return labels_[static_cast<std::size_t>(p)]; }

  /// Energy change if points a and b exchanged classes. Zero when they share a class.
  [[nodiscard]] std::int64_t swap_delta(Index a, Index b) const;
  void apply_swap(Index a, Index b);
  /// Adopt a new full labelling (same class sizes) and rebuild the accumulators.
  void reset(const std::vector<int>& labels);

  [[nodiscard]] const PointsX<std::int64_t>& class_sums() const { return sums_; }
  [[nodiscard]] const VectorX<std::int64_t>& class_square_sums() const { return square_sums_; }

 private:
  void rebuild();

  std::shared_ptr<const GridGeometry> geometry_;
  std::vector<int> sizes_;
  std::vector<int> labels_;
  PointsX<std::int64_t> sums_;        // d x r
  VectorX<std::int64_t> square_sums_;  // r
  std::int64_t energy_ = 0;
};

}  // namespace griddraw
