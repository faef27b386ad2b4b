#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace griddraw {

using Index = Eigen::Index;

/// Column-major point set: one column per point, one row per coordinate.
template <class Scalar>
using PointsX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using PointSet = PointsX<std::int64_t>;
using GridPoint = VectorX<std::int64_t>;

/// The bounded grid {-M..M}^d, optionally with the origin removed.
///
/// Removing the origin is only meaningful for the 1-D drawings of graphs with an
/// even number of vertices, but it is accepted in any dimension.
struct GridSpec {
  int dim = 1;
  int half_width = 0;
  bool exclude_origin = false;

  /// (2M+1)^d, minus one when the origin is excluded.
  [[nodiscard]] std::int64_t point_count() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// All points of the grid in lexicographic order. Throws for d < 1 or M < 0.
PointSet enumerate_points(const GridSpec& spec);

/// Σ‖v‖² over the grid via 2d(2M+1)^{d-1}·M(M+1)(2M+1)/6, in integers.
/// The origin contributes nothing, so exclude_origin does not change the value.
std::int64_t grid_second_moment(const GridSpec& spec);

/// Smallest 1-D grid that holds exactly n points symmetrically: {-⌊n/2⌋..⌊n/2⌋},
/// without the origin when n is even.
GridSpec line_grid(int n);

template <class Derived>
auto squared_norms(const Eigen::MatrixBase<Derived>& points) {
  return points.colwise().squaredNorm().transpose().eval();
}

/// Index of a point in the canonical enumeration, or -1 when it is not in the grid.
Index point_index(const GridSpec& spec, const Eigen::Ref<const GridPoint>& point);

}  // namespace griddraw
