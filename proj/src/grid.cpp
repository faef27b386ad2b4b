#include "griddraw/grid.hpp"

#include <stdexcept>

namespace griddraw {

namespace {

void validate(const GridSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("grid dimension must be at least 1");
  if (spec.half_width < 0) throw std::invalid_argument("grid half-width must be non-negative");
  if (spec.exclude_origin && spec.half_width == 0) {
    throw std::invalid_argument("excluding the origin from a single-point grid leaves it empty");
  }
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

std::int64_t GridSpec::point_count() const {
  const auto full = ipow(2 * std::int64_t{half_width} + 1, dim);
  return exclude_origin ? full - 1 : full;
}

PointSet enumerate_points(const GridSpec& spec) {
  validate(spec);
  const auto n = spec.point_count();
  PointSet points(spec.dim, n);
  GridPoint x = GridPoint::Constant(spec.dim, -spec.half_width);
  Index col = 0;
  const auto full = ipow(2 * std::int64_t{spec.half_width} + 1, spec.dim);
  for (std::int64_t k = 0; k < full; ++k) {
    if (!(spec.exclude_origin && x.isZero())) points.col(col++) = x;
    // odometer increment, last coordinate fastest
    for (int i = spec.dim - 1; i >= 0; --i) {
      if (x(i) < spec.half_width) {
        ++x(i);
        break;
      }
      x(i) = -spec.half_width;
    }
  }
  return points;
}

std::int64_t grid_second_moment(const GridSpec& spec) {
  validate(spec);
  const std::int64_t m = spec.half_width;
  const std::int64_t side = 2 * m + 1;
  return 2 * spec.dim * ipow(side, spec.dim - 1) * (m * (m + 1) * side / 6);
}

GridSpec line_grid(int n) {
  if (n < 1) throw std::invalid_argument("a line drawing needs at least one vertex");
  return GridSpec{1, n / 2, n % 2 == 0};
}

Index point_index(const GridSpec& spec, const Eigen::Ref<const GridPoint>& point) {
  if (point.size() != spec.dim) return -1;
  const std::int64_t side = 2 * std::int64_t{spec.half_width} + 1;
  std::int64_t idx = 0;
  bool at_origin = true;
  for (int i = 0; i < spec.dim; ++i) {
    const auto c = point(i);
    if (c < -spec.half_width || c > spec.half_width) return -1;
    if (c != 0) at_origin = false;
    idx = idx * side + (c + spec.half_width);
  }
  if (spec.exclude_origin) {
    if (at_origin) return -1;
    const auto origin = (ipow(side, spec.dim) - 1) / 2;
    if (idx > origin) --idx;
  }
  return idx;
}

}  // namespace griddraw
