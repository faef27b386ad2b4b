#include "griddraw/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace griddraw {

std::shared_ptr<const GridGeometry> make_geometry(const GridSpec& spec) {
  auto g = std::make_shared<GridGeometry>();
  g->spec = spec;
  g->points = enumerate_points(spec);
  g->norms = squared_norms(g->points);
  g->second_moment = grid_second_moment(spec);
  return g;
}

Coloring::Coloring(const GridSpec& grid, PartitionSpec partition, std::vector<int> labels)
    : Coloring(make_geometry(grid), std::move(partition), std::move(labels)) {}

Coloring::Coloring(std::shared_ptr<const GridGeometry> geometry, PartitionSpec partition, std::vector<int> labels)
    : geometry_(std::move(geometry)), partition_(std::move(partition)), labels_(std::move(labels)) {
  if (static_cast<Index>(labels_.size()) != geometry_->size()) {
    throw std::invalid_argument("coloring must label every grid point");
  }
  if (partition_.total() != geometry_->size()) {
    throw std::invalid_argument("class sizes must add up to the number of grid points");
  }
  std::vector<int> counts(partition_.class_count(), 0);
  for (const int l : labels_) {
    if (l < 0 || l >= partition_.class_count()) throw std::invalid_argument("label out of range");
    ++counts[l];
  }
  if (counts != partition_.sizes()) throw std::invalid_argument("class counts do not match the partition");
}

Coloring Coloring::from_classes(const GridSpec& grid, const std::vector<PointSet>& classes) {
  auto geometry = make_geometry(grid);
  std::vector<int> sizes;
  std::vector<int> labels(static_cast<std::size_t>(geometry->size()), -1);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    sizes.push_back(static_cast<int>(classes[k].cols()));
    for (Index j = 0; j < classes[k].cols(); ++j) {
      const auto idx = point_index(grid, classes[k].col(j));
      if (idx < 0) throw std::invalid_argument("class point outside the grid");
      auto& slot = labels[static_cast<std::size_t>(idx)];
      if (slot != -1) throw std::invalid_argument("grid point assigned to two classes");
      slot = static_cast<int>(k);
    }
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) {
    throw std::invalid_argument("classes do not cover the grid");
  }
  return Coloring(std::move(geometry), PartitionSpec(std::move(sizes)), std::move(labels));
}

std::vector<Index> Coloring::members(int cls) const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(partition_.size(cls)));
  for (Index p = 0; p < geometry_->size(); ++p)
    if (labels_[static_cast<std::size_t>(p)] == cls) out.push_back(p);
  return out;
}

PointSet Coloring::class_points(int cls) const {
  const auto idx = members(cls);
  PointSet out(grid().dim, static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = geometry_->points.col(idx[k]);
  return out;
}

std::vector<PointSet> Coloring::classes() const {
  std::vector<PointSet> out;
  for (int i = 0; i < class_count(); ++i) out.push_back(class_points(i));
  return out;
}

void Coloring::swap_points(Index a, Index b) {
  std::swap(labels_[static_cast<std::size_t>(a)], labels_[static_cast<std::size_t>(b)]);
}

std::int64_t edge_energy_raw(const Coloring& c) {
  const auto& pts = c.geometry().points;
  std::int64_t e = 0;
  for (Index a = 0; a < pts.cols(); ++a)
    for (Index b = a + 1; b < pts.cols(); ++b)
      if (c.label(a) != c.label(b)) e += (pts.col(a) - pts.col(b)).squaredNorm();
  return e;
}

namespace {

struct Accumulators {
  PointsX<std::int64_t> sums;
  VectorX<std::int64_t> square_sums;
};

Accumulators accumulate(const GridGeometry& geo, const std::vector<int>& labels, int r) {
  Accumulators acc{PointsX<std::int64_t>::Zero(geo.spec.dim, r), VectorX<std::int64_t>::Zero(r)};
  for (Index p = 0; p < geo.size(); ++p) {
    const int l = labels[static_cast<std::size_t>(p)];
    acc.sums.col(l) += geo.points.col(p);
    acc.square_sums(l) += geo.norms(p);
  }
  return acc;
}

}  // namespace

std::int64_t edge_energy_closed_form(const Coloring& c) {
  const auto& geo = c.geometry();
  const auto acc = accumulate(geo, c.labels(), c.class_count());
  std::int64_t e = geo.size() * geo.second_moment;
  for (int i = 0; i < c.class_count(); ++i) {
    e -= c.partition().size(i) * acc.square_sums(i);
    e += acc.sums.col(i).squaredNorm();
  }
  return e;
}

Rational lambda_raw(const Coloring& c) {
  const auto s = c.geometry().second_moment;
  if (s == 0) throw std::domain_error("degenerate grid: S = 0");
  return Rational(edge_energy_raw(c), s);
}

Rational lambda_closed_form(const Coloring& c) {
  const auto& geo = c.geometry();
  const auto s = geo.second_moment;
  if (s == 0) throw std::domain_error("degenerate grid: S = 0");
  const auto acc = accumulate(geo, c.labels(), c.class_count());
  Rational lambda(geo.size());
  for (int i = 0; i < c.class_count(); ++i) {
    lambda += Rational(-c.partition().size(i) * acc.square_sums(i), s);
  }
  for (int i = 0; i < c.class_count(); ++i) lambda += Rational(acc.sums.col(i).squaredNorm(), s);
  return lambda;
}

ClassSumPenalty class_sum_penalty(std::span<const PointSet> classes) {
  if (classes.empty()) return {};
  const Index d = classes.front().rows();
  GridPoint total = GridPoint::Zero(d);
  for (const auto& a : classes) total += a.rowwise().sum();
  if (!total.isZero()) throw std::invalid_argument("class points must sum to zero");

  ClassSumPenalty out;
  for (const auto& a : classes) out.penalty += a.rowwise().sum().squaredNorm();
  std::int64_t dots = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      for (Index p = 0; p < classes[i].cols(); ++p)
        for (Index q = 0; q < classes[j].cols(); ++q) dots += classes[i].col(p).dot(classes[j].col(q));
  out.cross_term = -2 * dots;
  return out;
}

ClassSumPenalty class_sum_penalty(const Coloring& c) {
  const auto cls = c.classes();
  return class_sum_penalty(std::span<const PointSet>(cls));
}

std::pair<Rational, Rational> pairwise_to_centroid_identity(const PointSet& points) {
  const Index n = points.cols();
  if (n < 1) throw std::invalid_argument("need at least one point");
  std::int64_t pairwise = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) pairwise += (points.col(i) - points.col(j)).squaredNorm();
  // n·Σ‖p - s/n‖² = Σ‖n·p - s‖² / n
  const GridPoint sum = points.rowwise().sum();
  std::int64_t scaled = 0;
  for (Index i = 0; i < n; ++i) scaled += (n * points.col(i) - sum).squaredNorm();
  return {Rational(pairwise), Rational(scaled, n)};
}

SwapEvaluator::SwapEvaluator(const Coloring& c)
    : geometry_(c.geometry_ptr()), sizes_(c.partition().sizes()), labels_(c.labels()) {
  rebuild();
}

void SwapEvaluator::rebuild() {
  const auto acc = accumulate(*geometry_, labels_, static_cast<int>(sizes_.size()));
  sums_ = acc.sums;
  square_sums_ = acc.square_sums;
  energy_ = geometry_->size() * geometry_->second_moment;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    const auto k = static_cast<Index>(i);
    energy_ += sums_.col(k).squaredNorm() - sizes_[i] * square_sums_(k);
  }
}

void SwapEvaluator::reset(const std::vector<int>& labels) {
  labels_ = labels;
  rebuild();
}

std::int64_t SwapEvaluator::swap_delta(Index a, Index b) const {
  const int i = label(a);
  const int j = label(b);
  if (i == j) return 0;
  const auto& pts = geometry_->points;
  // t = b - a moves from class j into class i
  const std::int64_t delta_norm = geometry_->norms(b) - geometry_->norms(a);
  std::int64_t cross = 0;
  std::int64_t tt = 0;
  for (Index k = 0; k < pts.rows(); ++k) {
    const std::int64_t t = pts(k, b) - pts(k, a);
    cross += t * (sums_(k, i) - sums_(k, j));
    tt += t * t;
  }
  return (sizes_[j] - sizes_[i]) * delta_norm + 2 * cross + 2 * tt;
}

void SwapEvaluator::apply_swap(Index a, Index b) {
  const int i = label(a);
  const int j = label(b);
  if (i == j) return;
  energy_ += swap_delta(a, b);
  const auto& pts = geometry_->points;
  sums_.col(i) += pts.col(b) - pts.col(a);
  sums_.col(j) += pts.col(a) - pts.col(b);
  const std::int64_t delta_norm = geometry_->norms(b) - geometry_->norms(a);
  square_sums_(i) += delta_norm;
  square_sums_(j) -= delta_norm;
  std::swap(labels_[static_cast<std::size_t>(a)], labels_[static_cast<std::size_t>(b)]);
}

}  // namespace griddraw
