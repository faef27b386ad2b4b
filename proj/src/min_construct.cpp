#include "griddraw/min_construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace griddraw {

std::string_view to_string(MinMethod m) {
  switch (m) {
    case MinMethod::ring_heuristic: return "ring_heuristic";
    case MinMethod::zero_sum_construction: return "zero_sum_construction";
    case MinMethod::penalty_local_search: return "penalty_local_search";
    case MinMethod::exact_search: return "exact_search";
  }
  return "unknown";
}

namespace {

void require_size_match(const PartitionSpec& spec, const GridSpec& grid) {
  if (spec.total() != grid.point_count()) {
    throw std::invalid_argument("class sizes add up to " + std::to_string(spec.total()) + " but the grid has " +
                                std::to_string(grid.point_count()) + " points");
  }
}

MinResult finish(Coloring c, MinMethod method) {
  const auto lambda = lambda_raw(c);
  const auto& p = c.partition();
  const bool certified = lambda == Rational(p.total() - p.largest());
  return MinResult{std::move(c), lambda, method, certified};
}

/// Canonical points ordered by squared norm, then lexicographically.
std::vector<Index> ring_order(const GridGeometry& geo) {
  std::vector<Index> order(static_cast<std::size_t>(geo.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return geo.norms(a) < geo.norms(b); });
  return order;
}

class ZeroSumSearch {
 public:
  ZeroSumSearch(const GridGeometry& geo, int classes, int class_size, std::uint64_t cap)
      : geo_(geo), r_(classes), capacity_(static_cast<std::size_t>(classes), class_size), cap_(cap) {
    // descending norm; each v is followed by -v so negation-closed pairs form naturally
    order_.resize(static_cast<std::size_t>(geo.size()));
    std::iota(order_.begin(), order_.end(), Index{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Index a, Index b) { return geo.norms(a) > geo.norms(b); });
    std::vector<Index> paired;
    std::vector<bool> used(static_cast<std::size_t>(geo.size()), false);
    for (const Index p : order_) {
      if (used[static_cast<std::size_t>(p)]) continue;
      used[static_cast<std::size_t>(p)] = true;
      paired.push_back(p);
      const GridPoint neg = -geo.points.col(p);
      const auto q = point_index(geo.spec, neg);
      if (q >= 0 && !used[static_cast<std::size_t>(q)]) {
        used[static_cast<std::size_t>(q)] = true;
        paired.push_back(q);
      }
    }
    order_ = std::move(paired);
    suffix_max_.assign(order_.size() + 1, 0);
    for (std::size_t k = order_.size(); k-- > 0;) {
      suffix_max_[k] = std::max(suffix_max_[k + 1], geo.points.col(order_[k]).cwiseAbs().maxCoeff());
    }
    sums_ = PointsX<std::int64_t>::Zero(geo.spec.dim, r_);
    labels_.assign(static_cast<std::size_t>(geo.size()), -1);
  }

  bool run() { return dfs(0); }
  [[nodiscard]] bool exhausted_cap() const { return nodes_ >= cap_; }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }

 private:
  bool dfs(std::size_t k) {
    if (k == order_.size()) return true;
    if (++nodes_ >= cap_) return false;
    const Index p = order_[k];
    const auto v = geo_.points.col(p);

    std::vector<int> candidates;
    bool empty_taken = false;
    for (int i = 0; i < r_; ++i) {
      if (capacity_[static_cast<std::size_t>(i)] == 0) continue;
      const bool empty = used_[static_cast<std::size_t>(i)] == 0;
      if (empty) {
        // classes are interchangeable while unused
        if (empty_taken) continue;
        empty_taken = true;
      }
      candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      return (sums_.col(a) + v).squaredNorm() < (sums_.col(b) + v).squaredNorm();
    });

    for (const int i : candidates) {
      auto& cap = capacity_[static_cast<std::size_t>(i)];
      sums_.col(i) += v;
      --cap;
      ++used_[static_cast<std::size_t>(i)];
      labels_[static_cast<std::size_t>(p)] = i;
      if (feasible(k + 1) && dfs(k + 1)) return true;
      labels_[static_cast<std::size_t>(p)] = -1;
      --used_[static_cast<std::size_t>(i)];
      ++cap;
      sums_.col(i) -= v;
      if (nodes_ >= cap_) return false;
    }
    return false;
  }

  // every class must still be able to cancel its sum with the points left
  bool feasible(std::size_t next) const {
    const auto bound = suffix_max_[next];
    for (int i = 0; i < r_; ++i) {
      const auto reach = bound * capacity_[static_cast<std::size_t>(i)];
      if (sums_.col(i).cwiseAbs().maxCoeff() > reach) return false;
    }
    return true;
  }

  const GridGeometry& geo_;
  int r_;
  std::vector<int> capacity_;
  std::vector<int> used_ = std::vector<int>(static_cast<std::size_t>(r_), 0);
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<Index> order_;
  std::vector<std::int64_t> suffix_max_;
  PointsX<std::int64_t> sums_;
  std::vector<int> labels_;
};

/// Pairwise-swap descent on the class-sum penalty. With equal class sizes the
/// energy delta of a swap is exactly the penalty delta.
std::vector<int> penalty_descent(const Coloring& start) {
  SwapEvaluator eval(start);
  const Index n = start.geometry().size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (Index a = 0; a < n; ++a) {
      for (Index b = a + 1; b < n; ++b) {
        if (eval.label(a) != eval.label(b) && eval.swap_delta(a, b) < 0) {
          eval.apply_swap(a, b);
          improved = true;
        }
      }
    }
  }
  return eval.labels();
}

}  // namespace

MinResult ring_construction(const PartitionSpec& spec, const GridSpec& grid) {
  require_size_match(spec, grid);
  const auto geo = make_geometry(grid);
  const auto order = ring_order(*geo);
  std::vector<int> labels(order.size());
  std::size_t k = 0;
  for (int i = 0; i < spec.class_count(); ++i)
    for (int j = 0; j < spec.size(i); ++j) labels[static_cast<std::size_t>(order[k++])] = i;
  return finish(Coloring(geo, spec, std::move(labels)), MinMethod::ring_heuristic);
}

MinResult zero_sum_construction(const PartitionSpec& spec, const GridSpec& grid, const ZeroSumOptions& opts) {
  require_size_match(spec, grid);
  if (!spec.all_equal()) throw std::invalid_argument("zero-sum construction needs equal class sizes");
  const auto geo = make_geometry(grid);
  ZeroSumSearch search(*geo, spec.class_count(), spec.size(0), opts.node_cap);
  if (search.run()) return finish(Coloring(geo, spec, search.labels()), MinMethod::zero_sum_construction);

  // start the descent from the ring layout dealt round-robin
  const auto order = ring_order(*geo);
  std::vector<int> labels(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    labels[static_cast<std::size_t>(order[k])] = static_cast<int>(k % static_cast<std::size_t>(spec.class_count()));
  }
  const Coloring start(geo, spec, std::move(labels));
  return finish(Coloring(geo, spec, penalty_descent(start)), MinMethod::penalty_local_search);
}

MinResult exact_min_search(const PartitionSpec& spec, const GridSpec& grid, std::uint64_t limit, unsigned threads) {
  require_size_match(spec, grid);
  EnumerationOptions opts;
  opts.limit = limit;
  opts.witness_cap = 1;
  opts.threads = threads;
  const auto stats = enumerate_coloring_energies(spec, grid, opts);
  return finish(Coloring(grid, spec, stats.argmins.front()), MinMethod::exact_search);
}

OptimalDrawingCount count_optimal_drawings(int m, std::uint64_t limit) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (m > 4) throw InstanceTooLarge("optimal-drawing count is enumerated only for m <= 4");
  OptimalDrawingCount out;
  out.m = m;
  out.upper_bound = std::uint64_t{1} << (4 * m);

  std::vector<std::int64_t> nonzero;
  for (std::int64_t x = -2 * m; x <= 2 * m; ++x)
    if (x != 0) nonzero.push_back(x);
  // 2m-subsets of the nonzero points with zero sum; the complement then sums to zero too
  std::vector<bool> pick(nonzero.size(), false);
  std::fill(pick.end() - 2 * m, pick.end(), true);
  do {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < pick.size(); ++i)
      if (pick[i]) s += nonzero[i];
    if (s == 0) ++out.zero_sum_count;
  } while (std::next_permutation(pick.begin(), pick.end()));

  const PartitionSpec spec({1, 2 * m, 2 * m});
  if (spec.multinomial() <= limit) {
    EnumerationOptions opts;
    opts.limit = limit;
    opts.witness_cap = 0;
    out.exhaustive_minimizers = enumerate_coloring_energies(spec, GridSpec{1, 2 * m, false}, opts).argmin_count;
  }
  return out;
}

}  // namespace griddraw
