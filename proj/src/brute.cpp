#include "griddraw/brute.hpp"

#include "griddraw/detail/parallel.hpp"
#include "griddraw/rational.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace griddraw {

namespace {

template <class Witness>
void record(EnumerationStats<Witness>& s, std::int64_t metric, const Witness& w, std::size_t cap) {
  ++s.visited;
  if (metric < s.min_metric) {
    s.min_metric = metric;
    s.argmin_count = 0;
    s.argmins.clear();
  }
  if (metric == s.min_metric) {
    ++s.argmin_count;
    if (s.argmins.size() < cap) s.argmins.push_back(w);
  }
  if (metric > s.max_metric) {
    s.max_metric = metric;
    s.argmax_count = 0;
    s.argmaxes.clear();
  }
  if (metric == s.max_metric) {
    ++s.argmax_count;
    if (s.argmaxes.size() < cap) s.argmaxes.push_back(w);
  }
}

/// Ordered merge: `later` was enumerated after `acc`.
template <class Witness>
void merge_into(EnumerationStats<Witness>& acc, const EnumerationStats<Witness>& later, std::size_t cap) {
  acc.visited += later.visited;
  if (later.visited == 0) return;
  auto merge_side = [cap](std::int64_t& best, std::uint64_t& count, std::vector<Witness>& wits, std::int64_t other,
                          std::uint64_t other_count, const std::vector<Witness>& other_wits, bool minimize) {
    const bool better = minimize ? other < best : other > best;
    if (better) {
      best = other;
      count = other_count;
      wits = other_wits;
    } else if (other == best) {
      count += other_count;
      for (const auto& w : other_wits) {
        if (wits.size() >= cap) break;
        wits.push_back(w);
      }
    }
  };
  merge_side(acc.min_metric, acc.argmin_count, acc.argmins, later.min_metric, later.argmin_count, later.argmins, true);
  merge_side(acc.max_metric, acc.argmax_count, acc.argmaxes, later.max_metric, later.argmax_count, later.argmaxes,
             false);
}

}  // namespace

std::uint64_t factorial_saturating(int n) {
  unsigned __int128 f = 1;
  for (int i = 2; i <= n; ++i) {
    f *= static_cast<unsigned>(i);
    if (f > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(f);
}

std::int64_t line_energy(const Graph& g, std::span<const std::int64_t> positions) {
  std::int64_t e = 0;
  for (const auto& [u, v] : g.edges()) {
    const auto d = positions[static_cast<std::size_t>(u)] - positions[static_cast<std::size_t>(v)];
    e += d * d;
  }
  return e;
}

ColoringStats enumerate_colorings(const PartitionSpec& spec, const GridSpec& grid, const ColoringVisitor& visitor,
                                  const EnumerationOptions& opts) {
  if (spec.total() != grid.point_count()) throw std::invalid_argument("class sizes must add up to the grid size");
  const auto states = spec.multinomial();
  if (states > opts.limit) {
    throw InstanceTooLarge("coloring enumeration needs " + std::to_string(states) + " states, limit is " +
                           std::to_string(opts.limit));
  }
  const int r = spec.class_count();
  // one task per choice of the first label
  std::vector<ColoringStats> partial(static_cast<std::size_t>(r));
  detail::for_each_task(partial.size(), opts.threads, [&](std::size_t task) {
    const int first = static_cast<int>(task);
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(spec.total()));
    labels.push_back(first);
    for (int i = 0; i < r; ++i) labels.insert(labels.end(), spec.size(i) - (i == first ? 1 : 0), i);
    auto& stats = partial[task];
    do {
      record(stats, visitor(labels), labels, opts.witness_cap);
    } while (std::next_permutation(labels.begin() + 1, labels.end()));
  });
  ColoringStats out;
  for (const auto& p : partial) merge_into(out, p, opts.witness_cap);
  return out;
}

ColoringStats enumerate_coloring_energies(const PartitionSpec& spec, const GridSpec& grid,
                                          const EnumerationOptions& opts) {
  const auto geo = make_geometry(grid);
  const auto& pts = geo->points;
  const std::int64_t base = geo->size() * geo->second_moment;
  const int r = spec.class_count();
  const auto d = pts.rows();
  return enumerate_colorings(
      spec, grid,
      [&](std::span<const int> labels) {
        // N·S - Σ n_i Q_i + Σ‖s_i‖², accumulated without allocation for small d and r
        std::int64_t sums[16][4] = {};
        std::int64_t squares[16] = {};
        if (r > 16 || d > 4) {
          return edge_energy_closed_form(
              Coloring(geo, spec, std::vector<int>(labels.begin(), labels.end())));
        }
        for (Index p = 0; p < geo->size(); ++p) {
          const int l = labels[static_cast<std::size_t>(p)];
          squares[l] += geo->norms(p);
          for (Index k = 0; k < d; ++k) sums[l][k] += pts(k, p);
        }
        std::int64_t e = base;
        for (int i = 0; i < r; ++i) {
          e -= spec.size(i) * squares[i];
          for (Index k = 0; k < d; ++k) e += sums[i][k] * sums[i][k];
        }
        return e;
      },
      opts);
}

BijectionStats enumerate_bijections(const Graph& g, std::span<const std::int64_t> point_set,
                                    const BijectionVisitor& visitor, const EnumerationOptions& opts) {
  const int n = g.vertex_count();
  if (static_cast<int>(point_set.size()) != n) throw std::invalid_argument("point set size must equal vertex count");
  std::vector<std::int64_t> pts(point_set.begin(), point_set.end());
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) throw std::invalid_argument("points must be distinct");
  const std::int64_t mirror = pts.front() + pts.back();  // x -> mirror - x
  const bool prune = opts.symmetry_pruning && n >= 2;
  if (prune) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i] + pts[pts.size() - 1 - i] != mirror) {
        throw std::invalid_argument("symmetry pruning needs a mirror-symmetric point set");
      }
  }
  const auto total = factorial_saturating(n);
  const auto states = prune ? total / 2 : total;
  if (states > opts.limit) {
    throw InstanceTooLarge("bijection enumeration needs " + std::to_string(states) + " states, limit is " +
                           std::to_string(opts.limit));
  }

  std::vector<BijectionStats> partial(static_cast<std::size_t>(n));
  detail::for_each_task(partial.size(), opts.threads, [&](std::size_t task) {
    const std::int64_t first = pts[task];
    if (prune && 2 * first < mirror) return;
    std::vector<std::int64_t> pos;
    pos.reserve(pts.size());
    pos.push_back(first);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != task) pos.push_back(pts[i]);
    auto& stats = partial[task];
    do {
      if (prune && 2 * first == mirror && 2 * pos[1] < mirror) continue;
      record(stats, visitor(pos), pos, opts.witness_cap);
    } while (std::next_permutation(pos.begin() + 1, pos.end()));
  });
  BijectionStats out;
  for (const auto& p : partial) merge_into(out, p, opts.witness_cap);
  return out;
}

}  // namespace griddraw
