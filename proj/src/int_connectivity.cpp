#include "griddraw/int_connectivity.hpp"

#include "griddraw/brute.hpp"
#include "griddraw/detail/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace griddraw {

std::vector<std::int64_t> line_points(int n) {
  if (n < 1) throw std::invalid_argument("line drawing needs at least one vertex");
  std::vector<std::int64_t> pts;
  const std::int64_t h = n / 2;
  for (std::int64_t x = -h; x <= h; ++x)
    if (x != 0 || n % 2 == 1) pts.push_back(x);
  return pts;
}

void LineDrawing::validate() const {
  if (static_cast<int>(positions.size()) != graph.vertex_count()) {
    throw std::invalid_argument("line drawing needs one position per vertex");
  }
  auto sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != line_points(graph.vertex_count())) {
    throw std::invalid_argument("positions must be a bijection onto the symmetric line grid");
  }
}

Rational lambda_of_line_drawing(const LineDrawing& d) {
  d.validate();
  std::int64_t s = 0;
  for (const auto x : d.positions) s += x * x;
  if (s == 0) throw std::domain_error("degenerate line drawing: S = 0");
  return {line_energy(d.graph, d.positions), s};
}

namespace {

/// Exhaustive arrangement search with a lower-bound cut. Every edge costs at
/// least `min_edge_cost`; costs combine by sum or by max.
template <class Cost, bool UseMax, class EdgeCost>
std::pair<Cost, std::vector<std::int64_t>> arrangement_search(const Graph& g, const std::vector<std::int64_t>& pts,
                                                              EdgeCost edge_cost, Cost min_edge_cost,
                                                              std::uint64_t limit, unsigned threads) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("arrangement search needs at least two vertices");
  const auto states = factorial_saturating(n) / 2;
  if (states > limit) {
    throw InstanceTooLarge("arrangement search needs " + std::to_string(states) + " states, limit is " +
                           std::to_string(limit));
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
  std::vector<std::vector<int>> earlier(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (const int u : g.neighbors(order[static_cast<std::size_t>(k)]))
      if (rank[static_cast<std::size_t>(u)] < k) earlier[static_cast<std::size_t>(k)].push_back(rank[static_cast<std::size_t>(u)]);
  std::vector<std::int64_t> unplaced(static_cast<std::size_t>(n) + 1, 0);
  for (int k = n; k-- > 0;)
    unplaced[static_cast<std::size_t>(k)] =
        unplaced[static_cast<std::size_t>(k) + 1] + static_cast<std::int64_t>(earlier[static_cast<std::size_t>(k)].size());

  auto combine = [](Cost acc, Cost c) { return UseMax ? std::max(acc, c) : acc + c; };
  auto bound = [&](Cost partial, int k) {
    const auto rest = unplaced[static_cast<std::size_t>(k)];
    if (UseMax) return rest > 0 ? std::max(partial, min_edge_cost) : partial;
    return partial + static_cast<Cost>(rest) * min_edge_cost;
  };

  // incumbent from the identity placement; ties are never cut, so it cannot hide an optimum
  Cost seed{};
  for (int k = 0; k < n; ++k)
    for (const int m : earlier[static_cast<std::size_t>(k)])
      seed = combine(seed, edge_cost(std::abs(pts[static_cast<std::size_t>(k)] - pts[static_cast<std::size_t>(m)])));
  std::atomic<Cost> incumbent{seed};

  const std::int64_t mirror = pts.front() + pts.back();
  struct TaskResult {
    bool found = false;
    Cost best{};
    std::vector<std::int64_t> placement;  // by search order
  };
  std::vector<TaskResult> results(static_cast<std::size_t>(n));

  detail::for_each_task(results.size(), threads, [&](std::size_t task) {
    if (2 * pts[task] < mirror) return;
    auto& res = results[task];
    std::vector<std::int64_t> placed(static_cast<std::size_t>(n));
    std::vector<char> used(pts.size(), 0);
    const bool centered = 2 * pts[task] == mirror;

    auto dfs = [&](auto&& self, int k, Cost partial) -> void {
      if (k == n) {
        if (!res.found || partial < res.best) {
          res.found = true;
          res.best = partial;
          res.placement = placed;
          Cost cur = incumbent.load(std::memory_order_relaxed);
          while (partial < cur && !incumbent.compare_exchange_weak(cur, partial, std::memory_order_relaxed)) {
          }
        }
        return;
      }
      for (std::size_t idx = 0; idx < pts.size(); ++idx) {
        if (used[idx]) continue;
        if (k == 1 && centered && 2 * pts[idx] < mirror) continue;
        const auto x = pts[idx];
        Cost next = partial;
        for (const int m : earlier[static_cast<std::size_t>(k)]) {
          next = combine(next, edge_cost(std::abs(x - placed[static_cast<std::size_t>(m)])));
        }
        if (bound(next, k + 1) > incumbent.load(std::memory_order_relaxed)) continue;
        used[idx] = 1;
        placed[static_cast<std::size_t>(k)] = x;
        self(self, k + 1, next);
        used[idx] = 0;
      }
    };

    used[task] = 1;
    placed[0] = pts[task];
    dfs(dfs, 1, Cost{});
  });

  const TaskResult* best = nullptr;
  for (const auto& r : results)
    if (r.found && (best == nullptr || r.best < best->best)) best = &r;
  if (best == nullptr) throw std::logic_error("arrangement search found no drawing");
  std::vector<std::int64_t> positions(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) positions[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = best->placement[static_cast<std::size_t>(k)];
  return {best->best, std::move(positions)};
}

}  // namespace

IntConnectivity lambda2_int(const Graph& g, std::uint64_t limit, unsigned threads) {
  const auto pts = line_points(g.vertex_count());
  auto [energy, positions] = arrangement_search<std::int64_t, false>(
      g, pts, [](std::int64_t len) { return len * len; }, std::int64_t{1}, limit, threads);
  if (positions[0] < 0)
    for (auto& x : positions) x = -x;
  std::int64_t s = 0;
  for (const auto x : pts) s += x * x;
  return {Rational(energy, s), energy, s, LineDrawing{g, std::move(positions)}};
}

MinPSum min_p_sum(const Graph& g, double p, std::uint64_t limit, unsigned threads) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  std::vector<std::int64_t> pts(static_cast<std::size_t>(g.vertex_count()));
  std::iota(pts.begin(), pts.end(), std::int64_t{1});
  MinPSum out;
  if (std::isinf(p)) {
    auto [width, mapping] = arrangement_search<std::int64_t, true>(
        g, pts, [](std::int64_t len) { return len; }, std::int64_t{1}, limit, threads);
    out.value = static_cast<double>(width);
    out.bandwidth = width;
    out.mapping = std::move(mapping);
  } else if (p == 2.0) {
    auto [sum, mapping] = arrangement_search<std::int64_t, false>(
        g, pts, [](std::int64_t len) { return len * len; }, std::int64_t{1}, limit, threads);
    out.value = std::sqrt(static_cast<double>(sum));
    out.sigma2_squared = sum;
    out.mapping = std::move(mapping);
  } else {
    auto [sum, mapping] = arrangement_search<double, false>(
        g, pts, [p](std::int64_t len) { return std::pow(static_cast<double>(len), p); }, 1.0, limit, threads);
    out.value = std::pow(sum, 1.0 / p);
    out.mapping = std::move(mapping);
  }
  return out;
}

SuperadditivityReport edge_disjoint_superadditivity_check(const Graph& g, const Graph& h, std::uint64_t limit) {
  if (g.vertex_count() != h.vertex_count()) throw std::invalid_argument("graphs must share the vertex set");
  for (const auto& [u, v] : h.edges())
    if (g.has_edge(u, v)) throw std::invalid_argument("graphs must be edge-disjoint");
  SuperadditivityReport rep;
  rep.lambda_g = lambda2_int(g, limit).value;
  rep.lambda_h = lambda2_int(h, limit).value;
  rep.lambda_union = lambda2_int(graph_union(g, h), limit).value;
  rep.holds = rep.lambda_g + rep.lambda_h <= rep.lambda_union;
  return rep;
}

std::pair<Rational, Rational> edge_addition_increments(int n) {
  std::int64_t sq = 0;
  for (std::int64_t i = 1; i <= n / 2; ++i) sq += i * i;
  if (sq == 0) throw std::invalid_argument("edge addition bounds need at least two vertices");
  return {Rational(1, 2 * sq), Rational(std::int64_t{n} * n, 2 * sq)};
}

EdgeAdditionReport edge_addition_bounds_check(const Graph& g, Edge e, std::uint64_t limit) {
  const auto added = g.with_edge(e);
  const auto [lo, hi] = edge_addition_increments(g.vertex_count());
  EdgeAdditionReport rep;
  rep.before = lambda2_int(g, limit).value;
  rep.after = lambda2_int(added, limit).value;
  rep.lower = rep.before + lo;
  rep.upper = rep.before + hi;
  rep.holds = rep.lower <= rep.after && rep.after <= rep.upper;
  return rep;
}

Rational product_bound(const Rational& lambda_g, int order_g, const Rational& lambda_h, int order_h) {
  const std::int64_t g2 = std::int64_t{order_g} * order_g;
  const std::int64_t h2 = std::int64_t{order_h} * order_h;
  const std::int64_t den = g2 * h2 - 1;
  return lambda_g * Rational(g2 - 1, den) + lambda_h * Rational(g2 * (h2 - 1), den);
}

CartesianDrawing cartesian_drawing(const LineDrawing& g_opt, const LineDrawing& h_opt, ProductLayout layout) {
  g_opt.validate();
  h_opt.validate();
  const int ng = g_opt.graph.vertex_count();
  const int nh = h_opt.graph.vertex_count();
  if (ng % 2 == 0 || nh % 2 == 0) throw std::invalid_argument("block drawing needs odd factor orders");
  auto product = cartesian_product(g_opt.graph, h_opt.graph);
  std::vector<std::int64_t> pos(static_cast<std::size_t>(ng) * static_cast<std::size_t>(nh));
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < nh; ++j) {
      const auto gi = g_opt.positions[static_cast<std::size_t>(i)];
      const auto hj = h_opt.positions[static_cast<std::size_t>(j)];
      pos[static_cast<std::size_t>(i * nh + j)] = layout == ProductLayout::g_blocks ? ng * hj + gi : nh * gi + hj;
    }
  LineDrawing drawing{std::move(product), std::move(pos)};
  const auto lambda = lambda_of_line_drawing(drawing);
  const auto lg = lambda_of_line_drawing(g_opt);
  const auto lh = lambda_of_line_drawing(h_opt);
  const auto bound = layout == ProductLayout::g_blocks ? product_bound(lg, ng, lh, nh) : product_bound(lh, nh, lg, ng);
  return {std::move(drawing), lambda, bound};
}

LineDrawing hypercube_drawing(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("hypercube drawing supports 1 <= k <= 4");
  // order[t] is the vertex at the t-th smallest point
  std::vector<int> order{0};
  for (int level = 1; level <= k; ++level) {
    const int top = 1 << (level - 1);
    std::vector<int> next;
    for (const int v : order) next.push_back(v | top);
    next.insert(next.end(), order.begin(), order.end());
    order = std::move(next);
  }
  const int n = 1 << k;
  const auto pts = line_points(n);
  std::vector<std::int64_t> pos(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = pts[static_cast<std::size_t>(t)];
  return {hypercube(n), std::move(pos)};
}

LineDrawing prop9_product_drawing() {
  const auto g = prop9_graph();
  std::vector<std::int64_t> pos(25);
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      std::int64_t x = 0;
      if (i <= 3 && j <= 3) {
        x = -12 + 3 * (i - 1) + (j - 1);
      } else if (i <= 3) {
        x = -3 + 2 * (i - 1) + (j - 4);
      } else {
        x = 3 + 5 * (i - 4) + (j - 1);
      }
      pos[static_cast<std::size_t>((i - 1) * 5 + (j - 1))] = x;
    }
  LineDrawing d{cartesian_product(g, g), std::move(pos)};
  d.validate();
  return d;
}

}  // namespace griddraw
