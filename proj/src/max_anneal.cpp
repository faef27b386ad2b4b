#include "griddraw/max_anneal.hpp"

#include "griddraw/brute.hpp"
#include "griddraw/detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

namespace griddraw {

void AnnealConfig::validate() const {
  if (!(initial_temperature > 0.0)) throw std::invalid_argument("initial temperature must be positive");
  if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) throw std::invalid_argument("cooling factor must lie in (0,1)");
  if (!(minimum_temperature > 0.0)) throw std::invalid_argument("minimum temperature must be positive");
  if (chains < 1) throw std::invalid_argument("at least one chain is required");
}

namespace {

void require_size_match(const PartitionSpec& spec, const GridSpec& grid) {
  if (spec.total() != grid.point_count()) throw std::invalid_argument("class sizes must add up to the grid size");
}

/// Class membership lists that support O(1) swaps and uniform sampling of a
/// point outside a given class.
class Membership {
 public:
  Membership(const std::vector<int>& labels, int classes) : members_(static_cast<std::size_t>(classes)) {
    slot_.resize(labels.size());
    for (std::size_t p = 0; p < labels.size(); ++p) {
      auto& m = members_[static_cast<std::size_t>(labels[p])];
      slot_[p] = m.size();
      m.push_back(static_cast<Index>(p));
    }
  }

  /// k-th point, in class order, among the classes other than `skip`.
  [[nodiscard]] Index outside(int skip, std::size_t k) const {
    for (std::size_t c = 0; c < members_.size(); ++c) {
      if (static_cast<int>(c) == skip) continue;
      if (k < members_[c].size()) return members_[c][k];
      k -= members_[c].size();
    }
    return -1;
  }

  void swap(Index a, int class_a, Index b, int class_b) {
    auto& ma = members_[static_cast<std::size_t>(class_a)];
    auto& mb = members_[static_cast<std::size_t>(class_b)];
    const auto sa = slot_[static_cast<std::size_t>(a)];
    const auto sb = slot_[static_cast<std::size_t>(b)];
    ma[sa] = b;
    mb[sb] = a;
    slot_[static_cast<std::size_t>(a)] = sb;
    slot_[static_cast<std::size_t>(b)] = sa;
  }

 private:
  std::vector<std::vector<Index>> members_;
  std::vector<std::size_t> slot_;
};

struct ChainOutcome {
  std::int64_t best_energy = 0;
  std::vector<int> best_labels;
  std::vector<std::int64_t> history;
};

ChainOutcome run_chain(const std::shared_ptr<const GridGeometry>& geo, const PartitionSpec& spec,
                       const AnnealConfig& cfg, Objective objective, unsigned chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(chain)};
  std::mt19937_64 rng(seq);

  const auto n = static_cast<std::size_t>(geo->size());
  std::vector<int> labels;
  labels.reserve(n);
  for (int i = 0; i < spec.class_count(); ++i) labels.insert(labels.end(), spec.size(i), i);
  std::shuffle(labels.begin(), labels.end(), rng);

  SwapEvaluator eval(Coloring(geo, spec, labels));
  Membership members(labels, spec.class_count());
  const double sign = objective == Objective::maximize ? 1.0 : -1.0;
  const double inv_s = 1.0 / static_cast<double>(geo->second_moment);
  const auto steps = cfg.steps_per_temperature ? cfg.steps_per_temperature : 200 * static_cast<std::uint64_t>(n);
  auto better = [objective](std::int64_t a, std::int64_t b) {
    return objective == Objective::maximize ? a > b : a < b;
  };

  ChainOutcome out{eval.energy(), eval.labels(), {}};
  std::uniform_int_distribution<std::size_t> pick_point(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (double t = cfg.initial_temperature; t > cfg.minimum_temperature; t *= cfg.cooling_factor) {
    for (std::uint64_t step = 0; step < steps; ++step) {
      const auto a = static_cast<Index>(pick_point(rng));
      const int ca = eval.label(a);
      const auto outside = n - static_cast<std::size_t>(spec.size(ca));
      const auto b = members.outside(ca, std::uniform_int_distribution<std::size_t>(0, outside - 1)(rng));
      const int cb = eval.label(b);
      const auto delta = eval.swap_delta(a, b);
      const double gain = sign * static_cast<double>(delta) * inv_s;
      if (gain >= 0.0 || unit(rng) < std::exp(gain / t)) {
        eval.apply_swap(a, b);
        members.swap(a, ca, b, cb);
        if (better(eval.energy(), out.best_energy)) {
          out.best_energy = eval.energy();
          out.best_labels = eval.labels();
        }
      }
    }
    out.history.push_back(out.best_energy);
  }
  return out;
}

}  // namespace

AnnealResult anneal(const PartitionSpec& spec, const GridSpec& grid, const AnnealConfig& cfg, Objective objective) {
  require_size_match(spec, grid);
  cfg.validate();
  const auto geo = make_geometry(grid);
  if (geo->second_moment == 0) throw std::domain_error("degenerate grid: S = 0");

  std::vector<std::optional<ChainOutcome>> chains(cfg.chains);
  detail::for_each_task(chains.size(), cfg.threads, [&](std::size_t k) {
    chains[k] = run_chain(geo, spec, cfg, objective, static_cast<unsigned>(k));
  });

  // ordered reduction: earliest chain wins ties
  unsigned best = 0;
  std::vector<std::int64_t> energies;
  for (unsigned k = 0; k < chains.size(); ++k) {
    energies.push_back(chains[k]->best_energy);
    const bool improves = objective == Objective::maximize ? chains[k]->best_energy > chains[best]->best_energy
                                                            : chains[k]->best_energy < chains[best]->best_energy;
    if (improves) best = k;
  }
  auto& win = *chains[best];
  Coloring coloring(geo, spec, std::move(win.best_labels));
  return AnnealResult{std::move(coloring), Rational(win.best_energy, geo->second_moment), win.best_energy, best,
                      std::move(energies), std::move(win.history)};
}

AnnealResult anneal_max(const PartitionSpec& spec, const GridSpec& grid, const AnnealConfig& cfg) {
  return anneal(spec, grid, cfg, Objective::maximize);
}

ExactMaxResult exact_max_search(const PartitionSpec& spec, const GridSpec& grid, std::uint64_t limit,
                                unsigned threads) {
  require_size_match(spec, grid);
  EnumerationOptions opts;
  opts.limit = limit;
  opts.witness_cap = 1;
  opts.threads = threads;
  const auto stats = enumerate_coloring_energies(spec, grid, opts);
  Coloring c(grid, spec, stats.argmaxes.front());
  const auto lambda = lambda_raw(c);
  return {std::move(c), lambda};
}

std::string_view to_string(WeightRule rule) {
  switch (rule) {
    case WeightRule::fitted: return "fitted";
    case WeightRule::inverse_sqrt_size: return "inverse_sqrt_size";
    case WeightRule::sqrt_size: return "sqrt_size";
    case WeightRule::uniform: return "uniform";
    case WeightRule::capacity_offsets: return "capacity_offsets";
  }
  return "unknown";
}

namespace {

using Wide = __int128;

/// Exact centroid data: class sums and sizes. n_i² ‖x - c_i‖² = ‖n_i x - s_i‖².
struct Centroids {
  PointsX<std::int64_t> sums;
  std::vector<std::int64_t> sizes;

  explicit Centroids(const Coloring& c)
      : sums(PointsX<std::int64_t>::Zero(c.grid().dim, c.class_count())), sizes(c.partition().sizes().begin(),
                                                                                  c.partition().sizes().end()) {
    const auto& geo = c.geometry();
    for (Index p = 0; p < geo.size(); ++p) sums.col(c.label(p)) += geo.points.col(p);
  }

  /// ‖n_i x - s_i‖², i.e. n_i² times the squared distance to the centroid.
  [[nodiscard]] std::int64_t scaled_distance(const GridGeometry& geo, Index p, int i) const {
    std::int64_t d = 0;
    for (Index k = 0; k < sums.rows(); ++k) {
      const auto t = sizes[static_cast<std::size_t>(i)] * geo.points(k, p) - sums(k, i);
      d += t * t;
    }
    return d;
  }
};

/// Squared weights as exact ratios for the closed-form rules.
std::pair<std::int64_t, std::int64_t> squared_weight(WeightRule rule, std::int64_t n) {
  switch (rule) {
    case WeightRule::inverse_sqrt_size: return {1, n};
    case WeightRule::sqrt_size: return {n, 1};
    default: return {1, 1};
  }
}

std::vector<Index> count_violations_exact(const Coloring& c, const Centroids& cen, WeightRule rule) {
  const auto& geo = c.geometry();
  std::vector<Index> out;
  const int r = c.class_count();
  for (Index p = 0; p < geo.size(); ++p) {
    const int i = c.label(p);
    const auto ni = cen.sizes[static_cast<std::size_t>(i)];
    const auto di = cen.scaled_distance(geo, p, i);
    const auto [wi_num, wi_den] = squared_weight(rule, ni);
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      const auto nj = cen.sizes[static_cast<std::size_t>(j)];
      const auto dj = cen.scaled_distance(geo, p, j);
      const auto [wj_num, wj_den] = squared_weight(rule, nj);
      // ‖x-c_j‖² w_i² < ‖x-c_i‖² w_j²  with ‖x-c_k‖² = d_k / n_k²
      const Wide lhs = Wide(dj) * wi_num * wj_den * ni * ni;
      const Wide rhs = Wide(di) * wj_num * wi_den * nj * nj;
      if (lhs < rhs) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

/// Per point and class: the score whose argmax decides the region, so that
/// x ∈ A_i is fine iff score(x, i) >= score(x, j) for every j.
///   multiplicative: log w_k - log ‖x - c_k‖
///   capacity offsets: -(n_k ‖x - c_k‖² + μ_k)
class RegionScores {
 public:
  RegionScores(const Coloring& c, const Centroids& cen, bool offsets) : c_(c) {
    const auto& geo = c.geometry();
    const int r = c.class_count();
    base_.resize(geo.size(), r);
    for (Index p = 0; p < geo.size(); ++p)
      for (int k = 0; k < r; ++k) {
        const auto n = static_cast<double>(cen.sizes[static_cast<std::size_t>(k)]);
        const auto d = static_cast<double>(cen.scaled_distance(geo, p, k));
        // n_k‖x-c_k‖² = ‖n_k x - s_k‖² / n_k;  log‖x-c_k‖ = (log ‖n_k x - s_k‖² - 2 log n_k) / 2
        base_(p, k) = offsets ? -d / n : (d == 0.0 ? std::numeric_limits<double>::infinity()
                                                   : -0.5 * (std::log(d) - 2.0 * std::log(n)));
      }
  }

  [[nodiscard]] Index points() const { return base_.rows(); }
  [[nodiscard]] int classes() const { return static_cast<int>(base_.cols()); }
  [[nodiscard]] double base(Index p, int k) const { return base_(p, k); }

  /// Violated points for potentials y (log weights, or -μ).
  [[nodiscard]] std::vector<Index> violations(const Eigen::VectorXd& y) const {
    std::vector<Index> out;
    for (Index p = 0; p < points(); ++p)
      if (violated(p, y)) out.push_back(p);
    return out;
  }

  [[nodiscard]] std::size_t count(const Eigen::VectorXd& y) const {
    std::size_t n = 0;
    for (Index p = 0; p < points(); ++p) n += violated(p, y) ? 1 : 0;
    return n;
  }

 private:
  [[nodiscard]] bool violated(Index p, const Eigen::VectorXd& y) const {
    const int i = c_.label(p);
    const double own = base_(p, i) + y(i);
    for (int j = 0; j < classes(); ++j) {
      if (j == i) continue;
      const double other = base_(p, j) + y(j);
      if (std::isinf(other) && other > 0) return !(std::isinf(own) && own > 0);
      if (other > own + 1e-9 * std::max({1.0, std::abs(own), std::abs(other)})) return true;
    }
    return false;
  }

  const Coloring& c_;
  Eigen::MatrixXd base_;
};

/// Potentials y with base(x, i) + y_i >= base(x, j) + y_j for every x ∈ A_i, as
/// difference constraints y_j - y_i <= min_x (base(x, i) - base(x, j)) solved by
/// Bellman-Ford. Returns the potentials and whether they satisfy every constraint.
std::pair<Eigen::VectorXd, bool> fit_potentials(const Coloring& c, const RegionScores& s) {
  const int r = s.classes();
  constexpr double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd upper = Eigen::MatrixXd::Constant(r, r, inf);
  bool impossible = false;
  for (Index p = 0; p < s.points(); ++p) {
    const int i = c.label(p);
    const double own = s.base(p, i);
    if (std::isinf(own) && own > 0) continue;  // sits on its own centroid
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      const double other = s.base(p, j);
      if (std::isinf(other)) {
        impossible = true;  // sits on another centroid: no finite potentials help
        continue;
      }
      upper(i, j) = std::min(upper(i, j), own - other);
    }
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(r);
  bool settled = false;
  for (int round = 0; round <= r && !settled; ++round) {
    settled = true;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j && upper(i, j) != inf && y(j) > y(i) + upper(i, j) + 1e-12 * std::max(1.0, std::abs(y(i)))) {
          y(j) = y(i) + upper(i, j);
          settled = false;
        }
  }
  return {y, settled && !impossible};
}

/// Coordinate descent on the violation count when no separating potentials exist.
/// Each step moves one potential to the best of at most `samples` breakpoints.
Eigen::VectorXd reduce_violations(const Coloring& c, const RegionScores& s, Eigen::VectorXd y, int sweeps = 20,
                                  std::size_t samples = 256) {
  const int r = s.classes();
  auto best = s.count(y);
  for (int sweep = 0; sweep < sweeps && best > 0; ++sweep) {
    bool moved = false;
    for (int k = 0; k < r; ++k) {
      // values of y_k where some point of or against class k changes status
      std::vector<double> cands;
      for (Index p = 0; p < s.points(); ++p) {
        const int i = c.label(p);
        for (int j = 0; j < r; ++j) {
          if (j == i || (i != k && j != k)) continue;
          const double v = i == k ? s.base(p, j) + y(j) - s.base(p, k) : s.base(p, i) + y(i) - s.base(p, k);
          if (std::isfinite(v)) cands.push_back(v);
        }
      }
      std::sort(cands.begin(), cands.end());
      const std::size_t stride = std::max<std::size_t>(1, cands.size() / samples);
      for (std::size_t t = 0; t < cands.size(); t += stride) {
        auto trial = y;
        trial(k) = cands[t];
        const auto n = s.count(trial);
        if (n < best) {
          best = n;
          y = trial;
          moved = true;
        }
      }
    }
    if (!moved) break;
  }
  return y;
}

}  // namespace

std::int64_t weighted_scatter(const Coloring& c) {
  const Centroids cen(c);
  const auto& geo = c.geometry();
  std::vector<std::int64_t> per_class(static_cast<std::size_t>(c.class_count()), 0);
  for (Index p = 0; p < geo.size(); ++p) {
    per_class[static_cast<std::size_t>(c.label(p))] += cen.scaled_distance(geo, p, c.label(p));
  }
  std::int64_t scatter = 0;
  for (std::size_t i = 0; i < per_class.size(); ++i) {
    // Σ‖n v - s‖² = n · Σ_{pairs in A_i} ‖v - w‖², so the division is exact
    scatter += per_class[i] / cen.sizes[i];
  }
  return scatter;
}

VoronoiReport voronoi_check(const Coloring& c, WeightRule rule) {
  const auto& geo = c.geometry();
  const int r = c.class_count();
  for (int i = 0; i < r; ++i)
    if (c.partition().size(i) < 1) throw std::invalid_argument("empty class");
  const Centroids cen(c);

  VoronoiReport rep;
  rep.rule = rule;
  rep.offsets = Eigen::VectorXd::Zero(r);
  for (int i = 0; i < r; ++i) {
    std::vector<Rational> centroid;
    for (Index k = 0; k < cen.sums.rows(); ++k) centroid.emplace_back(cen.sums(k, i), cen.sizes[static_cast<std::size_t>(i)]);
    rep.centroids.push_back(std::move(centroid));
  }

  switch (rule) {
    case WeightRule::fitted:
    case WeightRule::capacity_offsets: {
      const bool offsets = rule == WeightRule::capacity_offsets;
      const RegionScores scores(c, cen, offsets);
      auto [y, ok] = fit_potentials(c, scores);
      if (!ok) {
        // start from the better of the partial fit and the closed-form rules
        if (!offsets) {
          for (const auto alt : {WeightRule::inverse_sqrt_size, WeightRule::sqrt_size, WeightRule::uniform}) {
            Eigen::VectorXd ya(r);
            for (int i = 0; i < r; ++i) {
              const auto [num, den] = squared_weight(alt, cen.sizes[static_cast<std::size_t>(i)]);
              ya(i) = 0.5 * std::log(static_cast<double>(num) / static_cast<double>(den));
            }
            if (scores.count(ya) < scores.count(y)) y = ya;
          }
        }
        y = reduce_violations(c, scores, y);
      }
      rep.weights_fitted = ok;
      rep.violations = scores.violations(y);
      if (offsets) {
        rep.offsets = -y;
        rep.weights = Eigen::VectorXd::Ones(r);
      } else {
        rep.weights = (y.array() - y.maxCoeff()).exp().matrix();
      }
      break;
    }
    default: {
      rep.weights.resize(r);
      for (int i = 0; i < r; ++i) {
        const auto [num, den] = squared_weight(rule, cen.sizes[static_cast<std::size_t>(i)]);
        rep.weights(i) = std::sqrt(static_cast<double>(num) / static_cast<double>(den));
      }
      rep.violations = count_violations_exact(c, cen, rule);
      break;
    }
  }

  rep.scatter = weighted_scatter(c);
  const GridPoint total = geo.points.rowwise().sum();
  rep.total_pairwise_energy = geo.size() * geo.norms.sum() - total.squaredNorm();
  rep.edge_energy = edge_energy_raw(c);
  rep.decomposition_holds = rep.edge_energy == rep.total_pairwise_energy - rep.scatter;
  return rep;
}

Coloring lloyd_refine(const Coloring& c, int rounds) {
  Coloring cur = c;
  const auto& geo = c.geometry();
  const int r = c.class_count();
  for (int round = 0; round < rounds; ++round) {
    const Centroids cen(cur);
    std::vector<std::vector<Index>> members;
    for (int i = 0; i < r; ++i) members.push_back(cur.members(i));
    bool any_swap = false;
    bool improved = true;
    while (improved) {
      improved = false;
      for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
          const auto ni = cen.sizes[static_cast<std::size_t>(i)];
          const auto nj = cen.sizes[static_cast<std::size_t>(j)];
          // n_i n_j times the cost change of moving a point between classes i and j
          auto gain_to_j = [&](Index p) {
            return Wide(ni) * cen.scaled_distance(geo, p, j) - Wide(nj) * cen.scaled_distance(geo, p, i);
          };
          std::size_t best_v = 0;
          std::size_t best_w = 0;
          Wide gv = 0;
          Wide hw = 0;
          auto& mi = members[static_cast<std::size_t>(i)];
          auto& mj = members[static_cast<std::size_t>(j)];
          for (std::size_t k = 0; k < mi.size(); ++k) {
            const auto g = gain_to_j(mi[k]);
            if (k == 0 || g < gv) {
              gv = g;
              best_v = k;
            }
          }
          for (std::size_t k = 0; k < mj.size(); ++k) {
            const auto h = -gain_to_j(mj[k]);
            if (k == 0 || h < hw) {
              hw = h;
              best_w = k;
            }
          }
          if (gv + hw < 0) {
            cur.swap_points(mi[best_v], mj[best_w]);
            std::swap(mi[best_v], mj[best_w]);
            improved = true;
            any_swap = true;
          }
        }
      }
    }
    if (!any_swap) break;
  }
  return cur;
}

}  // namespace griddraw
