#pragma once

#include "griddraw/graph.hpp"
#include "griddraw/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace griddraw {

/// Sorted points of {-⌊N/2⌋..⌊N/2⌋}, without 0 when N is even.
std::vector<std::int64_t> line_points(int n);

/// A bijection from the vertices of a graph onto line_points(N).
struct LineDrawing {
  Graph graph;
  /// positions[v] for the 0-based vertex v.
  std::vector<std::int64_t> positions;

  /// Throws std::invalid_argument unless `positions` is a bijection onto line_points(N).
  void validate() const;
  friend bool operator==(const LineDrawing& a, const LineDrawing& b) {
    return a.graph.vertex_count() == b.graph.vertex_count() && a.graph.edges() == b.graph.edges() &&
           a.positions == b.positions;
  }
};

/// Σ_{uv∈E} (pos u - pos v)² / Σ pos², exact. Throws std::domain_error for N = 1.
Rational lambda_of_line_drawing(const LineDrawing& d);

struct IntConnectivity {
  Rational value;
  std::int64_t energy = 0;
  std::int64_t second_moment = 0;
  /// Optimal drawing with vertex 1 at a non-negative position; the earliest one in search order.
  LineDrawing witness;
};

/// λ₂ᴵ(G) by branch and bound over the bijections onto line_points(N). Vertices are
/// placed in descending-degree order, mirror images are skipped, and a branch is cut
/// once its placed-edge energy plus one per unplaced edge exceeds the incumbent.
/// Throws InstanceTooLarge when N!/2 exceeds `limit`, std::invalid_argument for N < 2.
IntConnectivity lambda2_int(const Graph& g, std::uint64_t limit = 100'000'000, unsigned threads = 0);

struct MinPSum {
  /// σ_p(G) = min over Ψ of (Σ|Ψ(u)-Ψ(v)|^p)^{1/p}, or the bandwidth for p = ∞.
  double value = 0.0;
  /// Exact σ₂² when p = 2.
  std::optional<std::int64_t> sigma2_squared;
  /// Exact bandwidth when p = ∞.
  std::optional<std::int64_t> bandwidth;
  /// Ψ(v) ∈ {1..N} for the 0-based vertex v.
  std::vector<std::int64_t> mapping;
};

/// Exact minimum p-sum over the bijections onto {1..N}. p must be positive;
/// pass std::numeric_limits<double>::infinity() for the bandwidth.
MinPSum min_p_sum(const Graph& g, double p, std::uint64_t limit = 100'000'000, unsigned threads = 0);

struct SuperadditivityReport {
  Rational lambda_g;
  Rational lambda_h;
  Rational lambda_union;
  /// λ₂ᴵ(G) + λ₂ᴵ(H) <= λ₂ᴵ(G ∪ H)
  bool holds = false;
};

/// Throws std::invalid_argument unless the graphs share the vertex set and no edge.
SuperadditivityReport edge_disjoint_superadditivity_check(const Graph& g, const Graph& h,
                                                          std::uint64_t limit = 100'000'000);

struct EdgeAdditionReport {
  Rational before;
  Rational after;
  Rational lower;
  Rational upper;
  bool holds = false;
};

/// 1/(2Σi²) and N²/(2Σi²) for i up to ⌊N/2⌋, the admissible range of λ₂ᴵ(G+e) - λ₂ᴵ(G).
std::pair<Rational, Rational> edge_addition_increments(int n);

/// Throws std::invalid_argument when the edge is already present or out of range.
EdgeAdditionReport edge_addition_bounds_check(const Graph& g, Edge e, std::uint64_t limit = 100'000'000);

enum class ProductLayout {
  /// |H| consecutive blocks, each a copy of G: pos(i, j) = |G|·h(j) + g(i).
  g_blocks,
  /// |G| consecutive blocks, each a copy of H: pos(i, j) = |H|·g(i) + h(j).
  h_blocks,
};

struct CartesianDrawing {
  LineDrawing drawing;
  Rational lambda;
  /// λ(g)·(|G|²-1)/(|G|²|H|²-1) + λ(h)·|G|²(|H|²-1)/(|G|²|H|²-1) for g_blocks, roles swapped for h_blocks.
  Rational bound;
};

/// Block drawing of G × H (vertex (i, j) has id i·|H| + j) from drawings of the
/// factors. Both orders must be odd.
CartesianDrawing cartesian_drawing(const LineDrawing& g_opt, const LineDrawing& h_opt,
                                   ProductLayout layout = ProductLayout::g_blocks);

/// Bound value from the two factor λ values and orders.
Rational product_bound(const Rational& lambda_g, int order_g, const Rational& lambda_h, int order_h);

/// Drawing of Q_{2^k}, 1 <= k <= 4: two copies of Q_{2^{k-1}}, one on each side of
/// the origin, joined by the matching along the top bit. λ = 2.
LineDrawing hypercube_drawing(int k);

/// The explicit 25-vertex drawing of prop9_graph() × prop9_graph() onto {-12..12}.
LineDrawing prop9_product_drawing();

}  // namespace griddraw
