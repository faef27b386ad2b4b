#pragma once

// Random instance generators shared by the unit tests.

#include "griddraw/coloring.hpp"
#include "griddraw/graph.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace test {

/// Random composition of n into r >= 2 positive parts (r uniform), sorted.
inline griddraw::PartitionSpec composition(int n, std::mt19937_64& rng, int max_classes = 0) {
  const int cap = max_classes > 0 ? std::min(max_classes, n) : n;
  std::uniform_int_distribution<int> classes(2, cap);
  const int r = classes(rng);
  std::vector<int> cuts(static_cast<std::size_t>(n - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(r - 1));
  cuts.push_back(0);
  cuts.push_back(n);
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> sizes;
  for (std::size_t i = 1; i < cuts.size(); ++i) sizes.push_back(cuts[i] - cuts[i - 1]);
  std::sort(sizes.begin(), sizes.end());
  return griddraw::PartitionSpec(sizes);
}

inline griddraw::PartitionSpec random_spec(int lo, int hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> total(lo, hi);
  return composition(total(rng), rng);
}

inline griddraw::Coloring random_coloring(const griddraw::GridSpec& grid, const griddraw::PartitionSpec& spec,
                                          std::mt19937_64& rng) {
  std::vector<int> labels;
  for (int c = 0; c < spec.class_count(); ++c) labels.insert(labels.end(), static_cast<std::size_t>(spec.size(c)), c);
  std::shuffle(labels.begin(), labels.end(), rng);
  return griddraw::Coloring(grid, spec, labels);
}

/// Uniformly random coloring of the grid with random class sizes.
inline griddraw::Coloring random_coloring(const griddraw::GridSpec& grid, std::mt19937_64& rng, int max_classes = 0) {
  const auto n = static_cast<int>(grid.point_count());
  const auto spec = composition(n, rng, max_classes);
  return random_coloring(grid, spec, rng);
}

inline griddraw::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<griddraw::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return griddraw::Graph(n, edges);
}
/// Plain-container copy of a coloring's classes for the oracles.
inline oracle::Classes to_oracle(const griddraw::Coloring& c) {
  oracle::Classes out;
  for (const auto& cls : c.classes()) {
    std::vector<oracle::Pt> pts;
    for (griddraw::Index i = 0; i < cls.cols(); ++i) pts.emplace_back(cls.col(i).data(), cls.col(i).data() + cls.rows());
    out.push_back(pts);
  }
  return out;
}

}  // namespace test
