#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace griddraw {

/// Undirected edge between 0-based vertex ids, stored with first < second.
using Edge = std::pair<int, int>;

/// Simple undirected graph. Vertices are 0-based internally; every text format
/// and JSON document uses 1-based ids.
class Graph {
 public:
  Graph() = default;
  /// Throws on self-loops, duplicate edges or out-of-range endpoints.
  Graph(int vertex_count, std::vector<Edge> edges, std::string label = {});

  [[nodiscard]] int vertex_count() const { return vertex_count_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  [[nodiscard]] int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  [[nodiscard]] bool has_edge(int u, int v) const;
  [[nodiscard]] const std::string& label() const { return label_; }

  /// Copy with an extra edge. Throws if the edge already exists.
  [[nodiscard]] Graph with_edge(Edge e) const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;                 // sorted
  std::vector<std::vector<int>> adjacency_;  // sorted
  std::string label_;
};

/// Class sizes n_1 <= ... <= n_r of a complete multipartite graph.
class PartitionSpec {
 public:
  PartitionSpec() = default;
  /// Requires r >= 2, positive and non-decreasing sizes.
  explicit PartitionSpec(std::vector<int> class_sizes);

  [[nodiscard]] const std::vector<int>& sizes() const { return sizes_; }
  [[nodiscard]] int class_count() const { return static_cast<int>(sizes_.size()); }
  [[nodiscard]] int size(int i) const { return sizes_[i]; }
  [[nodiscard]] int total() const { return total_; }
  [[nodiscard]] int largest() const { return sizes_.back(); }
  [[nodiscard]] bool all_equal() const { return sizes_.front() == sizes_.back(); }
  /// N! / Π n_i!, saturating at UINT64_MAX.
  [[nodiscard]] std::uint64_t multinomial() const;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  std::vector<int> sizes_;
  int total_ = 0;
};

Graph complete_multipartite(const PartitionSpec& spec);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph empty_graph(int n);
/// Hamming graph on the binary strings of length log2(n). Throws unless n = 2^k, k >= 1.
Graph hypercube(int n);

/// Vertex (i, j) gets id i·|H| + j (0-based), i.e. (i-1)·|H| + j in 1-based terms.
Graph cartesian_product(const Graph& g, const Graph& h);

/// Same vertex set, union of the edge sets. Throws when the vertex counts differ.
Graph graph_union(const Graph& g, const Graph& h);

/// Triangle 1,2,3 with the path 3-4-5 attached.
Graph prop9_graph();

/// 8 vertices, vertex 5 adjacent to 2,3,4,6,7, plus the edges 1-2 and 7-8.
/// A reconstruction, not independently verified: 12345678 and 12354678 are both
/// optimal orderings for the minimum 2-sum, while the optimal orderings for the
/// integer connectivity (no vertex at 0) are a disjoint set.
Graph prop10_candidate_graph();

template <class Scalar = int>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> laplacian(const Graph& g) {
  const auto n = g.vertex_count();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> l =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    l(u, v) = Scalar(-1);
    l(v, u) = Scalar(-1);
    l(u, u) += Scalar(1);
    l(v, v) += Scalar(1);
  }
  return l;
}

/// Edge-list text: vertex count on the first line, then one "u v" pair per line (1-based).
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// Parses a generator spec: path:N, cycle:N, empty:N, hypercube:N,
/// multipartite:a,b,..., prop9, prop10, or A*B for a Cartesian product.
/// Anything else is treated as an edge-list file path.
Graph graph_from_spec(const std::string& spec);

/// Stable 64-bit FNV-1a hash of the vertex count and sorted edge list.
std::uint64_t graph_hash(const Graph& g);

}  // namespace griddraw
