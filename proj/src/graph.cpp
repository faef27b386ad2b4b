#include "griddraw/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace griddraw {

Graph::Graph(int vertex_count, std::vector<Edge> edges, std::string label)
    : vertex_count_(vertex_count), label_(std::move(label)) {
  if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (auto& e : edges) {
    if (e.first == e.second) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.first + 1));
    if (e.first < 0 || e.second < 0 || e.first >= vertex_count || e.second >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("duplicate edge");
  }
  edges_ = std::move(edges);
  adjacency_.assign(vertex_count_, {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adjacency_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

Graph Graph::with_edge(Edge e) const {
  if (has_edge(e.first, e.second)) throw std::invalid_argument("edge already present");
  auto edges = edges_;
  edges.push_back(e);
  return Graph(vertex_count_, std::move(edges), label_.empty() ? label_ : label_ + "+e");
}

PartitionSpec::PartitionSpec(std::vector<int> class_sizes) : sizes_(std::move(class_sizes)) {
  if (sizes_.size() < 2) throw std::invalid_argument("a multipartite graph needs at least two classes");
  if (std::any_of(sizes_.begin(), sizes_.end(), [](int n) { return n < 1; })) {
    throw std::invalid_argument("class sizes must be positive");
  }
  if (!std::is_sorted(sizes_.begin(), sizes_.end())) {
    throw std::invalid_argument("class sizes must be non-decreasing");
  }
  total_ = std::accumulate(sizes_.begin(), sizes_.end(), 0);
}

std::uint64_t PartitionSpec::multinomial() const {
  // product of binomials C(n_1 + ... + n_k, n_k)
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  int placed = 0;
  for (const int n : sizes_) {
    unsigned __int128 binom = 1;
    for (int i = 1; i <= n; ++i) {
      binom = binom * static_cast<unsigned>(placed + i) / static_cast<unsigned>(i);
      if (binom > cap) return cap;
    }
    acc *= binom;
    if (acc > cap) return cap;
    placed += n;
  }
  return static_cast<std::uint64_t>(acc);
}

Graph complete_multipartite(const PartitionSpec& spec) {
  std::vector<int> cls;
  for (int i = 0; i < spec.class_count(); ++i) cls.insert(cls.end(), spec.size(i), i);
  std::vector<Edge> edges;
  const int n = spec.total();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (cls[u] != cls[v]) edges.emplace_back(u, v);
  std::string label = "K_{";
  for (int i = 0; i < spec.class_count(); ++i) label += (i ? "," : "") + std::to_string(spec.size(i));
  return Graph(n, std::move(edges), label + "}");
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges), "P" + std::to_string(n));
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges), "C" + std::to_string(n));
}

Graph empty_graph(int n) { return Graph(n, {}, "E" + std::to_string(n)); }

Graph hypercube(int n) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("hypercube order must be a power of two >= 2");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int bit = 1; bit < n; bit <<= 1)
      if ((u & bit) == 0) edges.emplace_back(u, u | bit);
  return Graph(n, std::move(edges), "Q" + std::to_string(n));
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const int nh = h.vertex_count();
  std::vector<Edge> edges;
  edges.reserve(g.vertex_count() * h.edge_count() + nh * g.edge_count());
  for (int i = 0; i < g.vertex_count(); ++i)
    for (const auto& [a, b] : h.edges()) edges.emplace_back(i * nh + a, i * nh + b);
  for (int j = 0; j < nh; ++j)
    for (const auto& [a, b] : g.edges()) edges.emplace_back(a * nh + j, b * nh + j);
  return Graph(g.vertex_count() * nh, std::move(edges), g.label() + "x" + h.label());
}

Graph graph_union(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) throw std::invalid_argument("union needs equal vertex sets");
  auto edges = g.edges();
  for (const auto& e : h.edges())
    if (!g.has_edge(e.first, e.second)) edges.push_back(e);
  return Graph(g.vertex_count(), std::move(edges));
}

Graph prop9_graph() { return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}}, "prop9"); }

Graph prop10_candidate_graph() {
  return Graph(8, {{4, 1}, {4, 2}, {4, 3}, {4, 5}, {4, 6}, {0, 1}, {6, 7}}, "prop10-candidate");
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (int count = 0; ls >> count) n = count;
      continue;
    }
    int u = 0;
    int v = 0;
    if (!(ls >> u)) continue;
    if (!(ls >> v)) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(u - 1, v - 1);
  }
  if (n < 1) throw std::invalid_argument("edge list is missing the vertex count");
  return Graph(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

namespace {

int parse_count(const std::string& s) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return n;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad number in graph spec: " + s);
  }
}

}  // namespace

Graph graph_from_spec(const std::string& spec) {
  if (const auto star = spec.find('*'); star != std::string::npos) {
    return cartesian_product(graph_from_spec(spec.substr(0, star)), graph_from_spec(spec.substr(star + 1)));
  }
  if (spec == "prop9") return prop9_graph();
  if (spec == "prop10") return prop10_candidate_graph();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const auto kind = spec.substr(0, colon);
    const auto arg = spec.substr(colon + 1);
    if (kind == "path") return path_graph(parse_count(arg));
    if (kind == "cycle") return cycle_graph(parse_count(arg));
    if (kind == "empty") return empty_graph(parse_count(arg));
    if (kind == "hypercube") return hypercube(parse_count(arg));
    if (kind == "multipartite") {
      std::vector<int> sizes;
      std::istringstream ss(arg);
      for (std::string tok; std::getline(ss, tok, ',');) sizes.push_back(parse_count(tok));
      std::sort(sizes.begin(), sizes.end());
      return complete_multipartite(PartitionSpec(sizes));
    }
  }
  std::ifstream file(spec);
  if (!file) throw std::invalid_argument("unknown graph spec or unreadable file: " + spec);
  auto g = read_edge_list(file);
  return Graph(g.vertex_count(), g.edges(), spec);
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(g.vertex_count()));
  for (const auto& [u, v] : g.edges()) {
    mix(static_cast<std::uint64_t>(u));
    mix(static_cast<std::uint64_t>(v));
  }
  return h;
}

}  // namespace griddraw
