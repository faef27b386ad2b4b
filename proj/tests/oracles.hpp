#pragma once

// Brute-force references for the unit tests. Nothing here calls into the
// library's search or closed-form code; points, classes and graphs are plain
// std containers so a bug in the library types cannot leak into the oracle.

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Q = boost::rational<std::int64_t>;
using Pt = std::vector<std::int64_t>;
using Classes = std::vector<std::vector<Pt>>;
using EdgeList = std::vector<std::pair<int, int>>;

/// {-M..M}^d by nested counting, lexicographic.
inline std::vector<Pt> grid(int d, int m, bool drop_origin = false) {
  std::vector<Pt> out;
  const int side = 2 * m + 1;
  std::int64_t total = 1;
  for (int k = 0; k < d; ++k) total *= side;
  for (std::int64_t code = 0; code < total; ++code) {
    Pt p(static_cast<std::size_t>(d));
    auto c = code;
    for (int k = d - 1; k >= 0; --k) {
      p[static_cast<std::size_t>(k)] = c % side - m;
      c /= side;
    }
    if (drop_origin && std::all_of(p.begin(), p.end(), [](auto x) { return x == 0; })) continue;
    out.push_back(p);
  }
  return out;
}

inline std::int64_t sq(const Pt& p) {
  std::int64_t s = 0;
  for (auto x : p) s += x * x;
  return s;
}

inline std::int64_t dist2(const Pt& a, const Pt& b) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

inline std::int64_t second_moment(const std::vector<Pt>& pts) {
  std::int64_t s = 0;
  for (const auto& p : pts) s += sq(p);
  return s;
}

/// Sum over pairs in different classes of the squared distance.
inline std::int64_t cross_energy(const Classes& cls) {
  std::int64_t e = 0;
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i + 1; j < cls.size(); ++j)
      for (const auto& a : cls[i])
        for (const auto& b : cls[j]) e += dist2(a, b);
  return e;
}

inline Q lambda(const Classes& cls) {
  std::int64_t s = 0;
  for (const auto& c : cls) s += second_moment(c);
  return {cross_energy(cls), s};
}

/// Every assignment of labels 0..r-1 to the points with the given class sizes,
/// generated by recursion over points (independent of next_permutation).
inline void for_each_labelling(int n, const std::vector<int>& sizes,
                               const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> left = sizes;
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      fn(labels);
      return;
    }
    for (std::size_t c = 0; c < left.size(); ++c) {
      if (left[c] == 0) continue;
      --left[c];
      labels[static_cast<std::size_t>(p)] = static_cast<int>(c);
      rec(p + 1);
      ++left[c];
    }
  };
  rec(0);
}

inline Classes split(const std::vector<Pt>& pts, const std::vector<int>& labels, int r) {
  Classes cls(static_cast<std::size_t>(r));
  for (std::size_t p = 0; p < pts.size(); ++p) cls[static_cast<std::size_t>(labels[p])].push_back(pts[p]);
  return cls;
}

struct Extremes {
  Q min = Q(std::numeric_limits<std::int64_t>::max());
  Q max = Q(-1);
  std::uint64_t count = 0;
  std::uint64_t argmin_count = 0;
};

inline Extremes coloring_extremes(int d, int m, const std::vector<int>& sizes) {
  const auto pts = grid(d, m);
  Extremes ex;
  for_each_labelling(static_cast<int>(pts.size()), sizes, [&](const std::vector<int>& labels) {
    const auto l = lambda(split(pts, labels, static_cast<int>(sizes.size())));
    ++ex.count;
    if (l < ex.min) {
      ex.min = l;
      ex.argmin_count = 0;
    }
    if (l == ex.min) ++ex.argmin_count;
    ex.max = std::max(ex.max, l);
  });
  return ex;
}

inline std::int64_t line_energy(const EdgeList& edges, const std::vector<std::int64_t>& pos) {
  std::int64_t e = 0;
  for (const auto& [u, v] : edges) {
    const auto t = pos[static_cast<std::size_t>(u)] - pos[static_cast<std::size_t>(v)];
    e += t * t;
  }
  return e;
}

/// {-⌊n/2⌋..⌊n/2⌋}, origin dropped for even n.
inline std::vector<std::int64_t> line_points(int n) {
  std::vector<std::int64_t> pts;
  for (std::int64_t x = -(n / 2); x <= n / 2; ++x)
    if (x != 0 || n % 2 == 1) pts.push_back(x);
  return pts;
}

/// Minimum of a cost over all n! bijections vertex -> pts, no pruning.
struct ArrangementMin {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<std::int64_t>> argmins;  // positions by vertex
};

inline ArrangementMin arrangement_min(const std::vector<std::int64_t>& pts,
                                      const std::function<std::int64_t(const std::vector<std::int64_t>&)>& cost) {
  std::vector<std::int64_t> pos = pts;
  std::sort(pos.begin(), pos.end());
  ArrangementMin out;
  do {
    const auto c = cost(pos);
    if (c < out.best) {
      out.best = c;
      out.argmins.clear();
    }
    if (c == out.best) out.argmins.push_back(pos);
  } while (std::next_permutation(pos.begin(), pos.end()));
  return out;
}

inline Q lambda2_int(int n, const EdgeList& edges) {
  const auto pts = line_points(n);
  const auto res = arrangement_min(pts, [&](const auto& pos) { return line_energy(edges, pos); });
  std::int64_t s = 0;
  for (auto x : pts) s += x * x;
  return {res.best, s};
}

inline std::int64_t min_two_sum(int n, const EdgeList& edges) {
  std::vector<std::int64_t> pts(static_cast<std::size_t>(n));
  std::iota(pts.begin(), pts.end(), 1);
  return arrangement_min(pts, [&](const auto& pos) { return line_energy(edges, pos); }).best;
}

inline std::int64_t bandwidth(int n, const EdgeList& edges) {
  std::vector<std::int64_t> pts(static_cast<std::size_t>(n));
  std::iota(pts.begin(), pts.end(), 1);
  return arrangement_min(pts, [&](const auto& pos) {
           std::int64_t w = 0;
           for (const auto& [u, v] : edges) {
             const auto t = pos[static_cast<std::size_t>(u)] - pos[static_cast<std::size_t>(v)];
             w = std::max(w, t < 0 ? -t : t);
           }
           return w;
         }).best;
}

/// tr(L^k) for k = 1..n from the edge list, in integers. Equal power sums for
/// k = 1..n pin down the eigenvalue multiset (Newton identities).
inline std::vector<std::int64_t> laplacian_power_traces(int n, const EdgeList& edges) {
  using Mat = std::vector<std::vector<std::int64_t>>;
  const auto un = static_cast<std::size_t>(n);
  Mat l(un, std::vector<std::int64_t>(un, 0));
  for (const auto& [u, v] : edges) {
    const auto a = static_cast<std::size_t>(u);
    const auto b = static_cast<std::size_t>(v);
    l[a][b] = l[b][a] = -1;
    ++l[a][a];
    ++l[b][b];
  }
  std::vector<std::int64_t> traces;
  Mat power = l;
  for (int k = 1; k <= n; ++k) {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < un; ++i) t += power[i][i];
    traces.push_back(t);
    Mat next(un, std::vector<std::int64_t>(un, 0));
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t m = 0; m < un; ++m)
        for (std::size_t j = 0; j < un; ++j) next[i][j] += power[i][m] * l[m][j];
    power = std::move(next);
  }
  return traces;
}

}  // namespace oracle
