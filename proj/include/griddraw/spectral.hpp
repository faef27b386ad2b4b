#pragma once

#include "griddraw/graph.hpp"
#include "griddraw/grid.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace griddraw {

/// Laplacian eigenvalues in non-decreasing order, multiplicities by repetition.
struct Spectrum {
  Eigen::VectorXd eigenvalues;

  [[nodiscard]] Index size() const { return eigenvalues.size(); }
  [[nodiscard]] double algebraic_connectivity() const { return eigenvalues.size() > 1 ? eigenvalues(1) : 0.0; }
  [[nodiscard]] double largest() const { return eigenvalues(eigenvalues.size() - 1); }
};

struct JacobiOptions {
  double symmetry_tolerance = 1e-12;
  double off_diagonal_tolerance = 1e-10;
  int max_sweeps = 100;
};

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations, sorted ascending.
///
/// Sweeps stop once the Frobenius norm of the off-diagonal part drops below
/// `off_diagonal_tolerance`. Throws std::invalid_argument for non-square or
/// non-symmetric input and std::runtime_error after `max_sweeps` sweeps.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> jacobi_eigenvalues(
    const Eigen::MatrixBase<Derived>& m, const JacobiOptions& opts = {}) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = m;
  const Index n = a.rows();
  if (((a - a.transpose()).cwiseAbs().maxCoeff()) > Scalar(opts.symmetry_tolerance) && n > 0) {
    throw std::invalid_argument("matrix is not symmetric");
  }

  auto off_norm = [&a, n] {
    Scalar s(0);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return sqrt(s);
  };

  int sweep = 0;
  while (off_norm() >= Scalar(opts.off_diagonal_tolerance)) {
    if (sweep++ >= opts.max_sweeps) throw std::runtime_error("Jacobi iteration did not converge");
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (a(p, q) == Scalar(0)) continue;
        // rotation zeroing a(p,q)
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * a(p, q));
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) / (abs(theta) + sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = a.diagonal();
  std::sort(d.data(), d.data() + d.size());
  return d;
}

/// Closed-form Laplacian spectrum of K_{n_1..n_r}:
/// 0 once, N - n_i with multiplicity n_i - 1, and N with multiplicity r - 1.
Spectrum multipartite_spectrum(const PartitionSpec& spec);

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& m, const JacobiOptions& opts = {});

/// Laplacian spectrum of an arbitrary graph via the Jacobi solver.
Spectrum graph_spectrum(const Graph& g);

/// λ(v) = Σ_{ij∈E} ‖v_i - v_j‖² / Σ_i ‖v_i‖² for a drawing with one column per vertex.
/// Throws std::domain_error when every position is zero.
double drawing_lambda(const Graph& g, const Eigen::MatrixXd& positions);

/// Whether λ₂(G) - eps <= λ(v) <= λ_N(G) + eps for a zero-mean drawing (columns = vertices).
/// Throws std::invalid_argument for a non-zero mean and std::domain_error for an all-zero drawing.
bool embedding_bounds_check(const Graph& g, const Eigen::MatrixXd& positions, double eps = 1e-9);

}  // namespace griddraw
