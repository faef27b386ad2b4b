#include "griddraw/spectral.hpp"

#include <algorithm>
#include <vector>

namespace griddraw {

Spectrum multipartite_spectrum(const PartitionSpec& spec) {
  const int n = spec.total();
  std::vector<double> values;
  values.reserve(n);
  values.push_back(0.0);
  for (const int ni : spec.sizes()) values.insert(values.end(), ni - 1, static_cast<double>(n - ni));
  values.insert(values.end(), spec.class_count() - 1, static_cast<double>(n));
  std::sort(values.begin(), values.end());
  return {Eigen::Map<Eigen::VectorXd>(values.data(), n)};
}

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& m, const JacobiOptions& opts) {
  return {jacobi_eigenvalues(m, opts)};
}

Spectrum graph_spectrum(const Graph& g) { return symmetric_eigenvalues(laplacian<double>(g)); }

double drawing_lambda(const Graph& g, const Eigen::MatrixXd& positions) {
  if (positions.cols() != g.vertex_count()) throw std::invalid_argument("one position per vertex required");
  const double denom = positions.colwise().squaredNorm().sum();
  if (denom == 0.0) throw std::domain_error("all positions are zero");
  double num = 0.0;
  for (const auto& [u, v] : g.edges()) num += (positions.col(u) - positions.col(v)).squaredNorm();
  return num / denom;
}

bool embedding_bounds_check(const Graph& g, const Eigen::MatrixXd& positions, double eps) {
  if (positions.cols() != g.vertex_count()) throw std::invalid_argument("one position per vertex required");
  const double scale = std::max(1.0, positions.cwiseAbs().maxCoeff());
  if (positions.rowwise().sum().cwiseAbs().maxCoeff() > 1e-9 * scale * positions.cols()) {
    throw std::invalid_argument("drawing must have zero mean");
  }
  const double lambda = drawing_lambda(g, positions);
  const auto spec = graph_spectrum(g);
  return spec.algebraic_connectivity() - eps <= lambda && lambda <= spec.largest() + eps;
}

}  // namespace griddraw
