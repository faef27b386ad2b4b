#include "griddraw/spectral.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace griddraw;

namespace {

std::vector<double> values(const Spectrum& s) { return {s.eigenvalues.begin(), s.eigenvalues.end()}; }

void check_close(const Spectrum& s, const std::vector<double>& want, double tol = 1e-8) {
  REQUIRE(s.size() == static_cast<Index>(want.size()));
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(s.eigenvalues(static_cast<Index>(i)) - want[i]) <= tol);
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("closed-form multipartite spectra") {
    CHECK(values(multipartite_spectrum(PartitionSpec({2, 2}))) == std::vector<double>{0, 2, 2, 4});
    CHECK(values(multipartite_spectrum(PartitionSpec({1, 2, 2}))) == std::vector<double>{0, 3, 3, 5, 5});
    CHECK(values(multipartite_spectrum(PartitionSpec({1, 2}))) == std::vector<double>{0, 1, 3});
  }

  TEST_CASE("closed form matches Laplacian power traces exactly") {
    for (const std::vector<int> sizes : {std::vector<int>{1, 2}, {2, 2}, {1, 2, 2}, {1, 1, 3}, {2, 3, 4}, {1, 1, 1, 1}}) {
      const PartitionSpec p(sizes);
      const auto g = complete_multipartite(p);
      const auto s = multipartite_spectrum(p);
      const auto want = oracle::laplacian_power_traces(g.vertex_count(), g.edges());
      for (int k = 1; k <= g.vertex_count(); ++k) {
        std::int64_t got = 0;
        for (Index i = 0; i < s.size(); ++i) {
          std::int64_t term = 1;
          for (int e = 0; e < k; ++e) term *= std::llround(s.eigenvalues(i));
          got += term;
        }
        CHECK(got == want[static_cast<std::size_t>(k - 1)]);
      }
    }
  }

  TEST_CASE("Jacobi examples") {
    check_close(symmetric_eigenvalues(laplacian<double>(path_graph(2))), {0, 2});
    check_close(symmetric_eigenvalues(laplacian<double>(cycle_graph(3))), {0, 3, 3});
    check_close(symmetric_eigenvalues(laplacian<double>(complete_multipartite(PartitionSpec({2, 2})))), {0, 2, 2, 4});
  }

  TEST_CASE("Jacobi agrees with the closed form on 200 random partitions") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
      const auto p = test::random_spec(2, 12, rng);
      check_close(graph_spectrum(complete_multipartite(p)), values(multipartite_spectrum(p)));
    }
  }

  TEST_CASE("spectrum invariants on random graphs") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
      const auto g = test::random_graph(2 + static_cast<int>(rng() % 9), 0.4, rng);
      const auto s = graph_spectrum(g);
      CHECK(std::abs(s.eigenvalues(0)) <= 1e-9);
      CHECK(std::abs(s.eigenvalues.sum() - 2.0 * g.edge_count()) <= 1e-8);
      CHECK(s.eigenvalues.minCoeff() >= -1e-9);
      const auto traces = oracle::laplacian_power_traces(g.vertex_count(), g.edges());
      CHECK(std::abs(s.eigenvalues.squaredNorm() - static_cast<double>(traces[1])) <= 1e-7);
    }
  }

  TEST_CASE("Jacobi errors") {
    Eigen::MatrixXd ns(2, 2);
    ns << 1, 2, 3, 4;
    CHECK_THROWS_AS(symmetric_eigenvalues(ns), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_eigenvalues(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    Eigen::MatrixXd dense = laplacian<double>(hypercube(8));
    JacobiOptions no_sweeps;
    no_sweeps.max_sweeps = 0;
    CHECK_THROWS_AS(symmetric_eigenvalues(dense, no_sweeps), std::runtime_error);
  }

  TEST_CASE("drawing lambda and the embedding bounds") {
    const auto g = complete_multipartite(PartitionSpec({1, 2}));
    Eigen::MatrixXd center(1, 3);
    center << 0, -1, 1;
    CHECK(drawing_lambda(g, center) == doctest::Approx(1.0));
    CHECK(embedding_bounds_check(g, center));
    Eigen::MatrixXd end(1, 3);
    end << 1, -1, 0;
    CHECK(drawing_lambda(g, end) == doctest::Approx(2.5));
    CHECK(embedding_bounds_check(g, end));

    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 3);
    CHECK_THROWS_AS(drawing_lambda(g, zero), std::domain_error);
    CHECK_THROWS_AS(embedding_bounds_check(g, zero), std::domain_error);
    Eigen::MatrixXd shifted(1, 3);
    shifted << 1, 2, 3;
    CHECK_THROWS_AS(embedding_bounds_check(g, shifted), std::invalid_argument);
  }

  TEST_CASE("Fiedler vector attains lambda2") {
    for (const auto& g : {prop9_graph(), cycle_graph(6), path_graph(5), hypercube(8)}) {
      const Eigen::MatrixXd l = laplacian<double>(g);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
      const Eigen::MatrixXd v = es.eigenvectors().col(1).transpose();
      CHECK(std::abs(drawing_lambda(g, v) - graph_spectrum(g).algebraic_connectivity()) <= 1e-9);
      CHECK(embedding_bounds_check(g, v));
    }
  }

  TEST_CASE("random integer drawings satisfy the embedding bounds") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> coord(-5, 5);
    for (int t = 0; t < 100; ++t) {
      const int n = 2 + static_cast<int>(rng() % 9);
      const auto g = test::random_graph(n, 0.5, rng);
      for (int k = 0; k < 100; ++k) {
        const int d = 1 + static_cast<int>(rng() % 2);
        Eigen::MatrixXd pos(d, n);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < n; ++j) pos(i, j) = coord(rng);
        // center exactly: scale by n so the mean is an integer
        pos = pos * n;
        const Eigen::VectorXd mean = pos.rowwise().sum() / n;
        pos.colwise() -= mean;
        if (pos.isZero()) continue;
        CHECK(embedding_bounds_check(g, pos));
      }
    }
  }
}
