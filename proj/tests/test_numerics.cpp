#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "csq/numerics.hpp"
#include "csq/photon_stats.hpp"
#include "csq/poly_core.hpp"
#include "oracles.hpp"

using namespace csq;

TEST_CASE("Gauss-Hermite closed forms", "[numerics]") {
  const QuadratureRule r1 = gauss_rule(WeightFamily::Hermite, 1);
  REQUIRE(r1.nodes[0] == 0.0);
  REQUIRE(std::abs(r1.weights[0] - std::sqrt(M_PI)) < 1e-15);

  const QuadratureRule r2 = gauss_rule(WeightFamily::Hermite, 2);
  REQUIRE(std::abs(r2.nodes[0] + 1.0 / std::sqrt(2.0)) < 1e-14);
  REQUIRE(std::abs(r2.nodes[1] - 1.0 / std::sqrt(2.0)) < 1e-14);
  REQUIRE(r2.nodes[0] == -r2.nodes[1]);  // symmetrized exactly
}

TEST_CASE("Gauss-Laguerre closed forms", "[numerics]") {
  // roots of L_2 = (x^2 - 4x + 2)/2 are 2 +- sqrt(2)
  const QuadratureRule r = gauss_rule(WeightFamily::Laguerre, 2, 0);
  REQUIRE(std::abs(r.nodes[0] - (2.0 - std::sqrt(2.0))) < 1e-13);
  REQUIRE(std::abs(r.nodes[1] - (2.0 + std::sqrt(2.0))) < 1e-13);
}

TEST_CASE("Rule self-tests pass across kinds and sizes", "[numerics]") {
  for (int m : {1, 5, 20, 40, 64}) REQUIRE_NOTHROW(gauss_rule(WeightFamily::Hermite, m));
  for (int alpha : {0, 3, 10, 41})
    for (int m : {1, 4, 16}) REQUIRE_NOTHROW(gauss_rule(WeightFamily::Laguerre, m, alpha));

  // total weight equals the mass of the weight function
  const QuadratureRule h = gauss_rule(WeightFamily::Hermite, 13);
  double tw = 0.0;
  for (double w : h.weights) tw += w;
  REQUIRE(std::abs(tw - std::sqrt(M_PI)) < 1e-13);

  const QuadratureRule l = gauss_rule(WeightFamily::Laguerre, 9, 4);
  tw = 0.0;
  for (double w : l.weights) tw += w;
  REQUIRE(std::abs(tw - 24.0) < 1e-12 * 24.0);
}

TEST_CASE("symmetric_spectrum basics", "[numerics]") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  REQUIRE(symmetric_spectrum(id).eigenvalues == std::vector<double>{1.0, 1.0, 1.0});

  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  const SpectrumResult s = symmetric_spectrum(a);
  REQUIRE(std::abs(s.eigenvalues[0] + 1.0 / std::sqrt(2.0)) < 1e-14);
  REQUIRE(std::abs(s.eigenvalues[1] - 1.0 / std::sqrt(2.0)) < 1e-14);
  REQUIRE(s.residual < 1e-14);

  // Hermitian input
  Eigen::MatrixXcd c(2, 2);
  c << std::complex<double>(2, 0), std::complex<double>(0, 1), std::complex<double>(0, -1),
      std::complex<double>(2, 0);
  const SpectrumResult sc = symmetric_spectrum(c);
  REQUIRE(std::abs(sc.eigenvalues[0] - 1.0) < 1e-14);
  REQUIRE(std::abs(sc.eigenvalues[1] - 3.0) < 1e-14);

  // eigenvector orthonormality
  const Eigen::MatrixXcd g = sc.eigenvectors.adjoint() * sc.eigenvectors;
  REQUIRE((g - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  REQUIRE_THROWS_AS(symmetric_spectrum(bad), std::invalid_argument);
}

TEST_CASE("Jacobi spectrum equals Hermite roots from exact bisection", "[numerics]") {
  const int N = 6;  // tridiagonal with off-diagonal sqrt(k/2), k = 1..N
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 1; k <= N; ++k) j(k, k - 1) = j(k - 1, k) = std::sqrt(0.5 * k);
  const SpectrumResult s = symmetric_spectrum(j);
  const std::vector<double> roots = oracle::hermite_roots(N + 1);
  REQUIRE(roots.size() == static_cast<size_t>(N + 1));
  for (int i = 0; i <= N; ++i) REQUIRE(std::abs(s.eigenvalues[i] - roots[i]) < 1e-12);
}

TEST_CASE("Consistency loop: rule nodes equal Jacobi eigenvalues from the Sturm solver",
          "[numerics]") {
  const int m = 12;
  const QuadratureRule rule = gauss_rule(WeightFamily::Hermite, m);
  SymTridiagonal t;
  t.diag.assign(m, 0.0);
  t.off.resize(m - 1);
  for (int k = 1; k < m; ++k) t.off[k - 1] = std::sqrt(0.5 * k);
  const std::vector<double> ev = tridiag_smallest_eigenvalues(t, m, 1e-13);
  for (int i = 0; i < m; ++i) REQUIRE(std::abs(rule.nodes[i] - ev[i]) < 1e-12);

  const QuadratureRule lrule = gauss_rule(WeightFamily::Laguerre, 10, 2);
  SymTridiagonal lt;
  lt.diag.resize(10);
  lt.off.resize(9);
  for (int k = 0; k < 10; ++k) lt.diag[k] = 2.0 * k + 3.0;
  for (int k = 1; k < 10; ++k) lt.off[k - 1] = std::sqrt(static_cast<double>(k) * (k + 2));
  const std::vector<double> lev = tridiag_smallest_eigenvalues(lt, 10, 1e-13);
  for (int i = 0; i < 10; ++i)
    REQUIRE(std::abs(lrule.nodes[i] - lev[i]) < 1e-11 * std::max(1.0, lev[i]));
}

TEST_CASE("find_root bisection", "[numerics]") {
  REQUIRE(std::abs(find_root([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-12) - 1.0) < 1e-12);

  // positive root of H_3 = 8x^3 - 12x is sqrt(3/2)
  const UnivariatePoly h3 = hermite(3);
  const double root = find_root([&](double x) { return h3.eval(x); }, 0.5, 2.0, 1e-12);
  REQUIRE(std::abs(root - std::sqrt(1.5)) < 1e-11);

  // Mandel-parameter sign change near 1.81
  const double l0 = find_root(mandel_q_closed_s1, 1.0, 3.0, 1e-10);
  REQUIRE(std::abs(l0 - 1.81) < 0.005);

  REQUIRE_THROWS_AS(find_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0, 1e-12),
                    numeric_error);
}

TEST_CASE("Series accumulator sums the exponential", "[numerics]") {
  for (double lambda : {0.5, 1.0, 5.0, 10.0, 20.0, 30.0}) {
    double term = 1.0;
    const double got = sum_series([&](int n) {
      if (n > 0) term *= lambda / n;
      return term;
    });
    REQUIRE(std::abs(got - std::exp(lambda)) < 1e-13 * std::exp(lambda));
  }

  SeriesOptions strict;
  strict.max_terms = 5;
  double t = 1.0;
  REQUIRE_THROWS_AS(sum_series(
                        [&](int n) {
                          if (n > 0) t *= 30.0 / n;
                          return t;
                        },
                        strict),
                    numeric_error);
}

TEST_CASE("Sturm bisection agrees with the dense solver", "[numerics]") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 30;
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) dense(i, i) = t.diag[i] = dist(rng);
  for (int i = 0; i + 1 < n; ++i) dense(i, i + 1) = dense(i + 1, i) = t.off[i] = dist(rng);

  const std::vector<double> sturm = tridiag_smallest_eigenvalues(t, n, 1e-13);
  const SpectrumResult ref = symmetric_spectrum(dense, false);
  for (int i = 0; i < n; ++i) REQUIRE(std::abs(sturm[i] - ref.eigenvalues[i]) < 1e-10);
}

TEST_CASE("Grid Hamiltonian reproduces oscillator levels at O(h^2)", "[numerics]") {
  const double L = 8.0, h = 0.02;
  const int m = static_cast<int>(std::lround(2 * L / h));
  std::vector<double> pot(m - 1);
  for (int i = 1; i < m; ++i) {
    const double x = -L + i * h;
    pot[i - 1] = 0.5 * x * x;
  }
  const SymTridiagonal t = grid_hamiltonian(pot, h);
  const std::vector<double> ev = tridiag_smallest_eigenvalues(t, 6);
  for (int n = 0; n < 6; ++n) REQUIRE(std::abs(ev[n] - (n + 0.5)) < 2e-3);

  // inverse-iteration eigenvector has a small residual
  const std::vector<double> v = tridiag_eigenvector(t, ev[0]);
  double worst = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    double av = t.diag[i] * v[i];
    if (i > 0) av += t.off[i - 1] * v[i - 1];
    if (i + 1 < v.size()) av += t.off[i] * v[i + 1];
    worst = std::max(worst, std::abs(av - ev[0] * v[i]));
  }
  REQUIRE(worst < 1e-9 * (std::abs(ev[0]) + 1.0 / (h * h)));
}

TEST_CASE("Scalar Laguerre and 1F1 evaluators match the exact polynomials", "[numerics]") {
  for (unsigned s = 0; s <= 5; ++s)
    for (unsigned alpha : {0u, 2u, 7u})
      for (double x : {0.0, 0.3, 1.7, 9.0}) {
        const double exact = laguerre(s, alpha).eval(x);
        REQUIRE(std::abs(laguerre_value(s, alpha, x) - exact) <
                1e-13 * std::max(1.0, std::abs(exact)));
      }

  for (unsigned s = 0; s <= 4; ++s)
    for (double b : {1.0, 2.5, 6.0})
      for (double x : {0.2, 1.9}) {
        const double exact = hyp1f1_poly(s, BigRat(b * 2) / 2).eval(x);
        REQUIRE(std::abs(hyp1f1_terminating(s, b, x) - exact) < 1e-13);
      }
}
