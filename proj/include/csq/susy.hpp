#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "csq/complex_cs.hpp"
#include "csq/errors.hpp"
#include "csq/numerics.hpp"

namespace csq {

/// Confluent hypergeometric 1F1(a; b; w) for a, b > 0, w >= 0 by direct
/// series; every term is positive, so the sum carries no cancellation.
inline double hyp1f1_series(double a, double b, double w) {
  if (!(a > 0) || !(b > 0) || w < 0)
    throw std::invalid_argument("hyp1f1_series: requires a, b > 0 and w >= 0");
  double acc = 1.0, term = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * w / ((b + k) * (k + 1.0));
    acc += term;
    if (term < 1e-17 * acc && k > w) return acc;
  }
  throw numeric_error("hyp1f1_series: no convergence");
}

namespace detail {

// u_eps and its log-derivative from the confluent series, evaluated
// analytically (the e^{-x^2/2} prefactor cancels in u'/u bookkeeping).
struct SeedEvaluator {
  double a1, a2, c;  // c = 2 mu Gamma(3/4 - eps/2) / Gamma(1/4 - eps/2)

  SeedEvaluator(double epsilon, double mu)
      : a1(0.25 - 0.5 * epsilon),
        a2(0.75 - 0.5 * epsilon),
        c(2.0 * mu * std::tgamma(0.75 - 0.5 * epsilon) / std::tgamma(0.25 - 0.5 * epsilon)) {}

  double u(double x) const {
    const double w = x * x;
    double g = hyp1f1_series(a1, 0.5, w);
    if (c != 0.0) g += c * x * hyp1f1_series(a2, 1.5, w);
    return std::exp(-0.5 * w) * g;
  }

  // u'/u = g'/g - x with g' from d/dw 1F1(a;b;w) = (a/b) 1F1(a+1;b+1;w)
  double logderiv(double x) const {
    const double w = x * x;
    double g = hyp1f1_series(a1, 0.5, w);
    double gp = 2.0 * x * (a1 / 0.5) * hyp1f1_series(a1 + 1.0, 1.5, w);
    if (c != 0.0) {
      g += c * x * hyp1f1_series(a2, 1.5, w);
      gp += c * hyp1f1_series(a2, 1.5, w) +
            2.0 * c * x * x * (a2 / 1.5) * hyp1f1_series(a2 + 1.0, 2.5, w);
    }
    return gp / g - x;
  }
};

}  // namespace detail

/// Nodeless solution u_eps of H u = eps u on a uniform grid [-L, L]:
///   u_eps(x) = e^{-x^2/2} [ 1F1(1/4 - eps/2; 1/2; x^2)
///              + 2 mu x Gamma(3/4-eps/2)/Gamma(1/4-eps/2)
///                       1F1(3/4 - eps/2; 3/2; x^2) ].
/// Requires eps < 1/2 and |mu| < 1 (which also keeps the Gamma arguments
/// away from the poles); positivity is verified on the grid as a backstop.
struct SeedSolution {
  double epsilon = 0.0;
  double mu = 0.0;
  double L = 12.0;
  double h = 0.01;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> logderiv;
  double ode_residual = 0.0;  // scaled second-difference residual, O(h^2)
};

inline SeedSolution seed_solution(double epsilon, double mu, double L = 12.0, double h = 0.01) {
  if (!(epsilon < 0.5)) throw std::invalid_argument("seed_solution: epsilon must be < 1/2");
  if (!(std::abs(mu) < 1.0)) throw std::invalid_argument("seed_solution: |mu| must be < 1");
  if (!(L > 0) || !(h > 0) || L > 14.0)
    throw std::invalid_argument("seed_solution: need 0 < h, 0 < L <= 14");

  const detail::SeedEvaluator ev(epsilon, mu);
  SeedSolution s;
  s.epsilon = epsilon;
  s.mu = mu;
  s.L = L;
  s.h = h;
  const int m = static_cast<int>(std::lround(2.0 * L / h));
  s.x.resize(m + 1);
  s.u.resize(m + 1);
  s.logderiv.resize(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double xi = -L + i * h;
    s.x[i] = xi;
    s.u[i] = ev.u(xi);
    s.logderiv[i] = ev.logderiv(xi);
    if (!(s.u[i] > 0.0))
      throw numeric_error("seed_solution: node detected at x = " + std::to_string(xi));
  }

  // -u''/2 + x^2 u/2 - eps u, second differences, scaled by the local terms
  double worst = 0.0;
  for (int i = 1; i < m; ++i) {
    const double upp = (s.u[i + 1] - 2.0 * s.u[i] + s.u[i - 1]) / (h * h);
    const double pot = (0.5 * s.x[i] * s.x[i] - epsilon) * s.u[i];
    const double res = -0.5 * upp + pot;
    worst = std::max(worst, std::abs(res) / (0.5 * std::abs(upp) + std::abs(pot) + 1e-300));
  }
  s.ode_residual = worst;
  return s;
}

/// u_eps at a single point (used for tail integrals beyond the grid).
inline double seed_value(double epsilon, double mu, double x) {
  return detail::SeedEvaluator(epsilon, mu).u(x);
}

/// A_eps psi = (-psi' + (u'/u) psi)/sqrt(2) by central differences;
/// endpoints are dropped (result aligned with seed.x[1..m-1]).
inline std::vector<double> apply_a(const SeedSolution& s, const std::vector<double>& psi) {
  const size_t m = psi.size();
  std::vector<double> out(m, 0.0);
  for (size_t i = 1; i + 1 < m; ++i) {
    const double dpsi = (psi[i + 1] - psi[i - 1]) / (2.0 * s.h);
    out[i] = (-dpsi + s.logderiv[i] * psi[i]) / std::sqrt(2.0);
  }
  return out;
}

/// A_eps^+ phi = (phi' + (u'/u) phi)/sqrt(2) by central differences.
inline std::vector<double> apply_a_dagger(const SeedSolution& s, const std::vector<double>& phi) {
  const size_t m = phi.size();
  std::vector<double> out(m, 0.0);
  for (size_t i = 1; i + 1 < m; ++i) {
    const double dphi = (phi[i + 1] - phi[i - 1]) / (2.0 * s.h);
    out[i] = (dphi + s.logderiv[i] * phi[i]) / std::sqrt(2.0);
  }
  return out;
}

/// Max scaled deviation of A_eps^+ A_eps psi from (H - eps) psi over a
/// battery of smooth test functions, all applied by finite differences.
/// Expected O(h^2).
inline double factorization_residual(const SeedSolution& s) {
  const size_t m = s.x.size();
  std::vector<std::vector<double>> battery;
  battery.push_back(s.u);
  for (int kind = 0; kind < 3; ++kind) {
    std::vector<double> psi(m);
    for (size_t i = 0; i < m; ++i) {
      const double x = s.x[i];
      const double g = std::exp(-0.5 * x * x);
      psi[i] = kind == 0 ? g : (kind == 1 ? x * g : (2.0 * x * x - 1.0) * g);
    }
    battery.push_back(std::move(psi));
  }

  double worst = 0.0;
  for (const auto& psi : battery) {
    const std::vector<double> apsi = apply_a(s, psi);
    const std::vector<double> lhs = apply_a_dagger(s, apsi);
    // scale by the size of the individual terms, not their sum: for psi = u
    // the two sides of (H - eps)psi cancel to zero while the terms are huge
    double scale = 0.0;
    std::vector<double> rhs(m, 0.0);
    for (size_t i = 1; i + 1 < m; ++i) {
      const double upp = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (s.h * s.h);
      const double pot = (0.5 * s.x[i] * s.x[i] - s.epsilon) * psi[i];
      rhs[i] = -0.5 * upp + pot;
      scale = std::max(scale, 0.5 * std::abs(upp) + std::abs(pot));
    }
    for (size_t i = 2; i + 2 < m; ++i)
      worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / scale);
  }
  return worst;
}

/// Discretized supersymmetric partner H_eps = -(1/2) d^2/dx^2 + x^2/2
/// - (ln u_eps)'' with spectrum {eps, 1/2, 3/2, ...}.
struct PartnerHamiltonian {
  std::vector<double> potential;  // V_eps at the interior grid points
  SymTridiagonal matrix;
  std::vector<double> levels;    // lowest k+1 eigenvalues
  std::vector<double> expected;  // {eps, 1/2, ..., k - 1/2}
  std::vector<double> ground;    // interior values of the lowest eigenvector
};

inline PartnerHamiltonian partner_spectrum(const SeedSolution& s, int k) {
  if (k < 0) throw std::invalid_argument("partner_spectrum: k must be nonnegative");
  const size_t m = s.x.size();
  PartnerHamiltonian p;
  p.potential.resize(m - 2);
  for (size_t i = 1; i + 1 < m; ++i) {
    const double lnupp =
        (std::log(s.u[i + 1]) - 2.0 * std::log(s.u[i]) + std::log(s.u[i - 1])) / (s.h * s.h);
    p.potential[i - 1] = 0.5 * s.x[i] * s.x[i] - lnupp;
  }
  p.matrix = grid_hamiltonian(p.potential, s.h);
  p.levels = tridiag_smallest_eigenvalues(p.matrix, k + 1);
  p.expected.resize(k + 1);
  p.expected[0] = s.epsilon;
  for (int n = 0; n < k; ++n) p.expected[n + 1] = n + 0.5;

  p.ground = tridiag_eigenvector(p.matrix, p.levels[0]);
  const std::vector<double> top = tridiag_eigenvector(p.matrix, p.levels[k]);
  for (const auto& v : {p.ground, top}) {
    double vmax = 0.0;
    for (double c : v) vmax = std::max(vmax, std::abs(c));
    if (std::abs(v.front()) > 1e-8 * vmax || std::abs(v.back()) > 1e-8 * vmax)
      throw numeric_error("partner_spectrum: eigenfunction does not decay at the boundary; "
                          "enlarge L");
  }
  return p;
}

/// Spectral identification of the ansatz Hamiltonian with the partner at
/// eps = -(s+1)/2, and of the CS Hamiltonian with the oscillator:
///   H_ansatz - (s+1) = H_eps,   H_cs - 2s - 1/2 = H.
struct SusyReport {
  unsigned s = 0;
  double epsilon = 0.0;
  std::vector<double> shifted_ansatz;   // eigenvalues of H_ansatz - (s+1)
  std::vector<double> partner_levels;   // grid-diagonalized H_eps
  double max_dev_partner = 0.0;
  std::vector<double> shifted_cs;       // eigenvalues of H_cs - 2s - 1/2
  std::vector<double> oscillator_levels;  // grid-diagonalized H
  double max_dev_oscillator = 0.0;
};

inline SusyReport identify_with_H_ansatz(unsigned s, double L = 12.0, double h = 0.01,
                                         int levels = 8) {
  SusyReport rep;
  rep.s = s;
  rep.epsilon = -0.5 * (s + 1.0);

  const SectorConfig cfg{s, 40, 1e-14};
  auto [hcs, hansatz] = hamiltonians(cfg);
  // interior index block: |D-1> decouples and carries the truncation artifact
  const Eigen::MatrixXcd ha_int = hansatz.matrix.topLeftCorner(cfg.D - 1, cfg.D - 1);
  const Eigen::MatrixXcd hc_int = hcs.matrix.topLeftCorner(cfg.D - 1, cfg.D - 1);
  const SpectrumResult sa = symmetric_spectrum(ha_int, false);
  const SpectrumResult sc = symmetric_spectrum(hc_int, false);

  const SeedSolution seed = seed_solution(rep.epsilon, 0.0, L, h);
  const PartnerHamiltonian partner = partner_spectrum(seed, levels - 1);
  rep.partner_levels = partner.levels;

  std::vector<double> osc_pot(seed.x.size() - 2);
  for (size_t i = 1; i + 1 < seed.x.size(); ++i)
    osc_pot[i - 1] = 0.5 * seed.x[i] * seed.x[i];
  rep.oscillator_levels = tridiag_smallest_eigenvalues(grid_hamiltonian(osc_pot, h), levels);

  for (int n = 0; n < levels; ++n) {
    rep.shifted_ansatz.push_back(sa.eigenvalues[n] - (s + 1.0));
    rep.shifted_cs.push_back(sc.eigenvalues[n] - 2.0 * s - 0.5);
    rep.max_dev_partner =
        std::max(rep.max_dev_partner, std::abs(rep.shifted_ansatz[n] - rep.partner_levels[n]));
    rep.max_dev_oscillator =
        std::max(rep.max_dev_oscillator, std::abs(rep.shifted_cs[n] - rep.oscillator_levels[n]));
  }
  return rep;
}

/// Trapezoid estimate of int_{|x|>L} u_eps^{-2} dx, the mass the
/// normalizability claim for 1/u_eps leaves outside the grid.
inline double inv_u_squared_tail(double epsilon, double mu, double L, double extent = 4.0,
                                 int n = 400) {
  const detail::SeedEvaluator ev(epsilon, mu);
  const double dh = extent / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    const double up = ev.u(L + i * dh);
    const double um = ev.u(-L - i * dh);
    acc += w * dh * (1.0 / (up * up) + 1.0 / (um * um));
  }
  return acc;
}

}  // namespace csq
