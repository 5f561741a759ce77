// Test-side oracles, kept independent of the implementation paths they
// check: full polar-coordinate quadrature over the complex plane (angular
// trapezoid x radial Gauss-Laguerre, no selection-rule shortcut), root
// isolation by bisection on exact polynomials, and brute-force series sums.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "csq/numerics.hpp"
#include "csq/poly_core.hpp"

namespace oracle {

/// (1/pi) int_C e^{-|z|^2} G(z) d^2z for G polynomial in (z, zbar): uniform
/// trapezoid in the angle (exact for trigonometric degree < n_angular) and
/// Gauss-Laguerre in t = |z|^2.
inline std::complex<double> polar_gaussian_integral(
    const std::function<std::complex<double>(std::complex<double>)>& g, int max_total_degree) {
  const int n_ang = 2 * max_total_degree + 8;
  const csq::QuadratureRule radial =
      csq::gauss_rule(csq::WeightFamily::Laguerre, max_total_degree / 2 + 2);
  std::complex<double> acc = 0.0;
  for (int j = 0; j < n_ang; ++j) {
    const double theta = 2.0 * M_PI * j / n_ang;
    const std::complex<double> dir = std::polar(1.0, theta);
    for (size_t i = 0; i < radial.nodes.size(); ++i)
      acc += radial.weights[i] * g(std::sqrt(radial.nodes[i]) * dir);
  }
  return acc / static_cast<double>(n_ang);
}

/// (1/pi) int e^{-|z|^2} h^{s+n,s} conj(h^{s+n',s}) d^2z  (Eq. of the
/// complex Hermite orthogonality), evaluated with no radial reduction.
inline std::complex<double> hermite_pair_integral(unsigned s, unsigned n, unsigned nprime) {
  const csq::BivariatePoly a = csq::complex_hermite(s + n, s);
  const csq::BivariatePoly b = csq::complex_hermite(s + nprime, s);
  const int deg = a.total_degree() + b.total_degree();
  return polar_gaussian_integral(
      [&](std::complex<double> z) { return a.eval(z) * std::conj(b.eval(z)); }, deg);
}

/// Operator matrix element (1/pi) int f conj(phi_{m;s}) phi_{n;s} d^2z by
/// the same 2-D route; f is a monomial z^a zbar^b.
inline std::complex<double> quantize_element(unsigned s, int m, int n, unsigned a, unsigned b) {
  const csq::BivariatePoly hm = csq::complex_hermite(s + m, s);
  const csq::BivariatePoly hn = csq::complex_hermite(s + n, s);
  const double lognorm =
      std::lgamma(s + 1.0) + 0.5 * std::lgamma(s + m + 1.0) + 0.5 * std::lgamma(s + n + 1.0);
  const int deg = hm.total_degree() + hn.total_degree() + static_cast<int>(a + b);
  const std::complex<double> raw = polar_gaussian_integral(
      [&](std::complex<double> z) {
        std::complex<double> f = 1.0;
        for (unsigned k = 0; k < a; ++k) f *= z;
        for (unsigned k = 0; k < b; ++k) f *= std::conj(z);
        return f * std::conj(hm.eval(z)) * hn.eval(z);
      },
      deg);
  return raw * std::exp(-lognorm);
}

/// All real roots of an exact polynomial, isolated by sign scan + bisection.
inline std::vector<double> poly_roots_bisection(const csq::UnivariatePoly& p, double lo, double hi,
                                                int scan_points) {
  std::vector<double> roots;
  auto push_unique = [&](double r) {
    if (roots.empty() || std::abs(r - roots.back()) > 1e-9 * std::max(1.0, std::abs(r)))
      roots.push_back(r);
  };
  double xa = lo, fa = p.eval(lo);
  for (int i = 1; i <= scan_points; ++i) {
    const double xb = lo + (hi - lo) * i / scan_points;
    const double fb = p.eval(xb);
    if (fa == 0.0) push_unique(xa);
    if (fa != 0.0 && fb != 0.0 && (fa < 0) != (fb < 0)) {
      double a = xa, b = xb, va = fa;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double vm = p.eval(m);
        if ((vm < 0) == (va < 0)) {
          a = m;
          va = vm;
        } else {
          b = m;
        }
      }
      push_unique(0.5 * (a + b));
    }
    xa = xb;
    fa = fb;
  }
  if (fa == 0.0) push_unique(xa);
  return roots;
}

/// Roots of the physicists' Hermite polynomial H_n.
inline std::vector<double> hermite_roots(unsigned n) {
  const double bound = std::sqrt(2.0 * n + 2.0);
  return poly_roots_bisection(csq::hermite(n), -bound, bound, static_cast<int>(60 * n + 60));
}

/// Brute-force partial sum of the normalization series with long-double
/// Kahan accumulation; independent of the tolerance-driven engine.
inline double normalization_brute_force(unsigned s, double lambda, int terms = 5000) {
  long double sum = 0.0L, comp = 0.0L;
  long double a = 1.0L;  // s! lambda^n / (s+n)!
  for (int n = 0; n < terms; ++n) {
    if (n > 0) a *= static_cast<long double>(lambda) / (s + n);
    const long double L = csq::laguerre_value(s, n, lambda);
    const long double term = a * L * L;
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

inline double double_factorial_odd(int k) {  // (2k-1)!!
  double v = 1.0;
  for (int j = 1; j <= k; ++j) v *= 2 * j - 1;
  return v;
}

}  // namespace oracle
