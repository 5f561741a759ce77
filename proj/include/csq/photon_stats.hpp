#pragma once

#include <cmath>
#include <vector>

#include "csq/complex_cs.hpp"
#include "csq/errors.hpp"
#include "csq/numerics.hpp"

namespace csq {

/// Tabulated generalized Poisson distribution
///   P_s(n; lambda) = (s!/N_s(lambda)) lambda^n/(s+n)! (L_s^(n)(lambda))^2
/// together with its first two moments and the Mandel parameter
/// Q = variance/mean - 1.
struct DistributionTable {
  unsigned s = 0;
  double lambda = 0.0;
  std::vector<double> p;  // p[n] = P_s(n; lambda), n = 0..n_max
  double tail_mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double mandel_q = 0.0;

  /// Indices of relative maxima (n = 0 counts when p[0] > p[1]).
  std::vector<int> relative_maxima() const {
    std::vector<int> out;
    for (size_t n = 0; n + 1 < p.size(); ++n)
      if ((n == 0 || p[n] > p[n - 1]) && p[n] > p[n + 1]) out.push_back(static_cast<int>(n));
    return out;
  }
};

/// Tabulate P_s(.; lambda). n_max is enlarged (doubling, capped at 1e5)
/// until the tail mass is below 1e-12; the tail of the second moment is
/// driven below the same level so that mandel_q is reliable.
inline DistributionTable distribution(unsigned s, double lambda, int n_max = 0) {
  if (lambda < 0) throw std::invalid_argument("distribution: lambda must be nonnegative");
  const double N = normalization(s, lambda);

  DistributionTable t;
  t.s = s;
  t.lambda = lambda;

  int cap = std::max(n_max, 32);
  constexpr int kMax = 100000;
  for (;; cap *= 2) {
    if (cap > kMax) cap = kMax;
    t.p.assign(cap + 1, 0.0);
    double a = 1.0;  // s! lambda^n / (s+n)!
    double sum = 0.0, m1 = 0.0, m2 = 0.0;
    for (int n = 0; n <= cap; ++n) {
      if (n > 0) a *= lambda / (s + n);
      const double L = laguerre_value(s, n, lambda);
      const double pn = a * L * L / N;
      t.p[n] = pn;
      sum += pn;
      m1 += n * pn;
      m2 += static_cast<double>(n) * n * pn;
    }
    t.tail_mass = std::max(0.0, 1.0 - sum);
    // weighted tail criterion keeps the second moment accurate as well
    const double wtail = t.tail_mass * (static_cast<double>(cap) * cap + 1.0);
    if ((t.tail_mass < 1e-12 && wtail < 1e-9) || cap == kMax) {
      t.mean = m1;
      t.variance = m2 - m1 * m1;
      t.mandel_q = (m1 > 0.0) ? t.variance / m1 - 1.0 : 0.0;
      if (cap == kMax && t.tail_mass >= 1e-12)
        throw numeric_error("distribution: tail mass does not reach 1e-12 within cap");
      return t;
    }
  }
}

/// Closed form of the Mandel parameter for s = 1,
///   Q = -(e^l l^2 + 2 e^l + 4 e^l l - 2 e^{2l} - l) / ((e^l - l)(1 + e^l)).
/// For large lambda the expression is evaluated with e^{2 lambda} factored
/// out of numerator and denominator, which stays finite past the overflow
/// point of e^lambda and exposes the limit value 2.
inline double mandel_q_closed_s1(double lambda) {
  if (lambda < 0) throw std::invalid_argument("mandel_q_closed_s1: lambda must be nonnegative");
  if (lambda <= 300.0) {
    const double e = std::exp(lambda);
    return -(e * lambda * lambda + 2.0 * e + 4.0 * e * lambda - 2.0 * e * e - lambda) /
           ((e - lambda) * (1.0 + e));
  }
  const double em = std::exp(-lambda);
  const double num = lambda * lambda * em + 2.0 * em + 4.0 * lambda * em - 2.0 - lambda * em * em;
  const double den = (1.0 - lambda * em) * (1.0 + em);
  return -num / den;
}

/// Mandel parameter from the tabulated moments; Q is undefined at lambda = 0
/// (zero mean).
inline double mandel_q_series(unsigned s, double lambda) {
  if (lambda < 0) throw std::invalid_argument("mandel_q_series: lambda must be nonnegative");
  if (lambda == 0.0) throw numeric_error("mandel_q_series: Q undefined at lambda = 0 (mean is 0)");
  const DistributionTable t = distribution(s, lambda);
  return t.variance / t.mean - 1.0;
}

/// Sub/super-Poissonian transition: root of lambda -> Q_s(lambda) on the
/// bracket. Requires a genuine sign change; endpoint values at rounding
/// level (s = 0 has Q identically 0) do not qualify.
inline double transition_point(unsigned s, double lo, double hi, double tol = 1e-10) {
  const double qlo = mandel_q_series(s, lo);
  const double qhi = mandel_q_series(s, hi);
  if (std::abs(qlo) < 1e-12 || std::abs(qhi) < 1e-12 || (qlo < 0) == (qhi < 0))
    throw numeric_error("transition_point: no sign change of Q on the bracket");
  return find_root([s](double l) { return mandel_q_series(s, l); }, lo, hi, tol);
}

}  // namespace csq
