#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "csq/errors.hpp"
#include "csq/exact.hpp"
#include "csq/numerics.hpp"
#include "csq/poly_core.hpp"

namespace csq {

/// H_0(x) .. H_N(x) by the three-term recurrence.
inline std::vector<double> hermite_values(int N, double x) {
  std::vector<double> h(N + 1);
  h[0] = 1.0;
  if (N >= 1) h[1] = 2.0 * x;
  for (int n = 1; n < N; ++n) h[n + 1] = 2.0 * x * h[n] - 2.0 * n * h[n - 1];
  return h;
}

/// Christoffel-Darboux normalization N_N(x), sum form
/// sum_{n<=N} H_n(x)^2/(n! 2^n).
inline double cd_normalization_sum(int N, double x) {
  const std::vector<double> h = hermite_values(N, x);
  double f = 1.0, acc = 0.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) f /= 2.0 * n;
    acc += f * h[n] * h[n];
  }
  return acc;
}

/// N_N(x) through the closed form [H_{N+1}^2 - H_N H_{N+2}] / (N! 2^{N+1}),
/// cross-checked against the sum form to relative 1e-10.
inline double cd_normalization(int N, double x) {
  const std::vector<double> h = hermite_values(N + 2, x);
  double nfac = 1.0;
  for (int n = 2; n <= N; ++n) nfac *= n;
  const double closed = (h[N + 1] * h[N + 1] - h[N] * h[N + 2]) / (nfac * std::pow(2.0, N + 1));
  const double sum = cd_normalization_sum(N, x);
  if (std::abs(closed - sum) > 1e-10 * std::max(std::abs(sum), 1.0))
    throw consistency_error("cd_normalization: sum and closed forms disagree");
  return closed;
}

/// Frame state |x> in E_N: coeffs[n] = H_n(x)/sqrt(n! 2^n N_N(x)).
struct FrameState {
  double x = 0.0;
  Eigen::VectorXd coeffs;
};

inline FrameState frame_state(int N, double x) {
  const std::vector<double> h = hermite_values(N, x);
  const double nn = cd_normalization(N, x);
  FrameState st;
  st.x = x;
  st.coeffs.resize(N + 1);
  double f = 1.0;  // 1/(n! 2^n)
  for (int n = 0; n <= N; ++n) {
    if (n > 0) f /= 2.0 * n;
    st.coeffs[n] = h[n] * std::sqrt(f / nn);
  }
  return st;
}

/// Overlap <x|y>: Christoffel-Darboux ratio for x != y, the sum form at the
/// x = y limit (where it is 1 by normalization).
inline double overlap(int N, double x, double y) {
  if (x == y) return 1.0;
  const std::vector<double> hx = hermite_values(N + 1, x);
  const std::vector<double> hy = hermite_values(N + 1, y);
  double nfac = 1.0;
  for (int n = 2; n <= N; ++n) nfac *= n;
  const double kernel =
      (hx[N + 1] * hy[N] - hx[N] * hy[N + 1]) / (nfac * std::pow(2.0, N + 1) * (x - y));
  return kernel / std::sqrt(cd_normalization(N, x) * cd_normalization(N, y));
}

/// Max deviation from the identity of the frame resolution matrix
/// (1/sqrt(pi)) int e^{-x^2} H_m H_n / sqrt(m! n! 2^{m+n}) dx. Exact when the
/// rule integrates degree 2N; an insufficient rule reports its deviation.
inline double resolution_check(int N, const QuadratureRule* rule = nullptr) {
  QuadratureRule own;
  if (!rule) {
    own = gauss_rule(WeightFamily::Hermite, N + 1);
    rule = &own;
  }
  std::vector<double> nf(N + 1);  // 1/sqrt(n! 2^n)
  double f = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) f /= 2.0 * n;
    nf[n] = std::sqrt(f);
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (size_t i = 0; i < rule->nodes.size(); ++i) {
    const std::vector<double> h = hermite_values(N, rule->nodes[i]);
    for (int m = 0; m <= N; ++m)
      for (int n = 0; n <= N; ++n)
        M(m, n) += rule->weights[i] * h[m] * h[n] * nf[m] * nf[n];
  }
  M /= std::sqrt(M_PI);
  return (M - Eigen::MatrixXd::Identity(N + 1, N + 1)).cwiseAbs().maxCoeff();
}

/// (N+1) x (N+1) quantized operator on the real-line frame.
struct RealOperator {
  enum class Source { quadrature, hermite_coeffs };
  Eigen::MatrixXd matrix;
  int N = 0;
  std::string label;
  Source source = Source::quadrature;
};

/// A_f by quadrature: element (k, l) is
/// (1/sqrt(pi)) int e^{-x^2} f(x) H_k H_l / sqrt(k! l! 2^{k+l}) dx.
inline RealOperator quantize_fn(int N, const std::function<double(double)>& f,
                                const QuadratureRule& rule, const std::string& label = "A_f") {
  std::vector<double> nf(N + 1);
  double fc = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fc /= 2.0 * n;
    nf[n] = std::sqrt(fc);
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double w = rule.weights[i] * f(rule.nodes[i]);
    const std::vector<double> h = hermite_values(N, rule.nodes[i]);
    for (int k = 0; k <= N; ++k)
      for (int l = 0; l <= N; ++l) M(k, l) += w * h[k] * h[l] * nf[k] * nf[l];
  }
  M /= std::sqrt(M_PI);
  return RealOperator{std::move(M), N, label, RealOperator::Source::quadrature};
}

/// Quadrature route for a polynomial observable with an automatically sized
/// (hence exact) rule.
inline RealOperator quantize_fn_poly(int N, const UnivariatePoly& f,
                                     const std::string& label = "A_f") {
  const int deg = std::max(f.degree(), 0);
  const int m = (2 * N + deg) / 2 + 1;
  const QuadratureRule rule = gauss_rule(WeightFamily::Hermite, m);
  return quantize_fn(
      N, [&f](double x) { return f.eval(x); }, rule, label);
}

/// A_f from the Hermite coefficients a_n of f = sum a_n H_n:
///   A_f^{k,l} = sum_r a_{k+l-2r} 2^{(k+l-2r)/2} (k+l-2r)! sqrt(k!l!)
///               / ((k-r)!(l-r)!r!).
/// Coefficients beyond index 2N cannot contribute. Each coefficient is
/// assembled under a single square root so the entries are correctly
/// rounded, e.g. the position matrix comes out bit-equal to sqrt(k/2).
inline RealOperator quantize_hermite_series(int N, const std::vector<double>& a,
                                            const std::string& label = "A_f") {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int k = 0; k <= N; ++k) {
    for (int l = 0; l <= N; ++l) {
      double acc = 0.0;
      for (int r = 0; r <= std::min(k, l); ++r) {
        const int m = k + l - 2 * r;
        if (m >= static_cast<int>(a.size()) || a[m] == 0.0) continue;
        // 2^m (m!)^2 k! l! / ((k-r)! (l-r)! r!)^2 under one square root
        BigInt num = factorial_int(m);
        num *= num;
        num *= factorial_int(k) * factorial_int(l);
        num <<= m;
        BigInt den = factorial_int(k - r) * factorial_int(l - r) * factorial_int(r);
        den *= den;
        acc += a[m] * std::sqrt(to_double(BigRat(num, den)));
      }
      M(k, l) = acc;
    }
  }
  return RealOperator{std::move(M), N, label, RealOperator::Source::hermite_coeffs};
}

/// Exact Hermite expansion of x^r: a[m] holds the coefficient of H_m,
///   x^r = (r!/2^r) sum_k H_{r-2k} / (k! (r-2k)!).
inline std::vector<BigRat> monomial_to_hermite(unsigned r) {
  std::vector<BigRat> a(r + 1, BigRat(0));
  const BigRat pref(factorial_int(r), BigInt(1) << r);
  for (unsigned k = 0; 2 * k <= r; ++k)
    a[r - 2 * k] = pref / BigRat(factorial_int(k) * factorial_int(r - 2 * k));
  return a;
}

/// Position operator via the Hermite-coefficient route (x = H_1/2).
inline RealOperator position_operator(int N) {
  const std::vector<BigRat> a = monomial_to_hermite(1);
  std::vector<double> ad(a.size());
  for (size_t i = 0; i < a.size(); ++i) ad[i] = to_double(a[i]);
  return quantize_hermite_series(N, ad, "A_x");
}

/// Spectrum of A_x; the eigenvalues are the N+1 roots of H_{N+1}.
inline SpectrumResult position_spectrum(int N) {
  return symmetric_spectrum(Eigen::MatrixXcd(
      position_operator(N).matrix.cast<std::complex<double>>()));
}

/// Lower symbol f_check(t) = <t|A_f|t>. The written integrand carries a
/// removable 1/(t-x)^2 singularity; it is eliminated analytically by the
/// Christoffel-Darboux rewrite, leaving
///   f_check(t) = (1/(sqrt(pi) N_N(t))) int e^{-x^2} f(x) K(x,t)^2 dx,
/// with K(x,t) = sum_n H_n(x) H_n(t)/(n! 2^n), a degree-N polynomial in x.
/// For polynomial f of degree deg_f, a rule of exactness >= deg_f + 2N is
/// exact; pass deg_f < 0 for a doubled-node convergence path instead.
inline double lower_symbol(int N, const std::function<double(double)>& f, int deg_f, double t,
                           const QuadratureRule* rule = nullptr) {
  const std::vector<double> ht = hermite_values(N, t);
  std::vector<double> kt(N + 1);  // H_n(t)/(n! 2^n)
  double fc = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fc /= 2.0 * n;
    kt[n] = ht[n] * fc;
  }
  const double nn = cd_normalization(N, t);

  auto eval_with = [&](const QuadratureRule& q) {
    double acc = 0.0;
    for (size_t i = 0; i < q.nodes.size(); ++i) {
      const std::vector<double> hx = hermite_values(N, q.nodes[i]);
      double kernel = 0.0;
      for (int n = 0; n <= N; ++n) kernel += kt[n] * hx[n];
      acc += q.weights[i] * f(q.nodes[i]) * kernel * kernel;
    }
    return acc / (std::sqrt(M_PI) * nn);
  };

  if (deg_f >= 0) {
    const int need = deg_f + 2 * N;
    if (rule) {
      if (rule->family != WeightFamily::Hermite || rule->exactness_degree < need)
        throw numeric_error("lower_symbol: rule exactness insufficient for integrand degree");
      return eval_with(*rule);
    }
    return eval_with(gauss_rule(WeightFamily::Hermite, need / 2 + 1));
  }

  // non-polynomial f: accept when doubling the node count moves the result
  // by less than 1e-9
  double prev = 0.0;
  for (int m = std::max(8, N + 1); m <= 1024; m *= 2) {
    const double cur = eval_with(gauss_rule(WeightFamily::Hermite, m));
    if (m > 8 && std::abs(cur - prev) <= 1e-9 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw numeric_error("lower_symbol: doubled-node convergence not reached");
}

/// Definitional route <t|A_f|t> by contraction with the frame state.
inline double lower_symbol_via_operator(const RealOperator& op, double t) {
  const FrameState st = frame_state(op.N, t);
  return st.coeffs.dot(op.matrix * st.coeffs);
}

/// Longest contiguous interval on which the position lower symbol tracks
/// the classical value to within `threshold`, scanned on a uniform grid
/// over [-t_max, t_max]. The curve oscillates around the diagonal, so at
/// tight thresholds (the 0.05 default) the sector is a thin sliver for
/// every small N; around 0.25 it matches the visual "median sector" and
/// widens with N.
struct FaithfulSector {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

inline FaithfulSector faithful_sector(int N, double threshold = 0.05, double t_max = 6.0,
                                      int steps = 1200) {
  const RealOperator ax = position_operator(N);
  FaithfulSector best;
  double start = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i <= steps + 1; ++i) {
    const double t = -t_max + 2.0 * t_max * i / steps;
    const bool ok =
        i <= steps && std::abs(lower_symbol_via_operator(ax, t) - t) < threshold;
    if (ok && std::isnan(start)) start = t;
    if (!ok && !std::isnan(start)) {
      const double prev = -t_max + 2.0 * t_max * (i - 1) / steps;
      if (prev - start > best.length()) best = {start, prev};
      start = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return best;
}

}  // namespace csq
