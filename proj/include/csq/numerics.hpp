#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "csq/errors.hpp"

namespace csq {

// ---------------------------------------------------------------------------
// Gaussian quadrature (Golub-Welsch)
// ---------------------------------------------------------------------------

enum class WeightFamily { Hermite, Laguerre };

/// Nodes/weights of a Gaussian rule together with its declared polynomial
/// exactness degree. Hermite: weight e^{-x^2} on R. Laguerre(alpha):
/// weight x^alpha e^{-x} on [0, inf).
struct QuadratureRule {
  WeightFamily family = WeightFamily::Hermite;
  int alpha = 0;  // Laguerre only
  std::vector<double> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;

  double integrate(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

namespace detail {

// exact moment of the weight function: int x^d w(x) dx
inline double weight_moment(WeightFamily family, int alpha, int d) {
  if (family == WeightFamily::Hermite) {
    if (d % 2 == 1) return 0.0;
    double m = std::sqrt(M_PI);
    for (int j = 2; j <= d; j += 2) m *= 0.5 * (j - 1);
    return m;
  }
  double m = std::tgamma(alpha + 1.0);
  for (int j = 1; j <= d; ++j) m *= alpha + j;
  return m;
}

}  // namespace detail

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXcd eigenvectors;    // orthonormal columns; empty if not requested
  double residual = 0.0;            // max_k ||A v_k - lambda_k v_k||_2
};

/// Full spectrum of a self-adjoint matrix (real symmetric or complex
/// Hermitian). Input that is not self-adjoint to 1e-12 is rejected.
inline SpectrumResult symmetric_spectrum(const Eigen::MatrixXcd& A, bool with_vectors = true) {
  if (A.rows() != A.cols()) throw std::invalid_argument("symmetric_spectrum: matrix not square");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("symmetric_spectrum: matrix not self-adjoint");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      A, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numeric_error("symmetric_spectrum: eigensolver failed to converge");

  SpectrumResult r;
  r.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + solver.eigenvalues().size());
  if (with_vectors) {
    r.eigenvectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      double res = (A * r.eigenvectors.col(k) - r.eigenvalues[k] * r.eigenvectors.col(k)).norm();
      r.residual = std::max(r.residual, res);
    }
  }
  return r;
}

inline SpectrumResult symmetric_spectrum(const Eigen::MatrixXd& A, bool with_vectors = true) {
  return symmetric_spectrum(Eigen::MatrixXcd(A.cast<std::complex<double>>()), with_vectors);
}

/// Gaussian rule with m nodes from the eigendecomposition of the Jacobi
/// matrix of the orthogonal family; weights from the first eigenvector
/// components. A monomial-exactness self-test runs on construction.
inline QuadratureRule gauss_rule(WeightFamily family, int m, int alpha = 0) {
  if (m < 1) throw std::invalid_argument("gauss_rule: need at least one node");
  if (family == WeightFamily::Laguerre && alpha < 0)
    throw std::invalid_argument("gauss_rule: alpha must be nonnegative");

  std::vector<double> a(m), b(m);  // Jacobi recurrence coefficients
  double mu0;
  if (family == WeightFamily::Hermite) {
    mu0 = std::sqrt(M_PI);
    for (int k = 0; k < m; ++k) {
      a[k] = 0.0;
      b[k] = std::sqrt(0.5 * k);
    }
  } else {
    mu0 = std::tgamma(alpha + 1.0);
    for (int k = 0; k < m; ++k) {
      a[k] = 2.0 * k + alpha + 1.0;
      b[k] = std::sqrt(static_cast<double>(k) * (k + alpha));
    }
  }
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) J(k, k) = a[k];
  for (int k = 1; k < m; ++k) J(k, k - 1) = J(k - 1, k) = b[k];

  SpectrumResult es = symmetric_spectrum(J, false);

  QuadratureRule rule;
  rule.family = family;
  rule.alpha = alpha;
  rule.exactness_degree = 2 * m - 1;
  rule.nodes = es.eigenvalues;
  rule.weights.resize(m);
  // Christoffel-function weights, w_i = 1 / sum_k p_k(x_i)^2 over the
  // orthonormal family: unlike the squared first eigenvector component,
  // this keeps full relative accuracy for the tiny extreme-node weights.
  for (int i = 0; i < m; ++i) {
    const double x = rule.nodes[i];
    double pkm1 = 0.0, pk = 1.0 / std::sqrt(mu0), sum = pk * pk;
    for (int k = 0; k + 1 < m; ++k) {
      const double pk1 = ((x - a[k]) * pk - b[k] * pkm1) / b[k + 1];
      pkm1 = pk;
      pk = pk1;
      sum += pk * pk;
    }
    rule.weights[i] = 1.0 / sum;
  }

  if (family == WeightFamily::Hermite) {
    // enforce the symmetry of the rule exactly so odd integrands cancel
    for (int i = 0; i < m / 2; ++i) {
      const int j = m - 1 - i;
      const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
      rule.nodes[i] = -x;
      rule.nodes[j] = x;
      const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
      rule.weights[i] = rule.weights[j] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  }

  // self-test: monomials up to the declared exactness degree, relative 1e-12
  for (int d = 0; d <= rule.exactness_degree; ++d) {
    const double exact = detail::weight_moment(family, alpha, d);
    double quad = 0.0, mag = 0.0;
    for (int i = 0; i < m; ++i) {
      const double t = rule.weights[i] * std::pow(rule.nodes[i], d);
      quad += t;
      mag += std::abs(t);
    }
    if (mag > 1e280 || std::abs(exact) > 1e280) break;  // beyond double range
    if (std::abs(quad - exact) > 1e-12 * std::max(mag, std::abs(exact)))
      throw numeric_error("gauss_rule: exactness self-test failed at degree " +
                          std::to_string(d));
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Series summation
// ---------------------------------------------------------------------------

struct SeriesOptions {
  double tol = 1e-14;
  int max_terms = 200000;
  int tail_guard = 3;  // consecutive below-tol terms required to stop
};

/// Sum term(0) + term(1) + ... until tail_guard consecutive terms fall below
/// tol relative to the accumulated sum.
inline double sum_series(const std::function<double(int)>& term, const SeriesOptions& opt = {}) {
  double sum = 0.0;
  int quiet = 0;
  for (int n = 0; n < opt.max_terms; ++n) {
    const double t = term(n);
    sum += t;
    if (std::abs(t) <= opt.tol * std::abs(sum) && sum != 0.0)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= opt.tail_guard) return sum;
  }
  throw numeric_error("sum_series: no convergence within max_terms");
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Bisection on [a, b]; requires a sign change.
inline double find_root(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0) == (fb < 0)) throw numeric_error("find_root: no sign change on bracket");
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenproblems (Sturm bisection + inverse iteration)
// ---------------------------------------------------------------------------

/// Symmetric tridiagonal matrix: diag (n entries) and off-diagonal (n-1).
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below x (Sturm count via LDL recurrence).
inline int sturm_count(const SymTridiagonal& T, double x) {
  int count = 0;
  double d = 1.0;
  for (size_t i = 0; i < T.size(); ++i) {
    const double e2 = i ? T.off[i - 1] * T.off[i - 1] : 0.0;
    d = T.diag[i] - x - e2 / d;
    if (d < 0.0) ++count;
    if (d == 0.0) d = -1e-300;
  }
  return count;
}

/// The k smallest eigenvalues, ascending, each isolated by bisection
/// between Gershgorin bounds.
inline std::vector<double> tridiag_smallest_eigenvalues(const SymTridiagonal& T, int k,
                                                        double tol = 1e-11) {
  const size_t n = T.size();
  if (k < 1 || static_cast<size_t>(k) > n)
    throw std::invalid_argument("tridiag_smallest_eigenvalues: bad k");
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (size_t i = 0; i < n; ++i) {
    const double r = (i ? std::abs(T.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(T.off[i]) : 0.0);
    lo = std::min(lo, T.diag[i] - r);
    hi = std::max(hi, T.diag[i] + r);
  }
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<double> ev(k);
  for (int j = 0; j < k; ++j) {
    double a = lo, b = hi;
    while (b - a > tol * scale) {
      const double m = 0.5 * (a + b);
      if (sturm_count(T, m) >= j + 1)
        b = m;
      else
        a = m;
    }
    ev[j] = 0.5 * (a + b);
    lo = a;  // eigenvalues are requested in ascending order
  }
  return ev;
}

namespace detail {

// Solve (T - shift I) x = rhs by Gaussian elimination with partial pivoting
// (fill-in limited to a second superdiagonal).
inline std::vector<double> solve_shifted_tridiag(const SymTridiagonal& T, double shift,
                                                 std::vector<double> rhs) {
  const size_t n = T.size();
  std::vector<double> d(n), u1(n > 1 ? n - 1 : 0), u2(n > 2 ? n - 2 : 0, 0.0), l(n > 1 ? n - 1 : 0);
  for (size_t i = 0; i < n; ++i) d[i] = T.diag[i] - shift;
  for (size_t i = 0; i + 1 < n; ++i) {
    u1[i] = T.off[i];
    l[i] = T.off[i];
  }
  for (size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(l[i]) > std::abs(d[i])) {  // pivot rows i, i+1
      std::swap(d[i], l[i]);
      const double t = u1[i];
      u1[i] = d[i + 1];
      d[i + 1] = t;
      if (i + 2 < n) {
        u2[i] = u1[i + 1];
        u1[i + 1] = 0.0;
      }
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (d[i] == 0.0) d[i] = 1e-300;
    const double m = l[i] / d[i];
    d[i + 1] -= m * u1[i];
    if (i + 2 < n) u1[i + 1] -= m * u2[i];
    rhs[i + 1] -= m * rhs[i];
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  std::vector<double> x(n);
  for (size_t ii = n; ii-- > 0;) {
    double acc = rhs[ii];
    if (ii + 1 < n) acc -= u1[ii] * x[ii + 1];
    if (ii + 2 < n) acc -= u2[ii] * x[ii + 2];
    x[ii] = acc / d[ii];
  }
  return x;
}

}  // namespace detail

/// Eigenvector for an isolated eigenvalue of a symmetric tridiagonal matrix
/// by inverse iteration; returned with unit Euclidean norm.
inline std::vector<double> tridiag_eigenvector(const SymTridiagonal& T, double lambda) {
  const size_t n = T.size();
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int it = 0; it < 4; ++it) {
    v = detail::solve_shifted_tridiag(T, lambda, std::move(v));
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw numeric_error("tridiag_eigenvector: inverse iteration broke down");
    for (double& c : v) c /= norm;
  }
  return v;
}

/// Second-difference discretization of -(1/2) d^2/dx^2 + V on a uniform grid
/// with Dirichlet boundaries; `potential` holds V at the interior points.
inline SymTridiagonal grid_hamiltonian(const std::vector<double>& potential, double h) {
  SymTridiagonal T;
  const size_t n = potential.size();
  T.diag.resize(n);
  T.off.assign(n > 1 ? n - 1 : 0, -0.5 / (h * h));
  for (size_t i = 0; i < n; ++i) T.diag[i] = 1.0 / (h * h) + potential[i];
  return T;
}

// ---------------------------------------------------------------------------
// Scalar special-function evaluations used by several modules
// ---------------------------------------------------------------------------

/// Numeric generalized Laguerre value L_s^(alpha)(x) from the explicit sum;
/// s is expected to be small, alpha may be large.
inline double laguerre_value(unsigned s, unsigned alpha, double x) {
  double binom = 1.0;  // C(s+alpha, s-k) built multiplicatively, k = 0 first
  for (unsigned j = 1; j <= s; ++j) binom *= static_cast<double>(alpha + j) / j;
  double acc = 0.0, xk = 1.0, kfac = 1.0;
  for (unsigned k = 0; k <= s; ++k) {
    if (k > 0) {
      // C(s+alpha, s-k) = C(s+alpha, s-k+1) * (s-k+1) / (alpha+k)
      binom *= static_cast<double>(s - k + 1) / (alpha + k);
      xk *= x;
      kfac *= k;
    }
    const double term = binom * xk / kfac;
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc;
}

/// Terminating 1F1(-s; b; x) for nonnegative integer s.
inline double hyp1f1_terminating(unsigned s, double b, double x) {
  double acc = 1.0, term = 1.0;
  for (unsigned k = 0; k < s; ++k) {
    term *= -(static_cast<double>(s) - k) * x / ((b + k) * (k + 1));
    acc += term;
  }
  return acc;
}

}  // namespace csq
