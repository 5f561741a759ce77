#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "csq/errors.hpp"
#include "csq/numerics.hpp"

namespace csq {

/// Sector label s, truncation dimension D and series tolerance shared by all
/// operator constructions in that sector.
struct SectorConfig {
  unsigned s = 0;
  int D = 40;
  double series_tol = 1e-14;

  void validate() const {
    if (D < 2) throw std::invalid_argument("SectorConfig: D must be at least 2");
    if (!(series_tol > 0)) throw std::invalid_argument("SectorConfig: series_tol must be positive");
  }
};

/// Normalization N_s(lambda) = sum_n s!/(s+n)! lambda^n (L_s^(n)(lambda))^2.
/// Closed forms: N_0 = e^lambda, N_1 = e^lambda - lambda.
inline double normalization(unsigned s, double lambda, double series_tol = 1e-14) {
  if (lambda < 0) throw std::invalid_argument("normalization: lambda must be nonnegative");
  double a = 1.0;  // s! lambda^n / (s+n)!
  SeriesOptions opt;
  opt.tol = series_tol;
  return sum_series(
      [&](int n) {
        if (n > 0) a *= lambda / (s + n);
        const double L = laguerre_value(s, n, lambda);
        return a * L * L;
      },
      opt);
}

/// Coherent state |z;s> in the truncated basis: coeffs[n] is the component
/// on |n;s>. The stored length is at least the requested D and is enlarged
/// until the discarded tail of sum |coeffs|^2 falls below series_tol.
struct CoherentState {
  std::complex<double> z;
  unsigned sector = 0;
  Eigen::VectorXcd coeffs;
  double norm_value = 1.0;  // N_s(|z|^2)
  double tail = 0.0;        // 1 - sum |coeffs|^2
};

inline CoherentState coherent_state(unsigned s, std::complex<double> z, int D,
                                    double series_tol = 1e-14) {
  if (D < 1) throw std::invalid_argument("coherent_state: D must be positive");
  constexpr int kCap = 4096;
  const double lambda = std::norm(z);
  const double N = normalization(s, lambda, series_tol);
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;

  std::vector<std::complex<double>> c;
  std::complex<double> v = 1.0;  // z^n sqrt(s! / (s+n)!)
  double partial = 0.0;
  for (int n = 0;; ++n) {
    if (n > 0) v *= z / std::sqrt(static_cast<double>(s + n));
    const std::complex<double> cn = sign * v * (laguerre_value(s, n, lambda) / std::sqrt(N));
    c.push_back(cn);
    partial += std::norm(cn);
    if (n + 1 >= D && 1.0 - partial < series_tol) break;
    if (n + 1 >= kCap)
      throw numeric_error("coherent_state: coefficient tail does not reach tolerance within cap");
  }

  CoherentState st;
  st.z = z;
  st.sector = s;
  st.coeffs = Eigen::Map<Eigen::VectorXcd>(c.data(), static_cast<Eigen::Index>(c.size()));
  st.norm_value = N;
  st.tail = std::max(0.0, 1.0 - partial);
  return st;
}

/// Dense D x D operator on the truncated sector basis.
struct TruncatedOperator {
  Eigen::MatrixXcd matrix;
  unsigned sector = 0;
  std::string label;
  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Lowering/raising pair: A_z has superdiagonal sqrt(s+n+1), A_zbar is its
/// adjoint (exactly, by construction).
inline std::pair<TruncatedOperator, TruncatedOperator> ladder_operators(const SectorConfig& cfg) {
  cfg.validate();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cfg.D, cfg.D);
  for (int n = 0; n + 1 < cfg.D; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(cfg.s + n + 1));
  TruncatedOperator az{a, cfg.s, "A_z"};
  TruncatedOperator azbar{a.adjoint(), cfg.s, "A_zbar"};
  return {std::move(az), std::move(azbar)};
}

/// One monomial c * z^a * zbar^b of a classical observable.
struct Monomial {
  unsigned a = 0;
  unsigned b = 0;
  std::complex<double> c = 1.0;
};

/// Frame quantization of f(z, zbar) = sum of monomials. The matrix element
/// (m, n) is nonzero only when m - n = b - a; the surviving radial integral
///   s!/sqrt((s+m)!(s+n)!) * int_0^inf e^-t t^{m+a} L_s^(m) L_s^(n) dt
/// is evaluated by generalized Gauss-Laguerre quadrature with alpha = m + a,
/// whose s+1 nodes cover the degree-2s polynomial part exactly.
inline TruncatedOperator quantize(const SectorConfig& cfg, const std::vector<Monomial>& f,
                                  const std::string& label = "custom") {
  cfg.validate();
  const unsigned s = cfg.s;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(cfg.D, cfg.D);
  std::map<int, QuadratureRule> rules;  // keyed by alpha
  const double lgs = std::lgamma(s + 1.0);

  for (const Monomial& mono : f) {
    for (int m = 0; m < cfg.D; ++m) {
      const int n = m + static_cast<int>(mono.a) - static_cast<int>(mono.b);
      if (n < 0 || n >= cfg.D) continue;
      const int alpha = m + static_cast<int>(mono.a);
      if (alpha > 160) throw numeric_error("quantize: radial weight exceeds double range");
      auto it = rules.find(alpha);
      if (it == rules.end())
        it = rules.emplace(alpha, gauss_rule(WeightFamily::Laguerre, s + 1, alpha)).first;
      const QuadratureRule& rule = it->second;

      const double lga = std::lgamma(alpha + 1.0);
      double integral = 0.0;  // int e^-t t^alpha L_s^(m) L_s^(n) dt / alpha!
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        integral += (rule.weights[i] / std::exp(lga)) * laguerre_value(s, m, t) *
                    laguerre_value(s, n, t);
      }
      const double pref =
          std::exp(lgs + lga - 0.5 * std::lgamma(s + m + 1.0) - 0.5 * std::lgamma(s + n + 1.0));
      A(m, n) += mono.c * pref * integral;
    }
  }
  return TruncatedOperator{std::move(A), s, label};
}

/// Position/momentum pair from the quantized z, zbar.
inline std::pair<TruncatedOperator, TruncatedOperator> qp_operators(const SectorConfig& cfg) {
  auto [az, azbar] = ladder_operators(cfg);
  const std::complex<double> i(0.0, 1.0);
  Eigen::MatrixXcd q = (az.matrix + azbar.matrix) / std::sqrt(2.0);
  Eigen::MatrixXcd p = -i * (az.matrix - azbar.matrix) / std::sqrt(2.0);
  return {TruncatedOperator{std::move(q), cfg.s, "q"}, TruncatedOperator{std::move(p), cfg.s, "p"}};
}

/// Deviation of the truncated commutators from the deformed rule
/// [A_z, A_zbar] = I + s|0><0| (and [q, p] = i(I + s|0><0|)). Assertable
/// content lives on the interior block 0..D-2; the (D-1, D-1) corner of the
/// raw commutator is the truncation artifact -(s+D-1) and is reported as is.
struct CommutatorReport {
  Eigen::MatrixXcd defect_ladder;  // [A_z,A_zbar] - I - s P0, full D x D
  double max_interior_ladder = 0.0;
  double max_interior_qp = 0.0;
  double corner_raw = 0.0;
  double corner_expected = 0.0;
};

inline CommutatorReport commutator_defect(const SectorConfig& cfg) {
  cfg.validate();
  if (cfg.D < 3) throw std::invalid_argument("commutator_defect: D must be at least 3");
  auto [az, azbar] = ladder_operators(cfg);
  auto [q, p] = qp_operators(cfg);
  const int D = cfg.D;
  const std::complex<double> i(0.0, 1.0);

  Eigen::MatrixXcd comm = az.matrix * azbar.matrix - azbar.matrix * az.matrix;
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(D, D);
  expected(0, 0) += static_cast<double>(cfg.s);

  CommutatorReport rep;
  rep.defect_ladder = comm - expected;
  Eigen::MatrixXcd defect_qp = q.matrix * p.matrix - p.matrix * q.matrix - i * expected;
  rep.max_interior_ladder = rep.defect_ladder.topLeftCorner(D - 1, D - 1).cwiseAbs().maxCoeff();
  rep.max_interior_qp = defect_qp.topLeftCorner(D - 1, D - 1).cwiseAbs().maxCoeff();
  rep.corner_raw = comm(D - 1, D - 1).real();
  rep.corner_expected = -static_cast<double>(cfg.s + D - 1);
  return rep;
}

/// Both harmonic-oscillator quantizations: H_cs = diag(n + 2s + 1) from the
/// direct quantization of |z|^2, and H_ansatz = (q^2 + p^2)/2 from the
/// substitution ansatz. Untruncated, the latter has levels (s+1)/2 and
/// n + s + 1/2 for n >= 1.
inline std::pair<TruncatedOperator, TruncatedOperator> hamiltonians(const SectorConfig& cfg) {
  cfg.validate();
  Eigen::MatrixXcd hcs = Eigen::MatrixXcd::Zero(cfg.D, cfg.D);
  for (int n = 0; n < cfg.D; ++n) hcs(n, n) = static_cast<double>(n + 2 * cfg.s + 1);
  auto [q, p] = qp_operators(cfg);
  Eigen::MatrixXcd ha = 0.5 * (q.matrix * q.matrix + p.matrix * p.matrix);
  return {TruncatedOperator{std::move(hcs), cfg.s, "H_cs"},
          TruncatedOperator{std::move(ha), cfg.s, "H_ansatz"}};
}

/// The scalar ratio R_s(lambda) with q_check = q R_s, p_check = p R_s:
///   R_s = (1/N_s) sum_n C(s+n+1, s) lambda^n/n!
///            * 1F1(-s; n+1; lambda) 1F1(-s; n+2; lambda).
inline double lower_symbol_ratio_series(unsigned s, double lambda, double series_tol = 1e-14) {
  if (lambda < 0) throw std::invalid_argument("lower_symbol_ratio_series: lambda < 0");
  const double N = normalization(s, lambda, series_tol);
  double w = s + 1.0;  // C(s+n+1, s) lambda^n / n!
  SeriesOptions opt;
  opt.tol = series_tol;
  const double sum = sum_series(
      [&](int n) {
        if (n > 0) w *= lambda * (s + n + 1.0) / (static_cast<double>(n) * (n + 1.0));
        return w * hyp1f1_terminating(s, n + 1.0, lambda) * hyp1f1_terminating(s, n + 2.0, lambda);
      },
      opt);
  return sum / N;
}

/// Lower symbols <z;s|q|z;s>, <z;s|p|z;s> evaluated by two independent
/// routes: the hypergeometric series of the ratio R_s and a direct
/// vector-matrix-vector contraction. Disagreement beyond 1e-9 is an
/// internal consistency error.
struct LowerSymbols {
  double q_check = 0.0;  // contraction route
  double p_check = 0.0;
  double q_series = 0.0;  // series route
  double p_series = 0.0;
  double ratio = 1.0;  // R_s(|z|^2)
};

inline LowerSymbols lower_symbols(const SectorConfig& cfg, std::complex<double> z) {
  cfg.validate();
  const CoherentState st = coherent_state(cfg.s, z, cfg.D, cfg.series_tol);
  const int De = static_cast<int>(st.coeffs.size());
  SectorConfig wide = cfg;
  wide.D = De;
  auto [q, p] = qp_operators(wide);

  LowerSymbols out;
  out.q_check = (st.coeffs.adjoint() * q.matrix * st.coeffs)(0).real();
  out.p_check = (st.coeffs.adjoint() * p.matrix * st.coeffs)(0).real();
  out.ratio = lower_symbol_ratio_series(cfg.s, std::norm(z), cfg.series_tol);
  out.q_series = std::sqrt(2.0) * z.real() * out.ratio;
  out.p_series = std::sqrt(2.0) * z.imag() * out.ratio;

  const double tol = 1e-9;
  if (std::abs(out.q_check - out.q_series) > tol * std::max(1.0, std::abs(out.q_series)) ||
      std::abs(out.p_check - out.p_series) > tol * std::max(1.0, std::abs(out.p_series)))
    throw consistency_error("lower_symbols: series and contraction routes disagree");
  return out;
}

/// Residual of the annihilation-operator eigenvalue relation
/// A_z |z;s> = z |z;s> on the interior indices. Zero (to series_tol) only
/// for s = 0; for s >= 1 the relation fails and the residual is a
/// measurement, not an assertion.
inline double annihilation_residual(const CoherentState& st) {
  const int De = static_cast<int>(st.coeffs.size());
  double acc = 0.0;
  for (int n = 0; n + 1 < De; ++n) {
    const std::complex<double> r =
        std::sqrt(static_cast<double>(st.sector + n + 1)) * st.coeffs[n + 1] - st.z * st.coeffs[n];
    acc += std::norm(r);
  }
  return std::sqrt(acc);
}

}  // namespace csq
