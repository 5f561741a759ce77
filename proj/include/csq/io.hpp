#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "csq/complex_cs.hpp"
#include "csq/photon_stats.hpp"
#include "csq/poly_core.hpp"
#include "csq/real_frame.hpp"

namespace csq {

/// Numbers are emitted with 17 significant digits so a reader recovers the
/// exact double.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline std::string json_matrix(const Eigen::MatrixXcd& m, bool imag_part) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += (i ? ",[" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += fmt_double(imag_part ? m(i, j).imag() : m(i, j).real());
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace detail

inline std::string operator_to_json(const TruncatedOperator& op) {
  std::string out = "{\"s\": " + std::to_string(op.sector);
  out += ", \"D\": " + std::to_string(op.dim());
  out += ", \"label\": \"" + op.label + "\"";
  out += ", \"re\": " + detail::json_matrix(op.matrix, false);
  out += ", \"im\": " + detail::json_matrix(op.matrix, true);
  return out + "}";
}

/// Real-frame operators share the complex dump format; the imaginary part
/// is all zeros and the sector slot is unused (0).
inline std::string operator_to_json(const RealOperator& op) {
  TruncatedOperator t{op.matrix.cast<std::complex<double>>(), 0, op.label};
  return operator_to_json(t);
}

/// Debug dump: {"terms": [[i, j, "coeff-as-decimal-string"], ...]}
inline std::string poly_to_json(const BivariatePoly& p) {
  std::string out = "{\"terms\": [";
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) out += ", ";
    first = false;
    out += "[" + std::to_string(k.first) + ", " + std::to_string(k.second) + ", \"" +
           c.str() + "\"]";
  }
  return out + "]}";
}

inline std::string spectrum_report_to_json(double epsilon, const std::vector<double>& levels,
                                           const std::vector<double>& expected) {
  std::string out = "{\"epsilon\": " + fmt_double(epsilon) + ", \"levels\": [";
  for (size_t i = 0; i < levels.size(); ++i) out += (i ? ", " : "") + fmt_double(levels[i]);
  out += "], \"expected\": [";
  for (size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + fmt_double(expected[i]);
  return out + "]}";
}

inline std::string distribution_to_csv(const DistributionTable& t) {
  std::string out = "n,p\n";
  for (size_t n = 0; n < t.p.size(); ++n)
    out += std::to_string(n) + "," + fmt_double(t.p[n]) + "\n";
  return out;
}

inline std::string mandel_sweep_to_csv(const std::vector<double>& lambdas,
                                       const std::vector<double>& qs) {
  std::string out = "lambda,q\n";
  for (size_t i = 0; i < lambdas.size(); ++i)
    out += fmt_double(lambdas[i]) + "," + fmt_double(qs[i]) + "\n";
  return out;
}

inline std::string lower_symbol_to_csv(const std::vector<double>& t, const std::vector<double>& f,
                                       const std::vector<double>& check,
                                       const std::vector<double>* ratio = nullptr) {
  std::string out = ratio ? "t,f,f_check,ratio\n" : "t,f,f_check\n";
  for (size_t i = 0; i < t.size(); ++i) {
    out += fmt_double(t[i]) + "," + fmt_double(f[i]) + "," + fmt_double(check[i]);
    if (ratio) out += "," + fmt_double((*ratio)[i]);
    out += "\n";
  }
  return out;
}

inline std::string seed_to_csv(const std::vector<double>& x, const std::vector<double>& u,
                               const std::vector<double>& v_interior) {
  // potential is defined on the interior points; pad the two boundary rows
  std::string out = "x,u,V\n";
  for (size_t i = 0; i < x.size(); ++i) {
    const bool interior = i > 0 && i + 1 < x.size();
    out += fmt_double(x[i]) + "," + fmt_double(u[i]) + "," +
           (interior ? fmt_double(v_interior[i - 1]) : "") + "\n";
  }
  return out;
}

}  // namespace csq
