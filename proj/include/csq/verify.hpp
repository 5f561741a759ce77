#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csq/complex_cs.hpp"
#include "csq/numerics.hpp"
#include "csq/photon_stats.hpp"
#include "csq/poly_core.hpp"
#include "csq/real_frame.hpp"
#include "csq/susy.hpp"

namespace csq {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

// polar integral (1/pi) int e^{-|z|^2} G d^2z used by the self-verification
// of the orthogonality relation
inline std::complex<double> polar_integral(
    const std::function<std::complex<double>(std::complex<double>)>& g, int degree) {
  const int n_ang = 2 * degree + 8;
  const QuadratureRule radial = gauss_rule(WeightFamily::Laguerre, degree / 2 + 2);
  std::complex<double> acc = 0.0;
  for (int j = 0; j < n_ang; ++j) {
    const std::complex<double> dir = std::polar(1.0, 2.0 * M_PI * j / n_ang);
    for (size_t i = 0; i < radial.nodes.size(); ++i)
      acc += radial.weights[i] * g(std::sqrt(radial.nodes[i]) * dir);
  }
  return acc / static_cast<double>(n_ang);
}

template <class Fn>
CheckResult run_check(const std::string& name, Fn&& fn) {
  CheckResult r;
  r.name = name;
  try {
    std::ostringstream detail;
    r.pass = fn(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

}  // namespace detail

/// Every invariant from the polynomial, numerics, quantization, statistics,
/// real-frame and SUSY modules, run as a self-contained suite.
inline std::vector<CheckResult> run_verification() {
  using detail::run_check;
  std::vector<CheckResult> out;

  out.push_back(run_check("poly_core/laguerre-form identity s<=r<=8", [](std::ostream&) {
    for (unsigned r = 0; r <= 8; ++r)
      for (unsigned s = 0; s <= r; ++s) {
        BigRat scale(factorial_int(s));
        if (s % 2 == 1) scale = -scale;
        if (!(complex_hermite(r, s) == bivariate_from_radial(laguerre(s, r - s), r - s, scale)))
          return false;
      }
    return true;
  }));

  out.push_back(run_check("poly_core/conjugation symmetry r,s<=6", [](std::ostream&) {
    for (unsigned r = 0; r <= 6; ++r)
      for (unsigned s = 0; s <= 6; ++s)
        if (!(complex_hermite(r, s).conj_swap() == complex_hermite(s, r))) return false;
    return true;
  }));

  out.push_back(
      run_check("poly_core/orthogonality s<=3 n,n'<=6 rel 1e-10", [](std::ostream& os) {
        double worst = 0.0;
        for (unsigned s = 0; s <= 3; ++s)
          for (unsigned n = 0; n <= 6; ++n)
            for (unsigned np = 0; np <= 6; ++np) {
              const BivariatePoly a = complex_hermite(s + n, s);
              const BivariatePoly b = complex_hermite(s + np, s);
              const std::complex<double> got = detail::polar_integral(
                  [&](std::complex<double> z) { return a.eval(z) * std::conj(b.eval(z)); },
                  a.total_degree() + b.total_degree());
              const double expected =
                  (n == np) ? to_double(factorial_int(s) * factorial_int(s + n)) : 0.0;
              const double scale =
                  to_double(factorial_int(s) * factorial_int(s + std::max(n, np)));
              worst = std::max(worst, std::abs(got - expected) / scale);
            }
        os << "max rel deviation " << worst;
        return worst < 1e-10;
      }));

  out.push_back(run_check("poly_core/ladder identities exact s<=4 n<=6", [](std::ostream&) {
    for (unsigned s = 0; s <= 4; ++s)
      for (unsigned n = 0; n <= 6; ++n)
        if (!ladder_check(s, n)) return false;
    return true;
  }));

  out.push_back(run_check("poly_core/hermite orthogonality n!2^n", [](std::ostream& os) {
    const QuadratureRule rule = gauss_rule(WeightFamily::Hermite, 9);
    double worst = 0.0;
    for (unsigned m = 0; m <= 8; ++m)
      for (unsigned n = 0; n <= 8; ++n) {
        const UnivariatePoly hm = hermite(m), hn = hermite(n);
        const double got =
            rule.integrate([&](double x) { return hm.eval(x) * hn.eval(x); }) / std::sqrt(M_PI);
        const double expected = (m == n) ? to_double(factorial_int(n)) * std::pow(2.0, n) : 0.0;
        const double scale = to_double(factorial_int(std::max(m, n))) * std::pow(2.0, 8);
        worst = std::max(worst, std::abs(got - expected) / scale);
      }
    os << "max rel deviation " << worst;
    return worst < 1e-12;
  }));

  out.push_back(run_check("numerics/rule exactness self-tests", [](std::ostream&) {
    for (int m : {1, 2, 8, 24, 48}) gauss_rule(WeightFamily::Hermite, m);
    for (int alpha : {0, 5, 20})
      for (int m : {1, 6, 16}) gauss_rule(WeightFamily::Laguerre, m, alpha);
    return true;  // construction itself runs the self-test
  }));

  out.push_back(run_check("numerics/jacobi consistency loop", [](std::ostream& os) {
    const int m = 16;
    const QuadratureRule rule = gauss_rule(WeightFamily::Hermite, m);
    SymTridiagonal t;
    t.diag.assign(m, 0.0);
    t.off.resize(m - 1);
    for (int k = 1; k < m; ++k) t.off[k - 1] = std::sqrt(0.5 * k);
    const std::vector<double> ev = tridiag_smallest_eigenvalues(t, m, 1e-13);
    double worst = 0.0;
    for (int i = 0; i < m; ++i) worst = std::max(worst, std::abs(rule.nodes[i] - ev[i]));
    os << "max node deviation " << worst;
    return worst < 1e-12;
  }));

  out.push_back(run_check("numerics/series sums exp(lambda) to tol", [](std::ostream&) {
    for (double lambda = 0.5; lambda <= 30.0; lambda += 3.5) {
      double term = 1.0;
      const double got = sum_series([&](int n) {
        if (n > 0) term *= lambda / n;
        return term;
      });
      if (std::abs(got - std::exp(lambda)) > 1e-12 * std::exp(lambda)) return false;
    }
    return true;
  }));

  out.push_back(run_check("complex_cs/resolution of identity s<=3 D<=20", [](std::ostream& os) {
    double worst = 0.0;
    for (unsigned s = 0; s <= 3; ++s)
      for (int D : {4, 12, 20}) {
        const TruncatedOperator ident =
            quantize(SectorConfig{s, D, 1e-14}, {Monomial{0, 0, 1.0}}, "A_1");
        worst = std::max(
            worst,
            (ident.matrix - Eigen::MatrixXcd::Identity(D, D)).cwiseAbs().maxCoeff());
      }
    os << "max deviation from identity " << worst;
    return worst < 1e-12;
  }));

  out.push_back(
      run_check("complex_cs/annihilation eigenrelation s=0 only", [](std::ostream& os) {
        const std::complex<double> z(1.1, -0.4);
        const double r0 = annihilation_residual(coherent_state(0, z, 40));
        os << "s=0 residual " << r0 << "; reported (not asserted): ";
        for (unsigned s = 1; s <= 3; ++s)
          os << "s=" << s << " -> " << annihilation_residual(coherent_state(s, z, 40)) << "  ";
        return r0 < 1e-10;
      }));

  out.push_back(run_check("complex_cs/hermiticity of q, p, H", [](std::ostream& os) {
    double worst = 0.0;
    for (unsigned s = 0; s <= 3; ++s) {
      const SectorConfig cfg{s, 40, 1e-14};
      auto [q, p] = qp_operators(cfg);
      auto [hcs, ha] = hamiltonians(cfg);
      for (const auto* op : {&q, &p, &hcs, &ha})
        worst = std::max(worst, (op->matrix - op->matrix.adjoint()).cwiseAbs().maxCoeff());
    }
    os << "max asymmetry " << worst;
    return worst < 1e-12;
  }));

  out.push_back(
      run_check("complex_cs/closed forms match quantize s<=2 D<=10", [](std::ostream& os) {
        double worst = 0.0;
        for (unsigned s = 0; s <= 2; ++s) {
          const SectorConfig cfg{s, 10, 1e-14};
          auto [az, azbar] = ladder_operators(cfg);
          auto [hcs, ha] = hamiltonians(cfg);
          worst = std::max(worst, (quantize(cfg, {Monomial{1, 0, 1.0}}).matrix - az.matrix)
                                      .cwiseAbs()
                                      .maxCoeff());
          worst = std::max(worst, (quantize(cfg, {Monomial{0, 1, 1.0}}).matrix - azbar.matrix)
                                      .cwiseAbs()
                                      .maxCoeff());
          worst = std::max(worst, (quantize(cfg, {Monomial{1, 1, 1.0}}).matrix - hcs.matrix)
                                      .cwiseAbs()
                                      .maxCoeff());
          // q and p by linearity of the quantization map
          const std::complex<double> i(0.0, 1.0);
          const double r2 = 1.0 / std::sqrt(2.0);
          auto [q, p] = qp_operators(cfg);
          worst = std::max(
              worst, (quantize(cfg, {Monomial{1, 0, r2}, Monomial{0, 1, r2}}).matrix - q.matrix)
                         .cwiseAbs()
                         .maxCoeff());
          worst = std::max(worst, (quantize(cfg, {Monomial{1, 0, -i * r2}, Monomial{0, 1, i * r2}})
                                       .matrix -
                                   p.matrix)
                                      .cwiseAbs()
                                      .maxCoeff());
        }
        os << "max entry deviation " << worst;
        return worst < 1e-9;
      }));

  out.push_back(run_check("complex_cs/H_ansatz interior spectrum", [](std::ostream& os) {
    double worst = 0.0;
    for (unsigned s = 0; s <= 3; ++s) {
      const SectorConfig cfg{s, 40, 1e-14};
      auto [hcs, ha] = hamiltonians(cfg);
      const Eigen::MatrixXcd interior = ha.matrix.topLeftCorner(cfg.D - 1, cfg.D - 1);
      const SpectrumResult sp = symmetric_spectrum(interior, false);
      std::vector<double> expected{0.5 * (s + 1.0)};
      for (int n = 1; n <= cfg.D - 5; ++n) expected.push_back(n + s + 0.5);
      std::sort(expected.begin(), expected.end());
      for (int i = 0; i < cfg.D - 5; ++i)
        worst = std::max(worst, std::abs(sp.eigenvalues[i] - expected[i]));
    }
    os << "max level deviation " << worst;
    return worst < 1e-8;
  }));

  out.push_back(run_check("complex_cs/commutator defect interior", [](std::ostream& os) {
    double worst = 0.0, corner = 0.0;
    for (unsigned s = 0; s <= 3; ++s) {
      const CommutatorReport rep = commutator_defect(SectorConfig{s, 40, 1e-14});
      worst = std::max(worst, std::max(rep.max_interior_ladder, rep.max_interior_qp));
      corner = std::max(corner, std::abs(rep.corner_raw - rep.corner_expected));
    }
    os << "max interior defect " << worst << ", corner deviation " << corner;
    return worst < 1e-12 && corner < 1e-12 * 43.0;
  }));

  out.push_back(run_check("photon_stats/normalization s<=3 lambda<=30", [](std::ostream& os) {
    double worst = 0.0;
    for (unsigned s = 0; s <= 3; ++s)
      for (double lambda : {0.5, 5.0, 15.0, 30.0}) {
        const DistributionTable t = distribution(s, lambda);
        double sum = 0.0;
        for (double p : t.p) sum += p;
        worst = std::max(worst, std::abs(sum + t.tail_mass - 1.0));
      }
    os << "max |sum + tail - 1| " << worst;
    return worst < 1e-12;
  }));

  out.push_back(run_check("photon_stats/closed-vs-series Mandel s=1", [](std::ostream& os) {
    double worst = 0.0;
    for (double lambda : {0.1, 0.5, 1.0, 1.81, 3.0, 10.0, 50.0})
      worst = std::max(worst,
                       std::abs(mandel_q_series(1, lambda) - mandel_q_closed_s1(lambda)));
    os << "max deviation " << worst;
    return worst < 1e-9;
  }));

  out.push_back(run_check("photon_stats/P_1(lambda-1;lambda)=0", [](std::ostream&) {
    for (int lambda = 1; lambda <= 10; ++lambda)
      if (distribution(1, lambda).p[lambda - 1] != 0.0) return false;
    return true;
  }));

  out.push_back(run_check("photon_stats/relative maxima", [](std::ostream& os) {
    const std::vector<int> m1 = distribution(1, 1.0).relative_maxima();
    const std::vector<int> m3 = distribution(1, 3.0).relative_maxima();
    const std::vector<int> m10 = distribution(1, 10.0).relative_maxima();
    os << "computed {2}, {0,5}, {5,14}; published caption lists n=3 for lambda=1 "
          "where the implemented distribution peaks at n=2";
    return m1 == std::vector<int>{2} && m3 == std::vector<int>{0, 5} &&
           m10 == std::vector<int>{5, 14};
  }));

  out.push_back(run_check("real_frame/cd normalization sum=closed", [](std::ostream& os) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    double worst = 0.0;
    for (int N = 0; N <= 12; ++N)
      for (int rep = 0; rep < 50; ++rep) {
        const double x = dist(rng);
        const double closed = cd_normalization(N, x);
        worst = std::max(worst,
                         std::abs(closed - cd_normalization_sum(N, x)) / std::abs(closed));
      }
    os << "max rel deviation " << worst;
    return worst < 1e-10;
  }));

  out.push_back(run_check("real_frame/resolution of identity N<=12", [](std::ostream& os) {
    double worst = 0.0;
    for (int N = 0; N <= 12; ++N) worst = std::max(worst, resolution_check(N));
    os << "max deviation " << worst;
    return worst < 1e-12;
  }));

  out.push_back(
      run_check("real_frame/coefficient route = quadrature route", [](std::ostream& os) {
        std::mt19937 rng(123);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
          const int N = 1 + static_cast<int>(rng() % 8);
          const int deg = static_cast<int>(rng() % (2 * N + 1));
          std::vector<double> a(deg + 1);
          UnivariatePoly f;
          for (int m = 0; m <= deg; ++m) {
            a[m] = dist(rng);
            f = f + BigRat(a[m]) * hermite(m);
          }
          const RealOperator viaq = quantize_fn_poly(N, f);
          const RealOperator viah = quantize_hermite_series(N, a);
          const double scale = std::max(1.0, viah.matrix.cwiseAbs().maxCoeff());
          worst = std::max(worst,
                           (viaq.matrix - viah.matrix).cwiseAbs().maxCoeff() / scale);
        }
        os << "max rel deviation " << worst;
        return worst < 1e-10;
      }));

  out.push_back(run_check("real_frame/position matrix and spectra", [](std::ostream& os) {
    double worst = 0.0;
    for (int N = 1; N <= 12; ++N) {
      const RealOperator ax = position_operator(N);
      for (int k = 1; k <= N; ++k)
        if (ax.matrix(k - 1, k) != std::sqrt(0.5 * k) || ax.matrix(k, k - 1) != std::sqrt(0.5 * k))
          return false;
      const SpectrumResult sp = position_spectrum(N);
      const QuadratureRule rule = gauss_rule(WeightFamily::Hermite, N + 1);
      const UnivariatePoly hh = hermite(N + 1);
      for (int i = 0; i <= N; ++i) {
        worst = std::max(worst, std::abs(sp.eigenvalues[i] - rule.nodes[i]));
        // the eigenvalue is a root of H_{N+1}: polish by bisection around it
        const double a = sp.eigenvalues[i] - 1e-4, b = sp.eigenvalues[i] + 1e-4;
        if (hh.eval(a) * hh.eval(b) < 0) {
          const double root = find_root([&](double x) { return hh.eval(x); }, a, b, 1e-14);
          worst = std::max(worst, std::abs(sp.eigenvalues[i] - root));
        }
      }
    }
    os << "max spectral deviation " << worst;
    return worst < 1e-10;
  }));

  out.push_back(run_check("real_frame/lower symbol odd and bounded", [](std::ostream&) {
    for (int N : {1, 4, 9}) {
      const SpectrumResult sp = position_spectrum(N);
      const double bound =
          std::max(std::abs(sp.eigenvalues.front()), std::abs(sp.eigenvalues.back()));
      for (double t = 0.0; t <= 6.0; t += 0.37) {
        const double plus = lower_symbol(N, [](double x) { return x; }, 1, t);
        const double minus = lower_symbol(N, [](double x) { return x; }, 1, -t);
        if (std::abs(plus + minus) > 1e-12 || std::abs(plus) > bound + 1e-12) return false;
      }
    }
    return true;
  }));

  out.push_back(run_check("susy/ODE residual O(h^2)", [](std::ostream& os) {
    for (auto [eps, mu] : std::vector<std::pair<double, double>>{{-1.0, 0.0},
                                                                 {-1.0, 0.3},
                                                                 {-0.25, -0.5}}) {
      const double rc = seed_solution(eps, mu, 8.0, 0.02).ode_residual;
      const double rf = seed_solution(eps, mu, 8.0, 0.01).ode_residual;
      if (!(rc / rf > 3.0 && rc / rf < 5.0)) {
        os << "refinement ratio " << rc / rf << " at eps=" << eps << " mu=" << mu;
        return false;
      }
    }
    return true;
  }));

  out.push_back(run_check("susy/partner ground state is 1/u", [](std::ostream& os) {
    const SeedSolution seed = seed_solution(-1.0, 0.0, 10.0, 0.02);
    const PartnerHamiltonian p = partner_spectrum(seed, 2);
    double nv = 0.0, nu = 0.0;
    for (size_t i = 1; i + 1 < seed.u.size(); ++i) nu += 1.0 / (seed.u[i] * seed.u[i]);
    for (double c : p.ground) nv += c * c;
    double dp = 0.0, dm = 0.0;
    for (size_t i = 0; i < p.ground.size(); ++i) {
      const double a = p.ground[i] / std::sqrt(nv);
      const double b = (1.0 / seed.u[i + 1]) / std::sqrt(nu);
      dp += (a - b) * (a - b);
      dm += (a + b) * (a + b);
    }
    const double dist = std::sqrt(std::min(dp, dm));
    os << "L2 distance " << dist;
    return dist < 1e-2;
  }));

  out.push_back(run_check("susy/spectral identification s<=3", [](std::ostream& os) {
    double worst = 0.0;
    for (unsigned s = 0; s <= 3; ++s) {
      const SusyReport rep = identify_with_H_ansatz(s);
      worst = std::max(worst, std::max(rep.max_dev_partner, rep.max_dev_oscillator));
    }
    os << "max level deviation " << worst;
    return worst < 5e-3;
  }));

  out.push_back(run_check("susy/1/u^2 integrable beyond the box", [](std::ostream& os) {
    double worst = 0.0;
    for (unsigned s = 0; s <= 3; ++s)
      worst = std::max(worst, inv_u_squared_tail(-0.5 * (s + 1.0), 0.0, 12.0));
    os << "max tail integral " << worst;
    return worst < 1e-8;
  }));

  return out;
}

}  // namespace csq
