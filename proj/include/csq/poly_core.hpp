#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csq/exact.hpp"

namespace csq {

/// Dense univariate polynomial with exact rational coefficients,
/// coeffs[k] = coefficient of x^k. Evaluation at rational points is exact.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UnivariatePoly constant(const BigRat& c) { return UnivariatePoly({c}); }

  const std::vector<BigRat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // degree of the zero polynomial is reported as -1
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  BigRat coeff(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : BigRat(0); }

  BigRat eval_exact(const BigRat& x) const {
    BigRat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + it->convert_to<double>();
    return acc;
  }

  UnivariatePoly derivative() const {
    if (coeffs_.size() <= 1) return UnivariatePoly{};
    std::vector<BigRat> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * BigInt(k);
    return UnivariatePoly(std::move(d));
  }

  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
    std::vector<BigRat> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigRat(0));
    for (size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return UnivariatePoly(std::move(c));
  }

  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
    std::vector<BigRat> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigRat(0));
    for (size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
    return UnivariatePoly(std::move(c));
  }

  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (a.is_zero() || b.is_zero()) return UnivariatePoly{};
    std::vector<BigRat> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigRat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UnivariatePoly(std::move(c));
  }

  friend UnivariatePoly operator*(const BigRat& s, const UnivariatePoly& p) {
    std::vector<BigRat> c = p.coeffs_;
    for (auto& v : c) v *= s;
    return UnivariatePoly(std::move(c));
  }

  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<BigRat> coeffs_;
};

/// Physicists' Hermite polynomial H_n, H_{n+1} = 2x H_n - 2n H_{n-1}.
inline UnivariatePoly hermite(unsigned n) {
  UnivariatePoly h0 = UnivariatePoly::constant(1);
  if (n == 0) return h0;
  UnivariatePoly h1({BigRat(0), BigRat(2)});
  const UnivariatePoly two_x({BigRat(0), BigRat(2)});
  for (unsigned k = 1; k < n; ++k) {
    UnivariatePoly next = two_x * h1 - (BigRat(2 * k) * h0);
    h0 = std::move(h1);
    h1 = std::move(next);
  }
  return h1;
}

/// Generalized Laguerre polynomial L_s^(alpha), exact rational coefficients:
/// L_s^(alpha)(x) = sum_k (-1)^k C(s+alpha, s-k) x^k / k!
inline UnivariatePoly laguerre(unsigned s, unsigned alpha) {
  std::vector<BigRat> c(s + 1);
  for (unsigned k = 0; k <= s; ++k) {
    BigRat v(binomial_int(s + alpha, s - k), factorial_int(k));
    c[k] = (k % 2 == 0) ? v : -v;
  }
  return UnivariatePoly(std::move(c));
}

/// Terminating confluent hypergeometric 1F1(-s; b; x) as a polynomial of
/// degree s; generated term by term, never by generic series summation.
inline UnivariatePoly hyp1f1_poly(unsigned s, const BigRat& b) {
  std::vector<BigRat> c(s + 1);
  BigRat term = 1;  // ((-s)_k / (b)_k) / k!
  c[0] = term;
  for (unsigned k = 0; k < s; ++k) {
    term *= BigRat(-BigInt(s - k)) / ((b + BigInt(k)) * BigInt(k + 1));
    c[k + 1] = term;
  }
  return UnivariatePoly(std::move(c));
}

/// Sparse bivariate polynomial in (z, zbar) with exact integer coefficients;
/// key (i, j) holds the coefficient of z^i zbar^j, zeros never stored.
class BivariatePoly {
 public:
  using Key = std::pair<unsigned, unsigned>;

  BivariatePoly() = default;

  const std::map<Key, BigInt>& terms() const { return terms_; }

  void add_term(unsigned i, unsigned j, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(Key{i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.first + k.second));
    return d;
  }

  std::complex<double> eval(std::complex<double> z) const {
    const std::complex<double> zb = std::conj(z);
    std::complex<double> acc = 0.0;
    for (const auto& [k, c] : terms_) {
      std::complex<double> t = to_double(c);
      for (unsigned p = 0; p < k.first; ++p) t *= z;
      for (unsigned p = 0; p < k.second; ++p) t *= zb;
      acc += t;
    }
    return acc;
  }

  BivariatePoly derivative_z() const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_)
      if (k.first > 0) r.add_term(k.first - 1, k.second, c * BigInt(k.first));
    return r;
  }

  BivariatePoly derivative_zbar() const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_)
      if (k.second > 0) r.add_term(k.first, k.second - 1, c * BigInt(k.second));
    return r;
  }

  BivariatePoly shift_z() const {  // multiply by z
    BivariatePoly r;
    for (const auto& [k, c] : terms_) r.add_term(k.first + 1, k.second, c);
    return r;
  }

  BivariatePoly shift_zbar() const {  // multiply by zbar
    BivariatePoly r;
    for (const auto& [k, c] : terms_) r.add_term(k.first, k.second + 1, c);
    return r;
  }

  /// Swap the roles of z and zbar; h^{r,s} maps to h^{s,r} under this.
  BivariatePoly conj_swap() const {
    BivariatePoly r;
    for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
    return r;
  }

  friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
    return r;
  }

  friend BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, -c);
    return r;
  }

  friend BivariatePoly operator*(const BigInt& s, const BivariatePoly& p) {
    BivariatePoly r;
    if (s == 0) return r;
    for (const auto& [k, c] : p.terms_) r.terms_.emplace(k, s * c);
    return r;
  }

  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Key, BigInt> terms_;
};

/// Complex Hermite polynomial h^{r,s}(z, zbar) as the finite sum
///   sum_{k=0}^{min(r,s)} (-1)^k/k! * r!s!/((r-k)!(s-k)!) z^{s-k} zbar^{r-k},
/// all coefficients exact integers. Total degree of h^{s+n,s} is n + 2s.
inline BivariatePoly complex_hermite(unsigned r, unsigned s) {
  BivariatePoly h;
  const unsigned kmax = std::min(r, s);
  for (unsigned k = 0; k <= kmax; ++k) {
    // (-1)^k C(r,k) C(s,k) k!  -- always an integer
    BigInt c = binomial_int(r, k) * binomial_int(s, k) * factorial_int(k);
    if (k % 2 == 1) c = -c;
    h.add_term(s - k, r - k, c);
  }
  return h;
}

/// Substitute x -> z*zbar in p, multiply by zbar^n and a rational scale.
/// The result must have integer coefficients; throws otherwise.
inline BivariatePoly bivariate_from_radial(const UnivariatePoly& p, unsigned zbar_power,
                                           const BigRat& scale) {
  BivariatePoly r;
  const auto& c = p.coeffs();
  for (unsigned k = 0; k < c.size(); ++k) {
    BigRat v = scale * c[k];
    if (v == 0) continue;
    if (denominator(v) != 1)
      throw std::invalid_argument("bivariate_from_radial: non-integer coefficient");
    r.add_term(k, k + zbar_power, numerator(v));
  }
  return r;
}

/// Gaussian-weighted basis function phi_{n;s}(z) =
///   e^{-|z|^2/2} h^{s+n,s}(z, zbar) / sqrt(s!(s+n)!).
/// The Gaussian half-weight is kept symbolic and applied at evaluation.
struct WeightedBasisFunction {
  unsigned sector = 0;
  unsigned index = 0;
  BivariatePoly poly;               // h^{s+n,s}
  bool gaussian_halfweight = true;  // apply e^{-|z|^2/2} when evaluating
  BigRat norm_factor_sq;            // 1 / (s! (s+n)!)

  std::complex<double> eval(std::complex<double> z) const {
    double w = std::sqrt(to_double(norm_factor_sq));
    if (gaussian_halfweight) w *= std::exp(-0.5 * std::norm(z));
    return w * poly.eval(z);
  }
};

inline WeightedBasisFunction phi(unsigned s, unsigned n) {
  WeightedBasisFunction f;
  f.sector = s;
  f.index = n;
  f.poly = complex_hermite(s + n, s);
  f.norm_factor_sq = BigRat(BigInt(1), factorial_int(s) * factorial_int(s + n));
  return f;
}

namespace detail {

// (-d/dz + zbar) p
inline BivariatePoly raise_r(const BivariatePoly& p) {
  return p.shift_zbar() - p.derivative_z();
}

// (-d/dzbar + z) p
inline BivariatePoly raise_s(const BivariatePoly& p) {
  return p.shift_z() - p.derivative_zbar();
}

}  // namespace detail

/// Verify, as exact polynomial identities, the four ladder relations of the
/// h^{r,s} family and the two relations of the weighted functions phi_{n;s}.
/// The Gaussian half-weight cancels analytically in the phi relations:
/// (d/dzbar + z/2) e^{-|z|^2/2} P = e^{-|z|^2/2} dP/dzbar, and likewise
/// (-d/dz + zbar/2) e^{-|z|^2/2} P = e^{-|z|^2/2} (-dP/dz + zbar P), so each
/// phi relation reduces to an h relation plus an exact normalization identity
/// (compared through its square to avoid irrational factors).
inline bool ladder_check(unsigned s, unsigned n) {
  const BivariatePoly h_ns = complex_hermite(s + n, s);
  const BivariatePoly h_n1s = complex_hermite(s + n + 1, s);
  const BivariatePoly h_ns1 = complex_hermite(s + n, s + 1);

  // (-d/dz + zbar) h^{s+n,s} = h^{s+n+1,s}
  if (!(detail::raise_r(h_ns) == h_n1s)) return false;
  // d/dzbar h^{s+n+1,s} = (s+n+1) h^{s+n,s}
  if (!(h_n1s.derivative_zbar() == BigInt(s + n + 1) * h_ns)) return false;
  // (-d/dzbar + z) h^{s+n,s} = h^{s+n,s+1}
  if (!(detail::raise_s(h_ns) == h_ns1)) return false;
  // d/dz h^{s+n,s+1} = (s+1) h^{s+n,s}
  if (!(h_ns1.derivative_z() == BigInt(s + 1) * h_ns)) return false;

  // phi relations: polynomial parts already verified above; the remaining
  // content is the normalization bookkeeping, exact after squaring.
  const BigInt fs = factorial_int(s);
  const BigInt fn = factorial_int(s + n);
  const BigInt fn1 = factorial_int(s + n + 1);
  // (d/dzbar + z/2) phi_{n+1;s} = sqrt(s+n+1) phi_{n;s}
  //   <=>  (s+n+1)^2 * s!(s+n)!  ==  (s+n+1) * s!(s+n+1)!
  const BigInt m = s + n + 1;
  if (m * m * fs * fn != m * fs * fn1) return false;
  // (-d/dz + zbar/2) phi_{n;s} = sqrt(s+n+1) phi_{n+1;s}
  //   <=>  s!(s+n+1)!  ==  (s+n+1) * s!(s+n)!
  if (fs * fn1 != m * fs * fn) return false;

  return true;
}

}  // namespace csq
