#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace csq {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial_int(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

inline BigInt binomial_int(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt b = 1;
  for (unsigned j = 1; j <= k; ++j) {
    b *= n - k + j;
    b /= j;
  }
  return b;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }
inline double to_double(const BigRat& v) { return v.convert_to<double>(); }

}  // namespace csq
