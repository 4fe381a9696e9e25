#pragma once

#include <cmath>
#include <cstdint>

namespace pqng {

// base^n for integer n >= 0 with the 0^0 = 1 convention. The exact handling
// of zero bases is what keeps the lossless limits free of 0/0 artifacts.
inline double ipow(double base, long long n) {
  double acc = 1.0;
  double b = base;
  for (long long e = n; e > 0; e >>= 1) {
    if (e & 1) acc *= b;
    b *= b;
  }
  return acc;
}

// C(n, k) as double. Exact 64-bit integer arithmetic up to n = 62 (C(62,31)
// still fits), log-space via lgamma beyond that.
double binom_coeff(long long n, long long k);

}  // namespace pqng
