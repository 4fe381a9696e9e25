#include "pqng/math_util.hpp"

namespace pqng {

double binom_coeff(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (k == 0 || k == n) return 1.0;
  if (k > n - k) k = n - k;
  if (n <= 62) {
    unsigned __int128 acc = 1;
    for (long long j = 1; j <= k; ++j) {
      acc = acc * static_cast<unsigned long long>(n - k + j);
      acc /= static_cast<unsigned long long>(j);  // exact: acc is C(n-k+j, j)
    }
    return static_cast<double>(static_cast<unsigned long long>(acc));
  }
  const double ln = std::lgamma(static_cast<double>(n + 1)) -
                    std::lgamma(static_cast<double>(k + 1)) -
                    std::lgamma(static_cast<double>(n - k + 1));
  return std::exp(ln);
}

}  // namespace pqng
