#include "pqng/fock_core.hpp"

#include <algorithm>
#include <cmath>

#include "pqng/error.hpp"
#include "pqng/math_util.hpp"

namespace pqng {

namespace {

constexpr int k_series_term_cap = 100000;
constexpr double k_term_rel_floor = 1e-15;
constexpr double k_tail_rel_floor = 1e-14;

}  // namespace

void validate(const ExperimentParams& p) {
  require(std::isfinite(p.squeeze.lambda) && p.squeeze.lambda >= 0.0 && p.squeeze.lambda < 1.0,
          errc::invalid_argument, "lambda must lie in [0, 1)");
  require(std::isfinite(p.zeta1) && p.zeta1 >= 0.0 && p.zeta1 <= 1.0, errc::invalid_argument,
          "zeta1 must lie in [0, 1]");
  require(std::isfinite(p.zeta2) && p.zeta2 >= 0.0 && p.zeta2 <= 1.0, errc::invalid_argument,
          "zeta2 must lie in [0, 1]");
  require(p.m >= 0, errc::invalid_argument, "herald outcome m must be non-negative");
}

double series_F(int k, int m, double x) {
  require(k >= 0 && m >= 0, errc::invalid_argument, "series indices must be non-negative");
  require(x >= 0.0 && x < 1.0, errc::invalid_argument, "series argument x must lie in [0, 1)");

  const int tau = std::max(k, m);
  const int kappa = std::min(k, m);
  double term = binom_coeff(tau, kappa);  // l = tau: C(tau,m) C(tau,k), one factor is 1
  double sum = term;
  if (x == 0.0) return sum;

  for (int t = 1; t <= k_series_term_cap; ++t) {
    const double l = static_cast<double>(tau) + t;
    term *= x * (l * l) / ((l - m) * (l - k));
    sum += term;
    // Ratio of the next term to this one; it decreases monotonically toward
    // x, so once below 1 it bounds the tail geometrically.
    const double next = l + 1.0;
    const double ratio = x * (next * next) / ((next - m) * (next - k));
    if (ratio < 1.0) {
      const double tail_bound = term * ratio / (1.0 - ratio);
      if (term < k_term_rel_floor * sum && tail_bound < k_tail_rel_floor * sum) return sum;
    }
  }
  fail(errc::truncation_insufficient, "series for H(k, m, x) hit the term cap before converging");
}

double series_H(int k, int m, double x) {
  const double f = series_F(k, m, x);
  return ipow(x, std::max(k, m)) * f;
}

double success_probability(const ExperimentParams& p) {
  validate(p);
  const double u = p.squeeze.lambda2();
  const double denom = 1.0 - u * (1.0 - p.zeta1);
  return (1.0 - u) * ipow(u * p.zeta1, p.m) / ipow(denom, p.m + 1);
}

namespace detail {

DiagonalState heralded_diagonal_rows(const ExperimentParams& p, int cutoff) {
  validate(p);
  require(cutoff >= 1, errc::invalid_argument, "cutoff must be positive");
  const double u = p.squeeze.lambda2();
  if (p.m > 0 && u * p.zeta1 == 0.0) {
    fail(errc::degenerate_herald,
         "herald probability is exactly zero (no squeezing or fully lossy heralding mode)");
  }

  const double loss1 = 1.0 - p.zeta1;
  const double loss2 = 1.0 - p.zeta2;
  const double x = u * loss1 * loss2;
  const double herald_pow = ipow(1.0 - u * loss1, p.m + 1);

  DiagonalState state;
  state.probs.resize(cutoff);
  double sum = 0.0;
  for (int k = 0; k < cutoff; ++k) {
    const int tau = std::max(k, p.m);
    const double value = herald_pow * ipow(p.zeta2, k) * ipow(u, tau - p.m) *
                         ipow(loss1, tau - p.m) * ipow(loss2, tau - k) * series_F(k, p.m, x);
    state.probs[k] = value;
    sum += value;
  }
  require(sum <= 1.0 + 1e-9, errc::internal, "diagonal elements exceed unit mass");
  state.tail_mass = std::max(0.0, 1.0 - sum);
  return state;
}

}  // namespace detail

DiagonalState heralded_diagonals(const ExperimentParams& p, int cutoff) {
  require(cutoff >= p.m + 1, errc::invalid_argument, "cutoff must be at least m + 1");
  return detail::heralded_diagonal_rows(p, cutoff);
}

}  // namespace pqng
