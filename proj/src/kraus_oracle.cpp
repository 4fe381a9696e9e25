#include "pqng/kraus_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "pqng/error.hpp"

namespace pqng {

std::vector<double> loss_kernel(int photons, double zeta) {
  require(photons >= 0, errc::invalid_argument, "photon count must be non-negative");
  require(std::isfinite(zeta) && zeta >= 0.0 && zeta <= 1.0, errc::invalid_argument,
          "transmittance must lie in [0, 1]");
  // out[j] = C(i,j) zeta^j (1-zeta)^{i-j}; extended precision keeps the row
  // sum within an ulp of one even at i = 60.
  std::vector<double> out(photons + 1);
  long double coeff = 1.0L;  // running C(i, j)
  const long double z = zeta;
  const long double w = 1.0L - z;
  for (int j = 0; j <= photons; ++j) {
    out[j] = static_cast<double>(coeff * powl(z, j) * powl(w, photons - j));
    coeff = coeff * (photons - j) / (j + 1);
  }
  return out;
}

OracleResult oracle_heralded(const ExperimentParams& p, int cutoff, const OracleOptions& opts) {
  validate(p);
  require(cutoff >= 1, errc::invalid_argument, "cutoff must be positive");
  require(opts.truncation >= p.m + 1, errc::invalid_argument,
          "oracle truncation must exceed the herald outcome m");

  const double u = p.squeeze.lambda2();
  const int trunc = opts.truncation;

  OracleResult result;
  result.tail_deficit = std::pow(u, trunc);
  require(result.tail_deficit <= opts.deficit_limit, errc::truncation_insufficient,
          "oracle truncation too small for this squeezing (tail deficit above limit)");

  // Joint diagonal of the TMSV photon-number statistics: P(i, i) = (1-u) u^i.
  std::vector<double> joint(trunc);
  double weight = 1.0 - u;
  for (int i = 0; i < trunc; ++i) {
    joint[i] = weight;
    weight *= u;
  }

  double herald_probability = 0.0;
  std::vector<double> signal(cutoff, 0.0);
  for (int i = 0; i < trunc; ++i) {
    if (joint[i] == 0.0 || i < p.m) continue;
    const std::vector<double> herald_out = loss_kernel(i, p.zeta1);
    const double herald_weight = joint[i] * herald_out[p.m];
    if (herald_weight == 0.0) continue;
    herald_probability += herald_weight;
    const std::vector<double> signal_out = loss_kernel(i, p.zeta2);
    const int top = std::min(i, cutoff - 1);
    for (int b = 0; b <= top; ++b) signal[b] += herald_weight * signal_out[b];
  }

  if (herald_probability == 0.0) {
    fail(errc::degenerate_herald, "oracle herald probability is exactly zero");
  }

  result.herald_probability = herald_probability;
  result.state.probs.resize(cutoff);
  double sum = 0.0;
  for (int b = 0; b < cutoff; ++b) {
    result.state.probs[b] = signal[b] / herald_probability;
    sum += result.state.probs[b];
  }
  result.state.tail_mass = std::max(0.0, 1.0 - sum);
  return result;
}

}  // namespace pqng
