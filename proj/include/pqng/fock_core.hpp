#pragma once

#include <vector>

#include "pqng/squeeze.hpp"

namespace pqng {

struct ExperimentParams {
  Squeeze squeeze;
  double zeta1 = 1.0;  // intensity transmittance of the heralding mode
  double zeta2 = 1.0;  // intensity transmittance of the signal mode
  int m = 0;           // heralded photon count
};

void validate(const ExperimentParams& p);

// Truncated Fock-basis diagonal of a (normalized) state, with the mass at
// k >= cutoff tracked explicitly instead of being renormalized away.
struct DiagonalState {
  std::vector<double> probs;
  double tail_mass = 0.0;

  int cutoff() const { return static_cast<int>(probs.size()); }
};

// H(k, m, x) = sum_{l >= max(k,m)} C(l,m) C(l,k) x^l, for 0 <= x < 1.
// Symmetric in (k, m). Terms are summed until both the current term and a
// geometric tail bound drop below their relative floors.
double series_H(int k, int m, double x);

// Regrouped factor F with H(k, m, x) = x^max(k,m) * series_F(k, m, x).
// Finite at x = 0, which is what the divergence-safe diagonal evaluation
// leans on in the lossless limits.
double series_F(int k, int m, double x);

// Probability of detecting exactly m photons in the heralding mode:
// (1 - l^2) (l^2 z1)^m / [1 - l^2 (1 - z1)]^{m+1}.
double success_probability(const ExperimentParams& p);

// Normalized diagonal <k|rho_(m)|k> of the heralded state for a true PNR
// heralding detector, evaluated through the regrouped expression so that
// zeta1 -> 1, zeta2 -> 1 and lambda -> 0 are exact. Requires cutoff >= m+1.
DiagonalState heralded_diagonals(const ExperimentParams& p, int cutoff);

namespace detail {
// Same evaluation without the cutoff >= m+1 guard; the CAP average needs
// shallow rows of rho_(i) for herald outcomes i far above the cutoff.
DiagonalState heralded_diagonal_rows(const ExperimentParams& p, int cutoff);
}  // namespace detail

}  // namespace pqng
