#pragma once

#include <vector>

#include "pqng/fock_core.hpp"

namespace pqng {

// Photon-count distribution of an i-photon Fock state after a lossy channel
// of intensity transmittance zeta; entry j is the probability that j photons
// survive. Rows sum to one.
std::vector<double> loss_kernel(int photons, double zeta);

struct OracleOptions {
  int truncation = 40;           // two-mode photon-number cutoff K
  double deficit_limit = 1e-10;  // tolerated truncated TMSV mass
};

struct OracleResult {
  double herald_probability = 0.0;
  DiagonalState state;
  double tail_deficit = 0.0;  // TMSV mass beyond the truncation
};

// Brute-force evaluation of the heralded state: build the truncated joint
// photon-number distribution of the two-mode squeezed vacuum, push each mode
// through its loss kernel, and condition on the herald count. Used to
// cross-validate the closed-form path; deliberately shares none of its
// numerics with it.
OracleResult oracle_heralded(const ExperimentParams& p, int cutoff, const OracleOptions& opts = {});

}  // namespace pqng
