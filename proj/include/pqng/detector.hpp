#pragma once

#include <memory>
#include <vector>

#include "pqng/fock_core.hpp"

namespace pqng {

// Herald detector: either a true photon-number-resolving detector or a
// cascade of n binary avalanche photodiodes splitting the input equally.
struct Detector {
  enum class Kind { pnr, cap };

  Kind kind = Kind::pnr;
  int n = 0;  // cascade size, CAP only

  static Detector pnr() { return {Kind::pnr, 0}; }
  static Detector cap(int n) { return {Kind::cap, n}; }
};

void validate(const Detector& det);

// w(i, m, n): probability that i incident photons trigger exactly m out of
// the n diodes of the cascade. Zero whenever m > min(i, n). Evaluated by the
// diode-occupancy chain, which computes the same quantity as the
// inclusion-exclusion formula through sums of positive terms only.
double cap_weight(int incident, int clicks, int cascade);

// Cached occupancy rows w(i, ., n) for i <= i_max. Safe for concurrent
// readers; rows for a given cascade are built at most once per size step.
class ClickWeightTable {
public:
  static std::shared_ptr<const ClickWeightTable> get(int cascade, int i_max);

  double weight(int incident, int clicks) const;
  int cascade() const { return n_; }
  int max_incident() const { return static_cast<int>(rows_.size()) - 1; }

private:
  ClickWeightTable(int cascade, int i_max);

  int n_;
  std::vector<std::vector<double>> rows_;
};

// Heralding success probability for a CAP detector: the w-weighted average
// of the PNR probabilities, truncated once the geometric tail of P_(i)
// drops below the tail limit.
double cap_success_probability(const ExperimentParams& p, const Detector& det);

// Diagonals of the CAP-heralded state: the w * P_(i) weighted average of the
// PNR states rho_(i), normalized, with the truncation remainder absorbed
// into tail_mass.
DiagonalState cap_heralded_diagonals(const ExperimentParams& p, const Detector& det, int cutoff);

struct HeraldResult {
  double probability = 0.0;
  DiagonalState state;
};

// Detector dispatch: success probability and heralded diagonals for either
// detector kind.
HeraldResult herald_state(const ExperimentParams& p, const Detector& det, int cutoff);

}  // namespace pqng
