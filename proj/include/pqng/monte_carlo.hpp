#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pqng/detector.hpp"
#include "pqng/rng.hpp"

namespace pqng {

// Sample count below which a simulated run carries no statistical weight.
inline constexpr long long k_min_run_samples = 1000;

// Shot budget and ensemble layout of a simulated experimental campaign.
struct CampaignConfig {
  long long repetitions = 100000000;  // shot budget per run
  int runs = 1000;                    // ensemble size
  int sample_cutoff = 20;             // histogram bins k = 0..K-1, plus overflow
  std::uint64_t seed = 0;
};

void validate(const CampaignConfig& cfg, int m);

struct EnsembleStats {
  int m = 0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sd_x = 0.0;
  double sd_y = 0.0;
  long long n_samples = 0;
  int runs = 0;
};

// floor(repetitions * P) for the given detector; the count of heralded shots
// available to one experimental run. Signals insufficient_samples below the
// 1000-sample significance floor.
long long per_run_samples(const ExperimentParams& p, const Detector& det, const CampaignConfig& cfg);

// One simulated run: a multinomial draw of n_samples events over the K bins
// plus the overflow bin, via the conditional-binomial decomposition.
// counts.size() == state.cutoff() + 1 and the counts sum to n_samples.
std::vector<long long> draw_run(const DiagonalState& state, long long n_samples, RngStream& rng);

// (x_m, y_m) of an empirical histogram: x_m = 1 - sum_{k<=m} freq_k (the
// overflow bin therefore counts toward x_m), y_m = freq_m.
std::pair<double, double> witness_pair(const std::vector<long long>& histogram, int m);

// Ensemble means and standard deviations of (x_m, y_m) over cfg.runs
// independent simulated runs. Bitwise deterministic for fixed inputs and
// seed; each run draws from a stream derived from (seed, run index).
EnsembleStats simulate_ensemble(const ExperimentParams& p, const Detector& det, const CampaignConfig& cfg);

}  // namespace pqng
