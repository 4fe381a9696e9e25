#include "pqng/monte_carlo.hpp"

#include <cmath>

#include "pqng/error.hpp"

namespace pqng {

namespace {

// Stream tag separating ensemble runs from other consumers of the seed.
constexpr std::uint64_t k_run_stream_tag = 0x72756e73ull;  // "runs"

double herald_probability(const ExperimentParams& p, const Detector& det) {
  validate(det);
  return det.kind == Detector::Kind::pnr ? success_probability(p)
                                         : cap_success_probability(p, det);
}

}  // namespace

void validate(const CampaignConfig& cfg, int m) {
  require(cfg.repetitions >= 1, errc::invalid_argument, "repetitions must be at least 1");
  require(cfg.runs >= 2, errc::invalid_argument, "ensemble needs at least 2 runs");
  require(cfg.sample_cutoff >= m + 2, errc::invalid_argument,
          "sample cutoff must be at least m + 2");
}

long long per_run_samples(const ExperimentParams& p, const Detector& det,
                          const CampaignConfig& cfg) {
  validate(p);
  validate(cfg, p.m);
  const double probability = herald_probability(p, det);
  const long long count =
      static_cast<long long>(std::floor(static_cast<double>(cfg.repetitions) * probability));
  require(count >= k_min_run_samples, errc::insufficient_samples,
          "per-run sample count below the 1000-sample significance floor");
  return count;
}

std::vector<long long> draw_run(const DiagonalState& state, long long n_samples, RngStream& rng) {
  require(n_samples >= 1, errc::invalid_argument, "sample count must be positive");
  double total = 0.0;
  for (double p : state.probs) {
    require(p >= 0.0, errc::invalid_argument, "state has a negative diagonal");
    total += p;
  }
  require(state.tail_mass >= 0.0 && std::abs(total + state.tail_mass - 1.0) <= 1e-9,
          errc::invalid_argument, "state is not normalized");

  const int bins = state.cutoff();
  std::vector<long long> counts(bins + 1, 0);
  long long remaining = n_samples;
  double mass_left = 1.0;
  for (int k = 0; k < bins && remaining > 0; ++k) {
    if (mass_left <= 0.0) break;
    const double conditional = std::min(1.0, std::max(0.0, state.probs[k] / mass_left));
    if (conditional >= 1.0) {
      counts[k] = remaining;
      remaining = 0;
      break;
    }
    counts[k] = rng.binomial(remaining, conditional);
    remaining -= counts[k];
    mass_left -= state.probs[k];
  }
  counts[bins] = remaining;  // overflow bin
  return counts;
}

std::pair<double, double> witness_pair(const std::vector<long long>& histogram, int m) {
  require(static_cast<int>(histogram.size()) >= 2, errc::invalid_argument, "histogram too small");
  // histogram carries K regular bins plus the overflow bin.
  require(m >= 0 && m < static_cast<int>(histogram.size()) - 1, errc::invalid_argument,
          "witness order m must lie below the histogram cutoff");
  long long total = 0;
  for (long long c : histogram) total += c;
  require(total > 0, errc::invalid_argument, "histogram is empty");
  long long below_or_at = 0;
  for (int k = 0; k <= m; ++k) below_or_at += histogram[k];
  const double x = 1.0 - static_cast<double>(below_or_at) / static_cast<double>(total);
  const double y = static_cast<double>(histogram[m]) / static_cast<double>(total);
  return {x, y};
}

EnsembleStats simulate_ensemble(const ExperimentParams& p, const Detector& det,
                                const CampaignConfig& cfg) {
  const long long n_samples = per_run_samples(p, det, cfg);
  const HeraldResult herald = herald_state(p, det, cfg.sample_cutoff);

  std::vector<double> xs(cfg.runs), ys(cfg.runs);
  for (int run = 0; run < cfg.runs; ++run) {
    RngStream rng(derive_stream(cfg.seed, {k_run_stream_tag, static_cast<std::uint64_t>(run)}));
    const std::vector<long long> histogram = draw_run(herald.state, n_samples, rng);
    const auto [x, y] = witness_pair(histogram, p.m);
    xs[run] = x;
    ys[run] = y;
  }

  EnsembleStats stats;
  stats.m = p.m;
  stats.n_samples = n_samples;
  stats.runs = cfg.runs;
  double sum_x = 0.0, sum_y = 0.0;
  for (int run = 0; run < cfg.runs; ++run) {
    sum_x += xs[run];
    sum_y += ys[run];
  }
  stats.mean_x = sum_x / cfg.runs;
  stats.mean_y = sum_y / cfg.runs;
  double ss_x = 0.0, ss_y = 0.0;
  for (int run = 0; run < cfg.runs; ++run) {
    ss_x += (xs[run] - stats.mean_x) * (xs[run] - stats.mean_x);
    ss_y += (ys[run] - stats.mean_y) * (ys[run] - stats.mean_y);
  }
  stats.sd_x = std::sqrt(ss_x / (cfg.runs - 1));
  stats.sd_y = std::sqrt(ss_y / (cfg.runs - 1));
  return stats;
}

}  // namespace pqng
