#include "pqng/detector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "pqng/error.hpp"
#include "pqng/math_util.hpp"

namespace pqng {

namespace {

// One step of the diode-occupancy chain: a new photon lands on an already
// triggered diode with probability m/n, on a fresh one otherwise. After i
// photons row[m] equals w(i, m, n).
std::vector<double> occupancy_step(const std::vector<double>& row, int incident, int n) {
  const int width = std::min(incident + 1, n) + 1;
  std::vector<double> next(width, 0.0);
  for (int m = 0; m < static_cast<int>(row.size()); ++m) {
    const double p = row[m];
    if (p == 0.0) continue;
    next[m] += p * (static_cast<double>(m) / n);
    if (m + 1 < width) next[m + 1] += p * (static_cast<double>(n - m) / n);
  }
  return next;
}

// P_(i) is exactly geometric: (1-u)/D * q^i with D = 1 - u(1-z1) and
// q = u z1 / D < 1; the closed-form tail drives the series truncation.
struct HeraldGeometry {
  double prefactor = 0.0;
  double q = 0.0;

  double tail_beyond(int i_max) const {
    if (q == 0.0) return 0.0;
    return prefactor * std::pow(q, i_max + 1) / (1.0 - q);
  }
};

HeraldGeometry herald_geometry(const ExperimentParams& p) {
  const double u = p.squeeze.lambda2();
  const double denom = 1.0 - u * (1.0 - p.zeta1);
  return {(1.0 - u) / denom, u * p.zeta1 / denom};
}

constexpr double k_cap_tail_limit = 1e-12;
constexpr int k_cap_i_max_cap = 500000;

int adaptive_i_max(const ExperimentParams& p, const Detector& det) {
  // Floor keeps the heavy-tailed m ~ n regime covered; capped so that
  // PNR-proxy cascades (n in the thousands) do not blow the table up.
  int i_max = std::max({50, std::min(5 * det.n, 1000), p.m + 1});
  const HeraldGeometry geo = herald_geometry(p);
  if (geo.q > 0.0 && geo.tail_beyond(i_max) > k_cap_tail_limit) {
    const double needed =
        std::log(k_cap_tail_limit * (1.0 - geo.q) / geo.prefactor) / std::log(geo.q);
    i_max = static_cast<int>(std::ceil(needed)) + 1;
    require(i_max <= k_cap_i_max_cap, errc::truncation_insufficient,
            "CAP series cutoff grows beyond the supported range for this squeezing");
  }
  return i_max;
}

}  // namespace

void validate(const Detector& det) {
  if (det.kind == Detector::Kind::cap) {
    require(det.n >= 1, errc::invalid_argument, "CAP detector needs at least one diode");
  }
}

double cap_weight(int incident, int clicks, int cascade) {
  require(cascade >= 1, errc::invalid_argument, "cascade size must be positive");
  require(incident >= 0, errc::invalid_argument, "incident photon count must be non-negative");
  require(clicks >= 0 && clicks <= cascade, errc::invalid_argument,
          "click count must lie in [0, n]");
  if (clicks > incident) return 0.0;
  std::vector<double> row{1.0};
  for (int i = 0; i < incident; ++i) row = occupancy_step(row, i, cascade);
  return clicks < static_cast<int>(row.size()) ? row[clicks] : 0.0;
}

ClickWeightTable::ClickWeightTable(int cascade, int i_max) : n_(cascade) {
  rows_.resize(i_max + 1);
  rows_[0] = {1.0};
  for (int i = 0; i < i_max; ++i) rows_[i + 1] = occupancy_step(rows_[i], i, cascade);
}

double ClickWeightTable::weight(int incident, int clicks) const {
  if (incident < 0 || incident >= static_cast<int>(rows_.size()) || clicks < 0) return 0.0;
  const std::vector<double>& row = rows_[incident];
  return clicks < static_cast<int>(row.size()) ? row[clicks] : 0.0;
}

std::shared_ptr<const ClickWeightTable> ClickWeightTable::get(int cascade, int i_max) {
  require(cascade >= 1, errc::invalid_argument, "cascade size must be positive");
  require(i_max >= 0, errc::invalid_argument, "table extent must be non-negative");
  // Grow-only cache per cascade size; sizes are quantized so that sweeps with
  // slowly varying cutoffs share one table instead of near-duplicates.
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const ClickWeightTable>> cache;
  const int quantized = ((i_max + 63) / 64) * 64;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(cascade);
  if (it != cache.end() && it->second->max_incident() >= i_max) return it->second;
  auto table = std::shared_ptr<const ClickWeightTable>(new ClickWeightTable(cascade, quantized));
  cache[cascade] = table;
  return table;
}

namespace {

struct CapHerald {
  double probability = 0.0;
  DiagonalState state;
};

CapHerald cap_herald_internal(const ExperimentParams& p, const Detector& det, int cutoff,
                              bool with_state) {
  validate(p);
  validate(det);
  require(det.kind == Detector::Kind::cap, errc::invalid_argument, "detector is not a cascade");
  require(p.m <= det.n, errc::invalid_argument, "click outcome m cannot exceed the cascade size");

  const HeraldGeometry geo = herald_geometry(p);
  const int i_max = adaptive_i_max(p, det);
  const auto table = ClickWeightTable::get(det.n, i_max);

  CapHerald result;
  std::vector<double> acc;
  if (with_state) acc.assign(cutoff, 0.0);

  ExperimentParams component = p;
  double herald_prob_i = geo.prefactor;  // P_(i), advanced geometrically
  for (int i = 0; i <= i_max; ++i, herald_prob_i *= geo.q) {
    const double contrib = table->weight(i, p.m) * herald_prob_i;
    if (contrib == 0.0) continue;
    result.probability += contrib;
    if (with_state) {
      component.m = i;
      const DiagonalState rho_i = detail::heralded_diagonal_rows(component, cutoff);
      for (int k = 0; k < cutoff; ++k) acc[k] += contrib * rho_i.probs[k];
    }
  }

  if (with_state) {
    if (result.probability == 0.0) {
      fail(errc::degenerate_herald, "CAP herald probability is exactly zero");
    }
    result.state.probs.resize(cutoff);
    double sum = 0.0;
    for (int k = 0; k < cutoff; ++k) {
      result.state.probs[k] = acc[k] / result.probability;
      sum += result.state.probs[k];
    }
    result.state.tail_mass = std::max(0.0, 1.0 - sum);
  }
  return result;
}

}  // namespace

double cap_success_probability(const ExperimentParams& p, const Detector& det) {
  return cap_herald_internal(p, det, 1, false).probability;
}

DiagonalState cap_heralded_diagonals(const ExperimentParams& p, const Detector& det, int cutoff) {
  require(cutoff >= p.m + 1, errc::invalid_argument, "cutoff must be at least m + 1");
  return cap_herald_internal(p, det, cutoff, true).state;
}

HeraldResult herald_state(const ExperimentParams& p, const Detector& det, int cutoff) {
  validate(det);
  if (det.kind == Detector::Kind::pnr) {
    return {success_probability(p), heralded_diagonals(p, cutoff)};
  }
  require(cutoff >= p.m + 1, errc::invalid_argument, "cutoff must be at least m + 1");
  CapHerald cap = cap_herald_internal(p, det, cutoff, true);
  return {cap.probability, std::move(cap.state)};
}

}  // namespace pqng
