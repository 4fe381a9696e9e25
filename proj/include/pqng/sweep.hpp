#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pqng/certification.hpp"

namespace pqng {

// Probability-of-success floor below which a case is statistically
// insignificant and excluded from the maps.
inline constexpr double k_significance_floor = 1e-5;

// Default squeezing grid: 0..10 dB in 0.25 dB steps (41 candidates).
std::vector<double> default_r_db_grid();

struct SweepGrid {
  std::vector<double> zeta1_values;  // heralding-mode transmittances
  std::vector<double> zeta2_values;  // signal-mode transmittances
  std::vector<double> r_db_grid;     // squeezing candidates, dB
  int m = 3;
  Detector detector = Detector::pnr();
  CampaignConfig campaign;
  int threads = 0;  // 0 = hardware concurrency
};

enum class TileStatus { certified, uncertifiable, insignificant };

const char* to_string(TileStatus status);

struct Tile {
  double zeta1 = 1.0;
  double zeta2 = 1.0;
  TileStatus status = TileStatus::insignificant;
  double best_r_db = 0.0;        // valid when certified
  double best_probability = 0.0; // valid when certified
  double fidelity = 0.0;         // analytic <m|rho|m> at best_r, when certified
};

struct TileMap {
  std::vector<double> zeta1_values;
  std::vector<double> zeta2_values;
  std::vector<Tile> tiles;  // row-major: index = i1 * n2 + i2

  const Tile& at(int i1, int i2) const;
};

// Grid search over the squeezing candidates at one loss pair: candidates
// below the significance floor or the per-run sample floor are skipped,
// the rest are simulated and certified, and the certified candidate with
// the largest success probability wins. tile_seed scopes the random streams
// of this tile; the r-candidate index is folded in per candidate.
Tile optimize_over_squeezing(double zeta1, double zeta2, int m, const Detector& det,
                             const CampaignConfig& campaign, const std::vector<double>& r_db_grid,
                             const ThresholdCurve& curve, std::uint64_t tile_seed);

// One tile per (zeta1, zeta2) pair. Tiles are independent work items and
// run on a small thread pool; per-tile seed derivation keeps the output
// bitwise identical regardless of scheduling.
TileMap run_sweep(const SweepGrid& grid, const ThresholdCurve& curve);

struct FeasibilityContour {
  int m = 0;
  Detector detector = Detector::pnr();
  // (heralding loss, maximal certified characterization loss); columns with
  // no certified tile contribute no entry.
  std::vector<std::pair<double, double>> boundary;
};

FeasibilityContour extract_thresholds(const TileMap& map, int m, const Detector& det);

// Number of tiles that break up-closedness of the certified set: tiles not
// certified although some certified tile has no larger transmittance in
// either mode. MC noise at the boundary is flagged this way, not hidden.
int count_monotonicity_exceptions(const TileMap& map);

// Number of adjacent contour entries whose tolerable characterization loss
// increases with heralding loss (flagged, not enforced).
int count_contour_violations(const FeasibilityContour& contour);

// CSV serializations; the byte-level contract for golden-file tests and the
// figure emitter. Tiles: loss1,loss2,status,best_r_db,best_probability,
// fidelity (empty numeric fields for non-certified tiles). Contour:
// loss1,max_loss2.
std::string tiles_to_csv(const TileMap& map);
std::string contour_to_csv(const FeasibilityContour& contour);

}  // namespace pqng
