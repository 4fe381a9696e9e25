#include "pqng/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "pqng/error.hpp"
#include "pqng/rng.hpp"

namespace pqng {

namespace {

constexpr std::uint64_t k_tile_stream_tag = 0x74696c65ull;  // "tile"
constexpr std::uint64_t k_candidate_stream_tag = 0x72636e64ull;

void append_field(std::string& out, const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  out += buffer;
}

}  // namespace

const char* to_string(TileStatus status) {
  switch (status) {
    case TileStatus::certified: return "certified";
    case TileStatus::uncertifiable: return "uncertifiable";
    case TileStatus::insignificant: return "insignificant";
  }
  return "unknown";
}

std::vector<double> default_r_db_grid() {
  std::vector<double> grid(41);
  for (int i = 0; i < 41; ++i) grid[i] = 0.25 * i;
  return grid;
}

const Tile& TileMap::at(int i1, int i2) const {
  return tiles[static_cast<size_t>(i1) * zeta2_values.size() + i2];
}

Tile optimize_over_squeezing(double zeta1, double zeta2, int m, const Detector& det,
                             const CampaignConfig& campaign, const std::vector<double>& r_db_grid,
                             const ThresholdCurve& curve, std::uint64_t tile_seed) {
  require(curve.m == m, errc::invalid_argument, "threshold curve order does not match target m");
  require(!r_db_grid.empty(), errc::invalid_argument, "squeezing grid is empty");

  Tile tile;
  tile.zeta1 = zeta1;
  tile.zeta2 = zeta2;

  double max_probability = 0.0;
  bool have_best = false;

  for (size_t ri = 0; ri < r_db_grid.size(); ++ri) {
    ExperimentParams params;
    params.squeeze = Squeeze::from_db(r_db_grid[ri]);
    params.zeta1 = zeta1;
    params.zeta2 = zeta2;
    params.m = m;

    const double probability = det.kind == Detector::Kind::pnr
                                   ? success_probability(params)
                                   : cap_success_probability(params, det);
    max_probability = std::max(max_probability, probability);
    if (probability < k_significance_floor) continue;
    const long long samples = static_cast<long long>(
        std::floor(static_cast<double>(campaign.repetitions) * probability));
    if (samples < k_min_run_samples) continue;  // no statistical weight at this budget
    if (have_best && probability <= tile.best_probability) continue;

    CampaignConfig candidate_campaign = campaign;
    candidate_campaign.seed =
        derive_stream(tile_seed, {k_candidate_stream_tag, static_cast<std::uint64_t>(ri)});
    const EnsembleStats stats = simulate_ensemble(params, det, candidate_campaign);
    const CertificationVerdict verdict = certify(stats, curve);
    if (!verdict.pass) continue;

    have_best = true;
    tile.best_r_db = r_db_grid[ri];
    tile.best_probability = probability;
    const DiagonalState analytic = herald_state(params, det, campaign.sample_cutoff).state;
    tile.fidelity = analytic.probs[m];
  }

  if (have_best) {
    tile.status = TileStatus::certified;
  } else if (max_probability < k_significance_floor) {
    tile.status = TileStatus::insignificant;
  } else {
    tile.status = TileStatus::uncertifiable;
  }
  return tile;
}

TileMap run_sweep(const SweepGrid& grid, const ThresholdCurve& curve) {
  require(!grid.zeta1_values.empty() && !grid.zeta2_values.empty(), errc::invalid_argument,
          "loss grids must be non-empty");
  require(!grid.r_db_grid.empty(), errc::invalid_argument, "squeezing grid must be non-empty");
  for (double z : grid.zeta1_values) {
    require(z >= 0.0 && z <= 1.0, errc::invalid_argument, "zeta1 grid value outside [0, 1]");
  }
  for (double z : grid.zeta2_values) {
    require(z >= 0.0 && z <= 1.0, errc::invalid_argument, "zeta2 grid value outside [0, 1]");
  }
  for (double db : grid.r_db_grid) {
    require(db >= 0.0 && db <= 10.0 + 1e-12, errc::invalid_argument,
            "squeezing grid must stay within [0, 10] dB");
  }
  validate(grid.campaign, grid.m);
  validate(grid.detector);

  TileMap map;
  map.zeta1_values = grid.zeta1_values;
  map.zeta2_values = grid.zeta2_values;
  const size_t n1 = grid.zeta1_values.size();
  const size_t n2 = grid.zeta2_values.size();
  map.tiles.resize(n1 * n2);

  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const unsigned thread_count =
      grid.threads > 0 ? static_cast<unsigned>(grid.threads)
                       : std::min<unsigned>(hardware, static_cast<unsigned>(map.tiles.size()));

  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t index = next.fetch_add(1);
      if (index >= map.tiles.size()) return;
      const size_t i1 = index / n2;
      const size_t i2 = index % n2;
      try {
        const std::uint64_t tile_seed = derive_stream(
            grid.campaign.seed,
            {k_tile_stream_tag, static_cast<std::uint64_t>(i1), static_cast<std::uint64_t>(i2)});
        map.tiles[index] =
            optimize_over_squeezing(grid.zeta1_values[i1], grid.zeta2_values[i2], grid.m,
                                    grid.detector, grid.campaign, grid.r_db_grid, curve, tile_seed);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(map.tiles.size());
        return;
      }
    }
  };

  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return map;
}

FeasibilityContour extract_thresholds(const TileMap& map, int m, const Detector& det) {
  FeasibilityContour contour;
  contour.m = m;
  contour.detector = det;
  for (size_t i1 = 0; i1 < map.zeta1_values.size(); ++i1) {
    bool any = false;
    double min_zeta2 = 1.0;
    for (size_t i2 = 0; i2 < map.zeta2_values.size(); ++i2) {
      const Tile& tile = map.at(static_cast<int>(i1), static_cast<int>(i2));
      if (tile.status != TileStatus::certified) continue;
      // Exclusion rule: certified tiles always sit above the floor.
      if (tile.best_probability < k_significance_floor) continue;
      any = true;
      min_zeta2 = std::min(min_zeta2, tile.zeta2);
    }
    if (any) contour.boundary.emplace_back(1.0 - map.zeta1_values[i1], 1.0 - min_zeta2);
  }
  return contour;
}

int count_monotonicity_exceptions(const TileMap& map) {
  int exceptions = 0;
  for (const Tile& tile : map.tiles) {
    if (tile.status == TileStatus::certified) continue;
    for (const Tile& other : map.tiles) {
      if (other.status != TileStatus::certified) continue;
      if (other.zeta1 <= tile.zeta1 && other.zeta2 <= tile.zeta2) {
        ++exceptions;
        break;
      }
    }
  }
  return exceptions;
}

int count_contour_violations(const FeasibilityContour& contour) {
  int violations = 0;
  for (size_t i = 1; i < contour.boundary.size(); ++i) {
    if (contour.boundary[i].first > contour.boundary[i - 1].first &&
        contour.boundary[i].second > contour.boundary[i - 1].second + 1e-12) {
      ++violations;
    }
  }
  return violations;
}

std::string tiles_to_csv(const TileMap& map) {
  std::string out = "loss1,loss2,status,best_r_db,best_probability,fidelity\n";
  for (size_t i1 = 0; i1 < map.zeta1_values.size(); ++i1) {
    for (size_t i2 = 0; i2 < map.zeta2_values.size(); ++i2) {
      const Tile& tile = map.at(static_cast<int>(i1), static_cast<int>(i2));
      append_field(out, "%.6g", 1.0 - tile.zeta1);
      out += ',';
      append_field(out, "%.6g", 1.0 - tile.zeta2);
      out += ',';
      out += to_string(tile.status);
      if (tile.status == TileStatus::certified) {
        out += ',';
        append_field(out, "%.6g", tile.best_r_db);
        out += ',';
        append_field(out, "%.10g", tile.best_probability);
        out += ',';
        append_field(out, "%.10g", tile.fidelity);
      } else {
        out += ",,,";
      }
      out += '\n';
    }
  }
  return out;
}

std::string contour_to_csv(const FeasibilityContour& contour) {
  std::string out = "loss1,max_loss2\n";
  for (const auto& [loss1, max_loss2] : contour.boundary) {
    append_field(out, "%.6g", loss1);
    out += ',';
    append_field(out, "%.6g", max_loss2);
    out += '\n';
  }
  return out;
}

}  // namespace pqng
