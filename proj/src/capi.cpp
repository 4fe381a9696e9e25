#include "pqng.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "pqng/certification.hpp"
#include "pqng/detector.hpp"
#include "pqng/error.hpp"
#include "pqng/kraus_oracle.hpp"
#include "pqng/monte_carlo.hpp"
#include "pqng/sweep.hpp"

struct pqng_curve {
  pqng::ThresholdCurve curve;
};

namespace {

thread_local std::string t_last_error;

pqng_status map_errc(pqng::errc code) {
  switch (code) {
    case pqng::errc::invalid_argument: return PQNG_ERR_INVALID_ARGUMENT;
    case pqng::errc::degenerate_herald: return PQNG_ERR_DEGENERATE_HERALD;
    case pqng::errc::truncation_insufficient: return PQNG_ERR_TRUNCATION;
    case pqng::errc::insufficient_samples: return PQNG_ERR_INSUFFICIENT_SAMPLES;
    case pqng::errc::parse_error: return PQNG_ERR_PARSE;
    case pqng::errc::io_error: return PQNG_ERR_IO;
    case pqng::errc::internal: return PQNG_ERR_INTERNAL;
  }
  return PQNG_ERR_INTERNAL;
}

template <typename Fn>
pqng_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return PQNG_OK;
  } catch (const pqng::Error& e) {
    t_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return PQNG_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return PQNG_ERR_INTERNAL;
  }
}

void require_c(bool condition, const char* what) {
  pqng::require(condition, pqng::errc::invalid_argument, what);
}

pqng::ExperimentParams to_params(const pqng_params* params) {
  require_c(params != nullptr, "params must not be null");
  pqng::ExperimentParams p;
  p.squeeze.rate = params->squeeze.rate;
  p.squeeze.lambda = params->squeeze.lambda;
  p.squeeze.db = params->squeeze.db;
  p.zeta1 = params->zeta1;
  p.zeta2 = params->zeta2;
  p.m = params->m;
  return p;
}

pqng::Detector to_detector(const pqng_detector* detector) {
  require_c(detector != nullptr, "detector must not be null");
  if (detector->kind == PQNG_DETECTOR_PNR) return pqng::Detector::pnr();
  require_c(detector->kind == PQNG_DETECTOR_CAP, "unknown detector kind");
  return pqng::Detector::cap(detector->n);
}

pqng::CampaignConfig to_campaign(const pqng_campaign* campaign) {
  require_c(campaign != nullptr, "campaign must not be null");
  pqng::CampaignConfig cfg;
  cfg.repetitions = campaign->repetitions;
  cfg.runs = campaign->runs;
  cfg.sample_cutoff = campaign->sample_cutoff;
  cfg.seed = campaign->seed;
  return cfg;
}

void fill_squeeze(const pqng::Squeeze& s, pqng_squeeze* out) {
  out->rate = s.rate;
  out->lambda = s.lambda;
  out->db = s.db;
}

void fill_stats(const pqng::EnsembleStats& stats, pqng_ensemble_stats* out) {
  out->m = stats.m;
  out->mean_x = stats.mean_x;
  out->mean_y = stats.mean_y;
  out->sd_x = stats.sd_x;
  out->sd_y = stats.sd_y;
  out->n_samples = stats.n_samples;
  out->runs = stats.runs;
}

pqng::EnsembleStats to_stats(const pqng_ensemble_stats* stats) {
  require_c(stats != nullptr, "stats must not be null");
  pqng::EnsembleStats s;
  s.m = stats->m;
  s.mean_x = stats->mean_x;
  s.mean_y = stats->mean_y;
  s.sd_x = stats->sd_x;
  s.sd_y = stats->sd_y;
  s.n_samples = stats->n_samples;
  s.runs = stats->runs;
  return s;
}

pqng::TileMap tilemap_from_c(const pqng_tile* tiles, int n_loss1, int n_loss2) {
  require_c(tiles != nullptr, "tiles must not be null");
  require_c(n_loss1 >= 1 && n_loss2 >= 1, "tile grid dimensions must be positive");
  pqng::TileMap map;
  map.zeta1_values.resize(n_loss1);
  map.zeta2_values.resize(n_loss2);
  for (int i1 = 0; i1 < n_loss1; ++i1) {
    map.zeta1_values[i1] = 1.0 - tiles[static_cast<size_t>(i1) * n_loss2].loss1;
  }
  for (int i2 = 0; i2 < n_loss2; ++i2) map.zeta2_values[i2] = 1.0 - tiles[i2].loss2;
  map.tiles.resize(static_cast<size_t>(n_loss1) * n_loss2);
  for (size_t i = 0; i < map.tiles.size(); ++i) {
    pqng::Tile& t = map.tiles[i];
    t.zeta1 = 1.0 - tiles[i].loss1;
    t.zeta2 = 1.0 - tiles[i].loss2;
    t.status = tiles[i].status == PQNG_TILE_CERTIFIED      ? pqng::TileStatus::certified
               : tiles[i].status == PQNG_TILE_UNCERTIFIABLE ? pqng::TileStatus::uncertifiable
                                                            : pqng::TileStatus::insignificant;
    t.best_r_db = tiles[i].best_r_db;
    t.best_probability = tiles[i].best_probability;
    t.fidelity = tiles[i].fidelity;
  }
  return map;
}

char* copy_to_c_string(const std::string& text) {
  char* out = new (std::nothrow) char[text.size() + 1];
  pqng::require(out != nullptr, pqng::errc::internal, "allocation failure");
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* pqng_version(void) { return PQNG_VERSION_STRING; }

const char* pqng_status_name(pqng_status status) {
  switch (status) {
    case PQNG_OK: return "ok";
    case PQNG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PQNG_ERR_DEGENERATE_HERALD: return "degenerate herald";
    case PQNG_ERR_TRUNCATION: return "insufficient truncation";
    case PQNG_ERR_INSUFFICIENT_SAMPLES: return "insufficient samples";
    case PQNG_ERR_PARSE: return "parse error";
    case PQNG_ERR_IO: return "io error";
    case PQNG_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* pqng_last_error(void) { return t_last_error.c_str(); }

pqng_status pqng_squeeze_from_db(double db, pqng_squeeze* out) {
  return guarded([&] {
    require_c(out != nullptr, "out must not be null");
    fill_squeeze(pqng::Squeeze::from_db(db), out);
  });
}

pqng_status pqng_squeeze_from_lambda2(double lambda2, pqng_squeeze* out) {
  return guarded([&] {
    require_c(out != nullptr, "out must not be null");
    fill_squeeze(pqng::Squeeze::from_lambda2(lambda2), out);
  });
}

pqng_status pqng_herald(const pqng_params* params, const pqng_detector* detector, int cutoff,
                        double* probs, double* tail_mass, double* success_probability) {
  return guarded([&] {
    require_c(probs != nullptr && tail_mass != nullptr && success_probability != nullptr,
              "output pointers must not be null");
    const pqng::HeraldResult result =
        pqng::herald_state(to_params(params), to_detector(detector), cutoff);
    for (int k = 0; k < cutoff; ++k) probs[k] = result.state.probs[k];
    *tail_mass = result.state.tail_mass;
    *success_probability = result.probability;
  });
}

pqng_status pqng_cap_weight(int incident, int clicks, int cascade, double* out) {
  return guarded([&] {
    require_c(out != nullptr, "out must not be null");
    *out = pqng::cap_weight(incident, clicks, cascade);
  });
}

pqng_status pqng_oracle_herald(const pqng_params* params, int truncation, int cutoff,
                               double* probs, double* tail_mass, double* herald_probability) {
  return guarded([&] {
    require_c(probs != nullptr && tail_mass != nullptr && herald_probability != nullptr,
              "output pointers must not be null");
    pqng::OracleOptions opts;
    if (truncation > 0) opts.truncation = truncation;
    const pqng::OracleResult result = pqng::oracle_heralded(to_params(params), cutoff, opts);
    for (int k = 0; k < cutoff; ++k) probs[k] = result.state.probs[k];
    *tail_mass = result.state.tail_mass;
    *herald_probability = result.herald_probability;
  });
}

pqng_status pqng_oracle_deviation(const pqng_params* params, int truncation, int cutoff,
                                  double* max_diag_deviation, double* prob_deviation) {
  return guarded([&] {
    require_c(max_diag_deviation != nullptr && prob_deviation != nullptr,
              "output pointers must not be null");
    const pqng::ExperimentParams p = to_params(params);
    pqng::OracleOptions opts;
    if (truncation > 0) opts.truncation = truncation;
    const pqng::OracleResult oracle = pqng::oracle_heralded(p, cutoff, opts);
    const pqng::DiagonalState closed = pqng::heralded_diagonals(p, cutoff);
    const double probability = pqng::success_probability(p);
    double max_dev = 0.0;
    for (int k = 0; k < cutoff; ++k) {
      max_dev = std::max(max_dev, std::abs(closed.probs[k] - oracle.state.probs[k]));
    }
    *max_diag_deviation = max_dev;
    *prob_deviation = std::abs(probability - oracle.herald_probability);
  });
}

pqng_status pqng_simulate_ensemble(const pqng_params* params, const pqng_detector* detector,
                                   const pqng_campaign* campaign, pqng_ensemble_stats* out) {
  return guarded([&] {
    require_c(out != nullptr, "out must not be null");
    const pqng::EnsembleStats stats =
        pqng::simulate_ensemble(to_params(params), to_detector(detector), to_campaign(campaign));
    fill_stats(stats, out);
  });
}

pqng_status pqng_curve_load(const char* path, pqng_curve** out) {
  return guarded([&] {
    require_c(path != nullptr && out != nullptr, "path and out must not be null");
    auto handle = std::make_unique<pqng_curve>();
    handle->curve = pqng::load_threshold_curve(path);
    *out = handle.release();
  });
}

void pqng_curve_free(pqng_curve* curve) { delete curve; }

int pqng_curve_order(const pqng_curve* curve) { return curve != nullptr ? curve->curve.m : -1; }

double pqng_curve_eval(const pqng_curve* curve, double x) {
  if (curve == nullptr) return -1.0;
  try {
    return pqng::threshold_at(curve->curve, x);
  } catch (...) {
    return -1.0;
  }
}

pqng_status pqng_certify(const pqng_ensemble_stats* stats, const pqng_curve* curve,
                         pqng_verdict* out) {
  return guarded([&] {
    require_c(curve != nullptr && out != nullptr, "curve and out must not be null");
    const pqng::CertificationVerdict verdict = pqng::certify(to_stats(stats), curve->curve);
    out->pass = verdict.pass ? 1 : 0;
    out->margin_y = verdict.margin_y;
  });
}

pqng_status pqng_sweep_run(const pqng_sweep_spec* spec, const pqng_curve* curve,
                           pqng_tile* tiles) {
  return guarded([&] {
    require_c(spec != nullptr && curve != nullptr && tiles != nullptr,
              "spec, curve and tiles must not be null");
    require_c(spec->loss1 != nullptr && spec->loss2 != nullptr, "loss grids must not be null");
    require_c(spec->n_loss1 >= 1 && spec->n_loss2 >= 1, "loss grids must be non-empty");

    pqng::SweepGrid grid;
    grid.zeta1_values.resize(spec->n_loss1);
    for (int i = 0; i < spec->n_loss1; ++i) grid.zeta1_values[i] = 1.0 - spec->loss1[i];
    grid.zeta2_values.resize(spec->n_loss2);
    for (int i = 0; i < spec->n_loss2; ++i) grid.zeta2_values[i] = 1.0 - spec->loss2[i];
    if (spec->r_db != nullptr && spec->n_r > 0) {
      grid.r_db_grid.assign(spec->r_db, spec->r_db + spec->n_r);
    } else {
      grid.r_db_grid = pqng::default_r_db_grid();
    }
    grid.m = spec->m;
    grid.detector = to_detector(&spec->detector);
    grid.campaign = to_campaign(&spec->campaign);
    grid.threads = spec->threads;

    const pqng::TileMap map = pqng::run_sweep(grid, curve->curve);
    for (size_t i = 0; i < map.tiles.size(); ++i) {
      const pqng::Tile& t = map.tiles[i];
      tiles[i].loss1 = 1.0 - t.zeta1;
      tiles[i].loss2 = 1.0 - t.zeta2;
      tiles[i].status = t.status == pqng::TileStatus::certified ? PQNG_TILE_CERTIFIED
                        : t.status == pqng::TileStatus::uncertifiable
                            ? PQNG_TILE_UNCERTIFIABLE
                            : PQNG_TILE_INSIGNIFICANT;
      tiles[i].best_r_db = t.best_r_db;
      tiles[i].best_probability = t.best_probability;
      tiles[i].fidelity = t.fidelity;
    }
  });
}

pqng_status pqng_contour_extract(const pqng_tile* tiles, int n_loss1, int n_loss2,
                                 double* max_loss2, int* present) {
  return guarded([&] {
    require_c(tiles != nullptr && max_loss2 != nullptr && present != nullptr,
              "pointers must not be null");
    require_c(n_loss1 >= 1 && n_loss2 >= 1, "tile grid dimensions must be positive");
    for (int i1 = 0; i1 < n_loss1; ++i1) {
      present[i1] = 0;
      max_loss2[i1] = 0.0;
      for (int i2 = 0; i2 < n_loss2; ++i2) {
        const pqng_tile& tile = tiles[static_cast<size_t>(i1) * n_loss2 + i2];
        if (tile.status != PQNG_TILE_CERTIFIED) continue;
        if (!present[i1] || tile.loss2 > max_loss2[i1]) max_loss2[i1] = tile.loss2;
        present[i1] = 1;
      }
    }
  });
}

int pqng_monotonicity_exceptions(const pqng_tile* tiles, int count) {
  if (tiles == nullptr || count <= 0) return 0;
  int exceptions = 0;
  for (int i = 0; i < count; ++i) {
    if (tiles[i].status == PQNG_TILE_CERTIFIED) continue;
    for (int j = 0; j < count; ++j) {
      if (tiles[j].status != PQNG_TILE_CERTIFIED) continue;
      if (tiles[j].loss1 >= tiles[i].loss1 && tiles[j].loss2 >= tiles[i].loss2) {
        ++exceptions;
        break;
      }
    }
  }
  return exceptions;
}

pqng_status pqng_tiles_csv(const pqng_tile* tiles, int n_loss1, int n_loss2, char** out) {
  return guarded([&] {
    require_c(out != nullptr, "out must not be null");
    const pqng::TileMap map = tilemap_from_c(tiles, n_loss1, n_loss2);
    *out = copy_to_c_string(pqng::tiles_to_csv(map));
  });
}

pqng_status pqng_contour_csv(const double* loss1, const double* max_loss2, const int* present,
                             int n, char** out) {
  return guarded([&] {
    require_c(loss1 != nullptr && max_loss2 != nullptr && present != nullptr && out != nullptr,
              "pointers must not be null");
    pqng::FeasibilityContour contour;
    for (int i = 0; i < n; ++i) {
      if (present[i]) contour.boundary.emplace_back(loss1[i], max_loss2[i]);
    }
    *out = copy_to_c_string(pqng::contour_to_csv(contour));
  });
}

void pqng_string_free(char* text) { delete[] text; }

}  // extern "C"
