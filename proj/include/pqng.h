/* pqng — heralded Fock-state preparation under loss, with quantum
 * non-Gaussianity certification.
 *
 * C interface of the shared library. All entry points return a pqng_status;
 * outputs are written through pointers. A thread-local detail message for
 * the most recent failure is available via pqng_last_error(). The only
 * opaque handle is pqng_curve; everything else is plain data.
 */

#ifndef PQNG_H
#define PQNG_H

#include <stdint.h>

#if defined(_WIN32)
#define PQNG_API __declspec(dllexport)
#else
#define PQNG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define PQNG_VERSION_STRING "0.1.0"

typedef enum pqng_status {
  PQNG_OK = 0,
  PQNG_ERR_INVALID_ARGUMENT = 1,
  PQNG_ERR_DEGENERATE_HERALD = 2,
  PQNG_ERR_TRUNCATION = 3,
  PQNG_ERR_INSUFFICIENT_SAMPLES = 4,
  PQNG_ERR_PARSE = 5,
  PQNG_ERR_IO = 6,
  PQNG_ERR_INTERNAL = 7
} pqng_status;

PQNG_API const char* pqng_version(void);
PQNG_API const char* pqng_status_name(pqng_status status);
/* Detail message of the last failure on this thread; empty string if none. */
PQNG_API const char* pqng_last_error(void);

/* ------------------------------------------------------------------ */
/* Squeezing parametrization                                           */

typedef struct pqng_squeeze {
  double rate;   /* r */
  double lambda; /* tanh(r) */
  double db;     /* 10 log10(e^{2r}) */
} pqng_squeeze;

PQNG_API pqng_status pqng_squeeze_from_db(double db, pqng_squeeze* out);
PQNG_API pqng_status pqng_squeeze_from_lambda2(double lambda2, pqng_squeeze* out);

/* ------------------------------------------------------------------ */
/* Experiment and detector description                                 */

typedef struct pqng_params {
  pqng_squeeze squeeze;
  double zeta1; /* heralding-mode intensity transmittance in [0, 1] */
  double zeta2; /* signal-mode intensity transmittance in [0, 1] */
  int m;        /* heralded photon count / click count */
} pqng_params;

typedef enum pqng_detector_kind {
  PQNG_DETECTOR_PNR = 0,
  PQNG_DETECTOR_CAP = 1
} pqng_detector_kind;

typedef struct pqng_detector {
  pqng_detector_kind kind;
  int n; /* cascade size; ignored for PNR */
} pqng_detector;

/* Success probability and normalized heralded diagonals. probs must hold
 * cutoff entries; the mass at k >= cutoff is written to tail_mass. */
PQNG_API pqng_status pqng_herald(const pqng_params* params, const pqng_detector* detector,
                                 int cutoff, double* probs, double* tail_mass,
                                 double* success_probability);

/* w(i, m, n): probability of i incident photons triggering exactly m of the
 * n diodes of an even-split cascade. */
PQNG_API pqng_status pqng_cap_weight(int incident, int clicks, int cascade, double* out);

/* ------------------------------------------------------------------ */
/* Brute-force oracle                                                  */

/* Heralded state via explicit channel application on the truncated joint
 * photon-number distribution (PNR heralding). truncation <= 0 selects the
 * default (40). */
PQNG_API pqng_status pqng_oracle_herald(const pqng_params* params, int truncation, int cutoff,
                                        double* probs, double* tail_mass,
                                        double* herald_probability);

/* Max elementwise deviation between the closed form and the oracle over the
 * first cutoff diagonals, and the herald-probability deviation. */
PQNG_API pqng_status pqng_oracle_deviation(const pqng_params* params, int truncation, int cutoff,
                                           double* max_diag_deviation, double* prob_deviation);

/* ------------------------------------------------------------------ */
/* Monte Carlo campaign                                                */

typedef struct pqng_campaign {
  long long repetitions; /* shot budget per run */
  int runs;              /* ensemble size */
  int sample_cutoff;     /* histogram bins k = 0..K-1 plus overflow */
  uint64_t seed;
} pqng_campaign;

typedef struct pqng_ensemble_stats {
  int m;
  double mean_x;
  double mean_y;
  double sd_x;
  double sd_y;
  long long n_samples;
  int runs;
} pqng_ensemble_stats;

PQNG_API pqng_status pqng_simulate_ensemble(const pqng_params* params,
                                            const pqng_detector* detector,
                                            const pqng_campaign* campaign,
                                            pqng_ensemble_stats* out);

/* ------------------------------------------------------------------ */
/* Threshold curves and certification                                  */

typedef struct pqng_curve pqng_curve; /* opaque */

PQNG_API pqng_status pqng_curve_load(const char* path, pqng_curve** out);
PQNG_API void pqng_curve_free(pqng_curve* curve);
PQNG_API int pqng_curve_order(const pqng_curve* curve); /* m; -1 on null */
PQNG_API double pqng_curve_eval(const pqng_curve* curve, double x);

typedef struct pqng_verdict {
  int pass;
  double margin_y;
} pqng_verdict;

PQNG_API pqng_status pqng_certify(const pqng_ensemble_stats* stats, const pqng_curve* curve,
                                  pqng_verdict* out);

/* ------------------------------------------------------------------ */
/* Loss-plane sweeps                                                   */

typedef enum pqng_tile_status {
  PQNG_TILE_CERTIFIED = 0,
  PQNG_TILE_UNCERTIFIABLE = 1,
  PQNG_TILE_INSIGNIFICANT = 2
} pqng_tile_status;

typedef struct pqng_tile {
  double loss1;
  double loss2;
  pqng_tile_status status;
  double best_r_db;        /* valid when certified */
  double best_probability; /* valid when certified */
  double fidelity;         /* valid when certified */
} pqng_tile;

typedef struct pqng_sweep_spec {
  const double* loss1; /* heralding losses (1 - zeta1) */
  int n_loss1;
  const double* loss2; /* characterization losses (1 - zeta2) */
  int n_loss2;
  const double* r_db; /* squeezing candidates in dB; NULL = default 41-point grid */
  int n_r;
  int m;
  pqng_detector detector;
  pqng_campaign campaign;
  int threads; /* 0 = hardware concurrency */
} pqng_sweep_spec;

/* tiles must hold n_loss1 * n_loss2 entries, written loss1-major. */
PQNG_API pqng_status pqng_sweep_run(const pqng_sweep_spec* spec, const pqng_curve* curve,
                                    pqng_tile* tiles);

/* Per loss1 column: the maximal certified loss2. present[i] is 1 when the
 * column has a certified tile, else 0 and max_loss2[i] is unspecified. */
PQNG_API pqng_status pqng_contour_extract(const pqng_tile* tiles, int n_loss1, int n_loss2,
                                          double* max_loss2, int* present);

/* Tiles breaking up-closedness of the certified set (MC-noise flags). */
PQNG_API int pqng_monotonicity_exceptions(const pqng_tile* tiles, int count);

/* CSV serializations; free the returned buffer with pqng_string_free. */
PQNG_API pqng_status pqng_tiles_csv(const pqng_tile* tiles, int n_loss1, int n_loss2, char** out);
PQNG_API pqng_status pqng_contour_csv(const double* loss1, const double* max_loss2,
                                      const int* present, int n, char** out);
PQNG_API void pqng_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* PQNG_H */
