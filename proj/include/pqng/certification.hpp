#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pqng/monte_carlo.hpp"

namespace pqng {

// Tabulated threshold curve F_m(x) bounding the genuine m-photon quantum
// non-Gaussian region from below in the (x_m, y_m) plane.
struct ThresholdCurve {
  int m = 0;
  std::vector<double> xs;  // strictly increasing, in [0, 1]
  std::vector<double> fs;  // non-increasing, in [0, 1]
  std::string provenance;
};

// Parses and validates a curve file: header line "m=<int>", then one "x,F"
// pair per line. Rejects non-monotone or out-of-range data and curves with
// F(0) >= 1.
ThresholdCurve load_threshold_curve(const std::string& path);
ThresholdCurve parse_threshold_curve(std::istream& in, const std::string& provenance);

// Piecewise-linear interpolation, clamped to the end samples outside the
// tabulated range.
double threshold_at(const ThresholdCurve& curve, double x);

struct CertificationVerdict {
  bool pass = false;
  double margin_y = 0.0;  // signed distance from box bottom to the curve max
  EnsembleStats stats;
  std::string curve_id;
};

// Three-standard-deviation box rule: pass iff the box
// [mean_x +- 3 sd_x] x [mean_y +- 3 sd_y], intersected with [0,1]^2, lies
// strictly above the curve. With a validated non-increasing curve the curve
// maximum over the box is attained at the left edge; a dense scan guards the
// evaluation anyway.
CertificationVerdict certify(const EnsembleStats& stats, const ThresholdCurve& curve);

}  // namespace pqng
