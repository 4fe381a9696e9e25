#include "pqng/certification.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pqng/error.hpp"

namespace pqng {

namespace {

std::string trimmed(const std::string& line) {
  size_t begin = 0;
  size_t end = line.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
  return line.substr(begin, end - begin);
}

double parse_unit_value(const std::string& text, const std::string& what, int line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  require(ec == std::errc() && ptr == last, errc::parse_error,
          "line " + std::to_string(line_no) + ": cannot parse " + what + " '" + text + "'");
  require(std::isfinite(value) && value >= 0.0 && value <= 1.0, errc::parse_error,
          "line " + std::to_string(line_no) + ": " + what + " outside [0, 1]");
  return value;
}

}  // namespace

ThresholdCurve parse_threshold_curve(std::istream& in, const std::string& provenance) {
  ThresholdCurve curve;
  curve.provenance = provenance;

  std::string line;
  int line_no = 0;
  require(static_cast<bool>(std::getline(in, line)), errc::parse_error,
          "empty threshold file (missing 'm=<int>' header)");
  ++line_no;
  const std::string header = trimmed(line);
  require(header.rfind("m=", 0) == 0, errc::parse_error,
          "threshold header must be 'm=<int>', got '" + header + "'");
  try {
    size_t used = 0;
    curve.m = std::stoi(header.substr(2), &used);
    require(used == header.size() - 2, errc::parse_error, "trailing data after 'm=<int>' header");
  } catch (const std::logic_error&) {
    fail(errc::parse_error, "threshold header must be 'm=<int>', got '" + header + "'");
  }
  require(curve.m >= 0, errc::parse_error, "threshold order m must be non-negative");

  while (std::getline(in, line)) {
    ++line_no;
    const std::string entry = trimmed(line);
    if (entry.empty()) continue;
    const size_t comma = entry.find(',');
    require(comma != std::string::npos, errc::parse_error,
            "line " + std::to_string(line_no) + ": expected 'x,F'");
    const double x = parse_unit_value(trimmed(entry.substr(0, comma)), "x", line_no);
    const double f = parse_unit_value(trimmed(entry.substr(comma + 1)), "F", line_no);
    if (!curve.xs.empty()) {
      require(x > curve.xs.back(), errc::parse_error,
              "line " + std::to_string(line_no) + ": x samples must be strictly increasing");
      require(f <= curve.fs.back(), errc::parse_error,
              "line " + std::to_string(line_no) + ": F must be non-increasing in x");
    }
    curve.xs.push_back(x);
    curve.fs.push_back(f);
  }
  require(!curve.xs.empty(), errc::parse_error, "threshold file carries no samples");
  require(threshold_at(curve, 0.0) < 1.0, errc::parse_error,
          "threshold F(0) must be below 1 (the ideal Fock point must be certifiable)");
  return curve;
}

ThresholdCurve load_threshold_curve(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open threshold file '" + path + "'");
  return parse_threshold_curve(in, path);
}

double threshold_at(const ThresholdCurve& curve, double x) {
  require(!curve.xs.empty(), errc::invalid_argument, "threshold curve is empty");
  if (x <= curve.xs.front()) return curve.fs.front();
  if (x >= curve.xs.back()) return curve.fs.back();
  const auto it = std::upper_bound(curve.xs.begin(), curve.xs.end(), x);
  const size_t hi = static_cast<size_t>(it - curve.xs.begin());
  const size_t lo = hi - 1;
  const double t = (x - curve.xs[lo]) / (curve.xs[hi] - curve.xs[lo]);
  return curve.fs[lo] + t * (curve.fs[hi] - curve.fs[lo]);
}

CertificationVerdict certify(const EnsembleStats& stats, const ThresholdCurve& curve) {
  require(stats.m == curve.m, errc::invalid_argument,
          "hierarchy order mismatch between ensemble and curve");
  require(stats.sd_x >= 0.0 && stats.sd_y >= 0.0, errc::invalid_argument,
          "standard deviations must be non-negative");

  const double box_left = std::clamp(stats.mean_x - 3.0 * stats.sd_x, 0.0, 1.0);
  const double box_right = std::clamp(stats.mean_x + 3.0 * stats.sd_x, 0.0, 1.0);

  // Left edge is the maximum for a validated non-increasing curve; the dense
  // scan guards the result against any future non-monotone curve source.
  double curve_max = threshold_at(curve, box_left);
  for (int step = 1; step < 256; ++step) {
    const double x = box_left + (box_right - box_left) * (static_cast<double>(step) / 255.0);
    curve_max = std::max(curve_max, threshold_at(curve, x));
  }

  CertificationVerdict verdict;
  verdict.stats = stats;
  verdict.curve_id = curve.provenance;
  verdict.margin_y = (stats.mean_y - 3.0 * stats.sd_y) - curve_max;
  verdict.pass = verdict.margin_y > 0.0;
  return verdict;
}

}  // namespace pqng
