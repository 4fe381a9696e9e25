#pragma once

namespace pqng {

// Squeezing strength in the three interchangeable parametrizations used
// throughout: rate r, lambda = tanh(r), and decibels with
// S_dB = 10 log10(e^{2r}), i.e. r = S_dB ln(10)/20.
struct Squeeze {
  double rate = 0.0;
  double lambda = 0.0;
  double db = 0.0;

  double lambda2() const { return lambda * lambda; }

  static Squeeze from_rate(double r);
  static Squeeze from_db(double db);
  static Squeeze from_lambda2(double lambda2);
};

}  // namespace pqng
