#include "pqng/squeeze.hpp"

#include <cmath>

#include "pqng/error.hpp"

namespace pqng {

Squeeze Squeeze::from_rate(double r) {
  require(std::isfinite(r) && r >= 0.0, errc::invalid_argument,
          "squeezing rate must be finite and non-negative");
  Squeeze s;
  s.rate = r;
  s.lambda = std::tanh(r);
  s.db = r * (20.0 / std::log(10.0));
  return s;
}

Squeeze Squeeze::from_db(double db) {
  require(std::isfinite(db) && db >= 0.0, errc::invalid_argument,
          "squeezing in dB must be finite and non-negative");
  return from_rate(db * std::log(10.0) / 20.0);
}

Squeeze Squeeze::from_lambda2(double lambda2) {
  require(std::isfinite(lambda2) && lambda2 >= 0.0 && lambda2 < 1.0, errc::invalid_argument,
          "lambda^2 must lie in [0, 1)");
  return from_rate(std::atanh(std::sqrt(lambda2)));
}

}  // namespace pqng
