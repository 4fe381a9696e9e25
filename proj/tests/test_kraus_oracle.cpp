#include <cmath>
#include <vector>

#include "doctest.h"
#include "pqng/error.hpp"
#include "pqng/fock_core.hpp"
#include "pqng/kraus_oracle.hpp"

using namespace pqng;

namespace {

ExperimentParams make_params(double lambda2, double zeta1, double zeta2, int m) {
  ExperimentParams p;
  p.squeeze = Squeeze::from_lambda2(lambda2);
  p.zeta1 = zeta1;
  p.zeta2 = zeta2;
  p.m = m;
  return p;
}

}  // namespace

TEST_CASE("loss kernel examples") {
  const auto vacuum = loss_kernel(0, 0.3);
  REQUIRE(vacuum.size() == 1);
  CHECK(vacuum[0] == 1.0);  // vacuum is loss-invariant

  const auto identity = loss_kernel(2, 1.0);
  CHECK(identity[0] == 0.0);
  CHECK(identity[1] == 0.0);
  CHECK(identity[2] == 1.0);

  // Expanding M_k on |2> by hand gives {1/4, 1/2, 1/4} at zeta = 1/2.
  const auto half = loss_kernel(2, 0.5);
  CHECK(half[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(half[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half[2] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("loss kernel rows sum to one") {
  for (int i : {1, 7, 23, 41, 60}) {
    for (double zeta : {0.0, 0.17, 0.5, 0.83, 1.0}) {
      const auto row = loss_kernel(i, zeta);
      long double sum = 0.0L;
      for (double p : row) sum += p;
      CHECK(std::abs(static_cast<double>(sum - 1.0L)) <= 1e-15);
    }
  }
}

TEST_CASE("loss channels compose multiplicatively") {
  const double za = 0.8, zb = 0.55;
  for (int i : {1, 4, 9, 17}) {
    const auto first = loss_kernel(i, za);
    std::vector<double> composed(i + 1, 0.0);
    for (int j = 0; j <= i; ++j) {
      const auto second = loss_kernel(j, zb);
      for (int k = 0; k <= j; ++k) composed[k] += first[j] * second[k];
    }
    const auto direct = loss_kernel(i, za * zb);
    for (int k = 0; k <= i; ++k) {
      CHECK(composed[k] == doctest::Approx(direct[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("oracle lossless projection") {
  for (double lambda2 : {0.2, 0.5}) {
    const OracleResult result = oracle_heralded(make_params(lambda2, 1.0, 1.0, 2), 10, {40, 1e-10});
    CHECK(result.herald_probability ==
          doctest::Approx((1.0 - lambda2) * lambda2 * lambda2).epsilon(1e-12));
    for (int k = 0; k < 10; ++k) {
      CHECK(result.state.probs[k] == doctest::Approx(k == 2 ? 1.0 : 0.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("oracle vacuum case") {
  const OracleResult result = oracle_heralded(make_params(0.0, 0.6, 0.7, 0), 5);
  CHECK(result.herald_probability == 1.0);
  CHECK(result.state.probs[0] == 1.0);
  CHECK(result.tail_deficit == 0.0);
}

TEST_CASE("oracle herald probabilities are complete") {
  const int trunc = 40;
  for (double lambda2 : {0.3, 0.6}) {
    for (double zeta1 : {0.4, 0.9}) {
      double total = 0.0;
      for (int m = 0; m < trunc; ++m) {
        ExperimentParams p = make_params(lambda2, zeta1, 0.8, m);
        OracleOptions opts;
        opts.truncation = trunc;
        opts.deficit_limit = 1.0;  // completeness check wants the raw truncation
        total += oracle_heralded(p, 4, opts).herald_probability;
      }
      const double deficit = std::pow(lambda2, trunc);
      CHECK(total == doctest::Approx(1.0 - deficit).epsilon(1e-12));
    }
  }
}

TEST_CASE("oracle flags insufficient truncation") {
  OracleOptions starved;
  starved.truncation = 5;
  CHECK_THROWS_AS(oracle_heralded(make_params(0.6, 0.8, 0.9, 1), 10, starved), Error);
  try {
    oracle_heralded(make_params(0.6, 0.8, 0.9, 1), 10, starved);
  } catch (const Error& e) {
    CHECK(e.code() == errc::truncation_insufficient);
  }
}

TEST_CASE("closed form matches oracle across the validation grid") {
  OracleOptions opts;
  opts.truncation = 45;
  for (double lambda2 : {0.1, 0.3, 0.5}) {
    for (double zeta1 : {0.6, 0.8, 1.0}) {
      for (double zeta2 : {0.6, 0.8, 1.0}) {
        for (int m = 0; m <= 5; ++m) {
          const ExperimentParams p = make_params(lambda2, zeta1, zeta2, m);
          const OracleResult oracle = oracle_heralded(p, 25, opts);
          const DiagonalState closed = heralded_diagonals(p, 25);
          const double probability = success_probability(p);
          CHECK(std::abs(probability - oracle.herald_probability) <= 1e-12);
          for (int k = 0; k < 25; ++k) {
            CHECK(std::abs(closed.probs[k] - oracle.state.probs[k]) <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("oracle agrees exactly at lambda = 0") {
  const ExperimentParams p = make_params(0.0, 0.8, 0.9, 0);
  const OracleResult oracle = oracle_heralded(p, 10);
  const DiagonalState closed = heralded_diagonals(p, 10);
  for (int k = 0; k < 10; ++k) CHECK(oracle.state.probs[k] == closed.probs[k]);
  CHECK(oracle.herald_probability == success_probability(p));
}
