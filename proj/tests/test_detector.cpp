#include <cmath>
#include <vector>

#include "doctest.h"
#include "pqng/detector.hpp"
#include "pqng/error.hpp"
#include "pqng/kraus_oracle.hpp"
#include "pqng/math_util.hpp"

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

// Exhaustive oracle: count the n^i equally likely photon-to-diode
// assignments that occupy exactly `clicks` diodes.
double brute_cap_weight(int incident, int clicks, int cascade) {
  long long matching = 0;
  long long total = 1;
  for (int i = 0; i < incident; ++i) total *= cascade;
  std::vector<int> assignment(incident, 0);
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    std::vector<bool> hit(cascade, false);
    for (int i = 0; i < incident; ++i) {
      hit[rest % cascade] = true;
      rest /= cascade;
    }
    int occupied = 0;
    for (bool h : hit) occupied += h ? 1 : 0;
    if (occupied == clicks) ++matching;
  }
  return static_cast<double>(matching) / static_cast<double>(total);
}

// The inclusion-exclusion expression itself; numerically fine while the
// alternating sum stays mild.
double inclusion_exclusion_weight(int incident, int clicks, int cascade) {
  if (incident < clicks) return 0.0;
  long double sum = 0.0L;
  for (int j = 0; j <= clicks; ++j) {
    const long double term =
        binom_coeff(clicks, j) * powl(static_cast<long double>(clicks - j), incident);
    sum += (j % 2 == 0) ? term : -term;
  }
  return static_cast<double>(binom_coeff(cascade, clicks) * sum /
                             powl(static_cast<long double>(cascade), incident));
}

}  // namespace

TEST_CASE("cap weight examples") {
  CHECK(cap_weight(0, 0, 5) == 1.0);                                 // no photons, no clicks
  CHECK(cap_weight(2, 2, 2) == doctest::Approx(0.5).epsilon(1e-15)); // 2!/2^2
  // brute force over all 5^3 assignments gives 0.48
  CHECK(brute_cap_weight(3, 2, 5) == doctest::Approx(0.48).epsilon(1e-15));
  CHECK(cap_weight(3, 2, 5) == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(cap_weight(1, 2, 5) == 0.0);  // fewer photons than clicks
}

TEST_CASE("cap weight matches exhaustive enumeration") {
  for (int n = 1; n <= 6; ++n) {
    for (int i = 0; i <= 6; ++i) {
      for (int m = 0; m <= std::min(i, n); ++m) {
        CHECK(cap_weight(i, m, n) == doctest::Approx(brute_cap_weight(i, m, n)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("cap weight matches the inclusion-exclusion expression") {
  for (int n : {3, 8, 15}) {
    for (int i : {0, 2, 5, 9, 14}) {
      for (int m = 0; m <= std::min(i, n); ++m) {
        CHECK(cap_weight(i, m, n) ==
              doctest::Approx(inclusion_exclusion_weight(i, m, n)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("cap weight rows are normalized") {
  for (int n : {1, 10, 15, 20}) {
    for (int i = 0; i <= 40; ++i) {
      long double sum = 0.0L;
      for (int m = 0; m <= std::min(i, n); ++m) sum += cap_weight(i, m, n);
      CHECK(std::abs(static_cast<double>(sum - 1.0L)) <= 1e-12);
    }
  }
}

TEST_CASE("diagonal coincidence identity and convergence bound") {
  for (int n : {10, 20, 100, 1000}) {
    for (int m = 0; m <= std::min(10, n); ++m) {
      double product = 1.0;
      for (int j = 0; j < m; ++j) product *= 1.0 - static_cast<double>(j) / n;
      const double w = cap_weight(m, m, n);
      CHECK(std::abs(w - product) <= 1e-14);
      CHECK(1.0 - w <= static_cast<double>(m) * (m - 1) / (2.0 * n) + 1e-14);
    }
  }
}

TEST_CASE("cap weights approach the PNR limit monotonically") {
  std::vector<int> ladder;
  for (int n = 1; n <= 32; ++n) ladder.push_back(n);
  for (int n = 64; n <= 8192; n *= 2) ladder.push_back(n);
  ladder.push_back(10000);

  for (int i = 0; i <= 8; ++i) {
    for (int m = 0; m <= i; ++m) {
      double previous_gap = -1.0;
      for (int n : ladder) {
        if (n < i) continue;
        if (m > n) continue;
        const double target = (m == i) ? 1.0 : 0.0;
        const double gap = std::abs(cap_weight(i, m, n) - target);
        if (previous_gap >= 0.0) CHECK(gap <= previous_gap + 1e-15);
        previous_gap = gap;
      }
    }
  }
}

TEST_CASE("cap weight table agrees with single evaluations") {
  const auto table = ClickWeightTable::get(12, 80);
  CHECK(table->max_incident() >= 80);
  for (int i : {0, 3, 17, 50, 80}) {
    for (int m = 0; m <= std::min(i, 12); ++m) {
      CHECK(table->weight(i, m) == doctest::Approx(cap_weight(i, m, 12)).epsilon(1e-13));
    }
  }
  CHECK(table->weight(2, 5) == 0.0);
  // cache returns a shared instance for covered requests
  const auto again = ClickWeightTable::get(12, 40);
  CHECK(again.get() == table.get());
}

TEST_CASE("cap success probability examples") {
  const Detector single = Detector::cap(1);
  // lambda = 0: only the vacuum component exists and never clicks
  CHECK(cap_success_probability(make_params(0.0, 0.7, 1.0, 0), Detector::cap(7)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // a single click detector heralds "at least one photon": P = lambda^2 at zeta1 = 1
  ExperimentParams p = make_params(0.5, 1.0, 1.0, 1);
  CHECK(cap_success_probability(p, single) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cap success probability matches the oracle composition") {
  // herald-mode count distribution from the brute-force oracle, composed
  // with independently evaluated click weights
  const ExperimentParams p = make_params(0.5, 0.9, 1.0, 4);
  const Detector det = Detector::cap(10);

  OracleOptions opts;
  opts.truncation = 60;
  opts.deficit_limit = 1.0;
  double expected = 0.0;
  for (int a = 0; a < opts.truncation; ++a) {
    ExperimentParams herald = p;
    herald.m = a;
    const double herald_probability = oracle_heralded(herald, 2, opts).herald_probability;
    expected += inclusion_exclusion_weight(a, p.m, det.n) * herald_probability;
  }
  CHECK(cap_success_probability(p, det) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("cap heralded diagonals normalize and converge to PNR") {
  const ExperimentParams p = make_params(0.4, 0.9, 0.9, 3);

  const DiagonalState cap_state = cap_heralded_diagonals(p, Detector::cap(2000), 20);
  double sum = cap_state.tail_mass;
  for (double value : cap_state.probs) {
    CHECK(value >= 0.0);
    sum += value;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  const DiagonalState pnr_state = heralded_diagonals(p, 20);
  for (int k = 0; k < 20; ++k) {
    CHECK(std::abs(cap_state.probs[k] - pnr_state.probs[k]) <= 1e-2);
  }
}

TEST_CASE("cap detector validations") {
  CHECK_THROWS_AS(cap_success_probability(make_params(0.5, 0.9, 0.9, 3), Detector::cap(2)), Error);
  CHECK_THROWS_AS(cap_weight(3, 4, 2), Error);   // clicks beyond cascade
  CHECK_THROWS_AS(cap_weight(-1, 0, 2), Error);
  CHECK_THROWS_AS(cap_success_probability(make_params(0.5, 0.9, 0.9, 1), Detector::pnr()), Error);
  // degenerate CAP herald: no squeezing but m >= 1
  CHECK_THROWS_AS(cap_heralded_diagonals(make_params(0.0, 0.9, 0.9, 1), Detector::cap(4), 10),
                  Error);
}

TEST_CASE("cap vacuum herald on an empty cascade input") {
  // n = 1, m = 0, lambda = 0: only i = 0 contributes, the state is vacuum
  const DiagonalState state = cap_heralded_diagonals(make_params(0.0, 0.8, 0.6, 0),
                                                     Detector::cap(1), 8);
  CHECK(state.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k < 8; ++k) CHECK(state.probs[k] == 0.0);
}

TEST_CASE("pnr dispatch matches the direct path") {
  const ExperimentParams p = make_params(0.4, 0.8, 0.9, 2);
  const HeraldResult viaDispatch = herald_state(p, Detector::pnr(), 16);
  CHECK(viaDispatch.probability == success_probability(p));
  const DiagonalState direct = heralded_diagonals(p, 16);
  for (int k = 0; k < 16; ++k) CHECK(viaDispatch.state.probs[k] == direct.probs[k]);
}
