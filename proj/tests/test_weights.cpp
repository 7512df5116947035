#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cornercut/weights.hpp"
#include "support.hpp"

using namespace cornercut;

namespace {

// Brute-force contraction factor over a wide index window; relies only on
// periodic access, not on the one-period reduction.
double brute_force_mu(const WeightPair& pair) {
  double mu = 0.0;
  for (std::ptrdiff_t i = -50; i <= 50; ++i) {
    mu = std::max(mu, pair.beta(i) - pair.alpha(i));
    mu = std::max(mu, 1.0 - pair.beta(i - 1) + pair.alpha(i));
  }
  return mu;
}

}  // namespace

TEST_CASE("weight pair validation") {
  const WeightPair chaikin({0.25}, {0.75});
  CHECK(chaikin.period() == 1);
  CHECK(chaikin.class_slack() == doctest::Approx(0.25));

  CHECK_THROWS_AS(WeightPair({0.5}, {0.5}), ClassViolationError);
  try {
    WeightPair({0.5}, {0.5});
  } catch (const ClassViolationError& e) {
    CHECK(e.quantity() == ClassViolationError::Quantity::beta_minus_alpha);
    CHECK(e.index() == 0);
  }

  // slack = min of the six guarded quantities over the period
  const WeightPair two({0.1, 0.2}, {0.6, 0.9});
  const double expected =
      std::min({0.1, 0.2, 1.0 - 0.6, 1.0 - 0.9, 0.6 - 0.1, 0.9 - 0.2});
  CHECK(two.class_slack() == doctest::Approx(expected));
  CHECK(two.class_slack() == doctest::Approx(0.1));

  CHECK_THROWS_AS(WeightPair({0.25, 0.3}, {0.75}), LengthMismatchError);
  CHECK_THROWS_AS(WeightPair({}, {}), LengthMismatchError);

  // margin turns near-violations into violations
  CHECK_NOTHROW(WeightPair({0.25}, {0.75}, 0.2));
  CHECK_THROWS_AS(WeightPair({0.25}, {0.75}, 0.25), ClassViolationError);
  CHECK_THROWS_AS(WeightPair({0.25}, {0.75}, -1.0), Error);
}

TEST_CASE("periodic index access") {
  const WeightPair pair({0.1, 0.2, 0.3}, {0.5, 0.6, 0.7});
  CHECK(pair.alpha(3) == 0.1);
  CHECK(pair.alpha(-1) == 0.3);
  CHECK(pair.beta(-4) == 0.7);
  CHECK(pair.beta(7) == 0.6);
}

TEST_CASE("contraction factor") {
  CHECK(contraction_factor(WeightPair({0.25}, {0.75})) == 0.5);

  const WeightPair wide({0.1}, {0.9});
  const double expected = std::max(0.9 - 0.1, 1.0 - 0.9 + 0.1);
  CHECK(contraction_factor(wide) == expected);
  CHECK(contraction_factor(wide) == doctest::Approx(0.8));

  // period-2 enumeration done by hand in the oracle
  const WeightPair two({0.2, 0.4}, {0.5, 0.8});
  const double oracle = std::max({0.5 - 0.2, 0.8 - 0.4, 1.0 - 0.8 + 0.2, 1.0 - 0.5 + 0.4});
  CHECK(contraction_factor(two) == oracle);
  CHECK(contraction_factor(two) == doctest::Approx(0.9));
}

TEST_CASE("contraction factor properties") {
  testsupport::Rng rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightPair pair = testsupport::random_weight_pair(rng);
    const double mu = contraction_factor(pair);

    double max_bma = 0.0;
    for (std::size_t i = 0; i < pair.period(); ++i) {
      max_bma = std::max(max_bma, pair.betas()[i] - pair.alphas()[i]);
    }
    CHECK(mu >= max_bma);
    CHECK(max_bma > 0.0);

    CHECK(mu == brute_force_mu(pair));

    // invariant under cyclic shifts of the period
    std::vector<double> alpha = pair.alphas();
    std::vector<double> beta = pair.betas();
    std::rotate(alpha.begin(), alpha.begin() + 1, alpha.end());
    std::rotate(beta.begin(), beta.begin() + 1, beta.end());
    const WeightPair shifted(alpha, beta);
    CHECK(contraction_factor(shifted) == doctest::Approx(mu).epsilon(1e-15));
  }
}

TEST_CASE("schedules and certificates") {
  const WeightSchedule chaikin{WeightPair({0.25}, {0.75})};
  CHECK(chaikin.is_constant());
  CHECK(!chaikin.level_count().has_value());
  CHECK(chaikin.at(17).period() == 1);

  const Certificate cert = certify(chaikin);
  CHECK(cert.mu_sup == 0.5);
  CHECK(cert.points_convergent);
  CHECK(cert.nets_convergent);  // 0.5 < sqrt(3)/3
  CHECK(cert.margin == doctest::Approx(0.25));

  const Certificate wide = certify(WeightSchedule{WeightPair({0.05}, {0.95})});
  CHECK(wide.mu_sup == doctest::Approx(0.9));
  CHECK(wide.points_convergent);
  CHECK(!wide.nets_convergent);

  CHECK_THROWS_AS(WeightSchedule{std::vector<WeightPair>{}}, EmptyScheduleError);

  const WeightSchedule per_level{std::vector<WeightPair>{
      WeightPair({0.25}, {0.75}), WeightPair({0.1}, {0.9})}};
  CHECK(per_level.level_count() == 2);
  CHECK_THROWS_AS(per_level.at(2), Error);
  const Certificate mixed = certify(per_level);
  CHECK(mixed.mu_per_level.size() == 2);
  CHECK(mixed.mu_sup == doctest::Approx(0.8));
}

TEST_CASE("two-direction certificate") {
  const WeightSchedule s{WeightPair({0.25}, {0.75})};
  const WeightSchedule t{WeightPair({0.1}, {0.9})};
  const Certificate cert = certify(s, t);
  CHECK(cert.mu_per_level.size() == 1);
  CHECK(cert.mu_sup == doctest::Approx(0.8));
  CHECK(cert.points_convergent);
  CHECK(!cert.nets_convergent);

  const WeightSchedule two_levels{std::vector<WeightPair>{
      WeightPair({0.25}, {0.75}), WeightPair({0.25}, {0.75})}};
  const Certificate broadcast = certify(two_levels, s);
  CHECK(broadcast.mu_per_level.size() == 2);

  const WeightSchedule three_levels{std::vector<WeightPair>{
      WeightPair({0.25}, {0.75}), WeightPair({0.25}, {0.75}),
      WeightPair({0.25}, {0.75})}};
  CHECK_THROWS_AS(certify(two_levels, three_levels), LengthMismatchError);
}
