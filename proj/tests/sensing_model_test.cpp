#include "specagg/sensing_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "specagg/errors.hpp"

namespace specagg {
namespace {

BandState uniform_bands(std::size_t m, bool busy) { return BandState{std::vector<bool>(m, busy)}; }

TEST(Sense, PerfectSensing) {
  CounterRng rng(11);
  const SensingParams perfect{0.0, 0.0};
  for (int trial = 0; trial < 100; ++trial) {
    EXPECT_EQ(sense(uniform_bands(6, false), perfect, rng).count_idle(), 6u);
    EXPECT_EQ(sense(uniform_bands(6, true), perfect, rng).count_idle(), 0u);
  }
}

TEST(Sense, BothIdleDeclaredIdleFrequency) {
  CounterRng rng(2024);
  const SensingParams s{0.05, 0.0};
  const int trials = 1'000'000;
  int both = 0;
  for (int i = 0; i < trials; ++i) {
    if (sense(uniform_bands(2, false), s, rng).count_idle() == 2) ++both;
  }
  EXPECT_NEAR(static_cast<double>(both) / trials, 0.9025, 0.001);
}

TEST(Sense, MarginalsWithinThreeStandardErrors) {
  const SensingParams s{0.1, 0.3};
  CounterRng rng(99);
  BandState bands{{true, false, true, false}};
  const int trials = 250'000;  // 4 bands -> 10^6 draws, half on each kind
  int missed = 0, false_alarms = 0;
  for (int i = 0; i < trials; ++i) {
    const auto d = sense(bands, s, rng);
    missed += d.declared_idle[0] + d.declared_idle[2];
    false_alarms += !d.declared_idle[1] + !d.declared_idle[3];
  }
  const double n = 2.0 * trials;
  auto check = [n](double hits, double p) {
    EXPECT_NEAR(hits / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
  };
  check(missed, s.p_md);
  check(false_alarms, s.p_fa);
}

TEST(Sense, DeterministicForSeed) {
  const SensingParams s{0.2, 0.2};
  const BandState bands{{true, false, true, false, true}};
  CounterRng a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(sense(bands, s, a).declared_idle, sense(bands, s, b).declared_idle);
  }
}

TEST(SensingDecision, CollisionOnlyWhenBusyBandDeclaredIdle) {
  const BandState bands{{true, false, false}};
  EXPECT_FALSE((SensingDecision{{false, true, true}}.collides_with(bands)));
  EXPECT_TRUE((SensingDecision{{true, true, false}}.collides_with(bands)));
}

TEST(DecisionProbability, Examples) {
  const SensingParams s{0.05, 0.05};
  EXPECT_NEAR(decision_probability(1, 1, true, {0.05, 0.0}, 1), 0.95, 1e-15);
  EXPECT_NEAR(decision_probability(2, 1, true, {0.05, 0.0}, 2), 0.095, 1e-15);
  EXPECT_NEAR(decision_probability(0, 0, true, s, 2), 0.9025, 1e-15);
  EXPECT_NEAR(decision_probability(0, 0, false, s, 2), 1.0 - 0.9025, 1e-15);
}

TEST(DecisionProbability, SumsToBusyDetectionProbability) {
  for (double p_fa : {0.0, 0.05, 0.3, 0.9}) {
    for (double p_md : {0.0, 0.05, 0.3}) {
      const SensingParams s{p_fa, p_md};
      for (int m = 0; m <= 12; ++m) {
        for (int eta = 0; eta <= m; ++eta) {
          double sum = 0.0;
          for (int n = 0; n <= eta; ++n) sum += decision_probability(eta, n, true, s, m);
          EXPECT_NEAR(sum, std::pow(1 - p_md, m - eta), 1e-12);
        }
      }
    }
  }
}

TEST(DecisionProbability, RejectsBadCounts) {
  const SensingParams s{0.1, 0.1};
  EXPECT_THROW(decision_probability(3, 4, true, s, 5), ArgumentError);
  EXPECT_THROW(decision_probability(6, 1, true, s, 5), ArgumentError);
  EXPECT_THROW(decision_probability(2, -1, true, s, 5), ArgumentError);
}

TEST(Binomial, PascalAndSymmetry) {
  EXPECT_EQ(binomial(0, 0), 1.0);
  EXPECT_EQ(binomial(5, 2), 10.0);
  EXPECT_EQ(binomial(30, 15), 155117520.0);
  EXPECT_EQ(binomial(4, 5), 0.0);
  for (int n = 1; n <= 50; ++n) {
    for (int k = 1; k < n; ++k) {
      EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k)) << n << " " << k;
      EXPECT_EQ(binomial(n, k), binomial(n, n - k));
    }
  }
}

TEST(SensingParams, Validation) {
  EXPECT_THROW((SensingParams{1.5, 0.0}.validate()), ConfigError);
  EXPECT_THROW((SensingParams{0.0, -0.1}.validate()), ConfigError);
  EXPECT_NO_THROW((SensingParams{1.0, 0.0}.validate()));
}

}  // namespace
}  // namespace specagg
