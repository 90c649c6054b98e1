#include <gtest/gtest.h>

#include "fcuc/freq.hpp"

using namespace fcuc;
using namespace fcuc::freq;

TEST(RocofMax, ExamplesAndSymmetry) {
  EXPECT_EQ(rocof_max(0.0, 5.0), 0.0);
  EXPECT_NEAR(rocof_max(0.1, 5.0), -0.02, 1e-15);
  EXPECT_NEAR(rocof_max(-0.1, 5.0), 0.02, 1e-15);
  EXPECT_THROW(rocof_max(0.1, 0.0), std::domain_error);
  EXPECT_THROW(rocof_max(0.1, -1.0), std::domain_error);
}

TEST(SteadyStateDev, ExamplesAndHomogeneity) {
  EXPECT_EQ(steady_state_dev(0.0, 0.5, 19.5), 0.0);
  EXPECT_NEAR(steady_state_dev(0.2, 0.5, 19.5), -0.01, 1e-15);
  const double a = steady_state_dev(0.2, 1.0, 3.0);
  const double b = steady_state_dev(0.2, 2.0, 6.0);
  EXPECT_NEAR(std::fabs(b), 0.5 * std::fabs(a), 1e-15);
  EXPECT_THROW(steady_state_dev(0.1, 0.0, 0.0), std::domain_error);
}

TEST(MetricsAreOddInDisturbance, Sweep) {
  for (double dp : {0.01, 0.05, 0.3, 0.9}) {
    EXPECT_DOUBLE_EQ(rocof_max(dp, 3.0), -rocof_max(-dp, 3.0));
    EXPECT_DOUBLE_EQ(steady_state_dev(dp, 1.0, 8.0), -steady_state_dev(-dp, 1.0, 8.0));
  }
}

TEST(Nadir, HandEvaluatedReference) {
  // -0.1/20 * (1 + sqrt(8*(19-15)/6) * exp(-0.7)) evaluated independently
  const FrequencyResponseParams p{6.0, 1.0, 19.0, 15.0, 8.0, 0.7, 1.0, 1.0};
  EXPECT_NEAR(nadir(0.1, p), -0.010734073176391648, 1e-15);
  EXPECT_GE(std::fabs(nadir(0.1, p)), std::fabs(steady_state_dev(0.1, p.D, p.R_g)));
}

TEST(Nadir, DegeneratesToSteadyState) {
  FrequencyResponseParams p{6.0, 1.0, 19.0, 15.0, 0.0, 0.7, 1.0, 1.0};
  EXPECT_EQ(nadir(0.0, p), 0.0);
  EXPECT_DOUBLE_EQ(nadir(0.1, p), steady_state_dev(0.1, p.D, p.R_g));
  p.T = 8.0;
  p.F_g = p.R_g;
  EXPECT_DOUBLE_EQ(nadir(0.1, p), steady_state_dev(0.1, p.D, p.R_g));
}

TEST(Nadir, NegativeRadicandIsDomainError) {
  const FrequencyResponseParams p{6.0, 1.0, 10.0, 15.0, 8.0, 0.7, 1.0, 1.0};
  EXPECT_THROW(nadir(0.1, p), std::domain_error);
}

TEST(MinInertiaForRocof, Examples) {
  GridParams g;
  g.f0 = 50.0;
  g.rocof_limit = 0.25;
  EXPECT_EQ(min_inertia_for_rocof(0.0, g), 0.0);
  EXPECT_NEAR(min_inertia_for_rocof(0.033, g), 6.6, 1e-12);
  EXPECT_NEAR(min_inertia_for_rocof(-0.033, g), 6.6, 1e-12);
  g.rocof_limit = 1.0;
  EXPECT_NEAR(min_inertia_for_rocof(0.1, g), 5.0, 1e-12);
  // the inertia returned exactly meets the limit
  EXPECT_NEAR(std::fabs(rocof_max(0.1, min_inertia_for_rocof(0.1, g))) * g.f0, g.rocof_limit, 1e-12);
  g.rocof_limit = 0.0;
  EXPECT_THROW(min_inertia_for_rocof(0.1, g), std::domain_error);
}

TEST(Evaluate, ReportsHzScaledByNominalFrequency) {
  const FrequencyResponseParams p{6.0, 1.0, 19.0, 15.0, 8.0, 0.7, 1.0, 1.0};
  const auto m = evaluate(0.1, p, 50.0);
  EXPECT_DOUBLE_EQ(m.rocof_hz_per_s, 50.0 * m.rocof_pu);
  EXPECT_DOUBLE_EQ(m.nadir_hz, 50.0 * m.nadir_pu);
  EXPECT_DOUBLE_EQ(m.steady_state_hz, 50.0 * m.steady_state_pu);
}
