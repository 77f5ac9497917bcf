#include <gtest/gtest.h>

#include <numbers>

#include "oracle.hpp"
#include "qtcert/fidelity.hpp"

using namespace qtcert;

namespace {

ProtocolParams ghz(int m, double theta) {
  ProtocolParams p;
  p.m = m;
  p.family = InputFamily::ghz;
  p.theta = theta;
  return p;
}

/// Circuit value of f_th on the ghz family, from the brute-force oracle.
double oracle_fth(ProtocolId p, int m, double theta) {
  return oracle::threshold(oracle::run(std::string(to_string(p)), "ghz", m, theta, 0.0),
                           oracle::target("ghz", m, theta, 0.0));
}

}  // namespace

TEST(Fidelity, HonestIsOne) {
  for (int m = 1; m <= 3; ++m) {
    for (double theta : {0.0, 0.4, 1.7, 3.1}) EXPECT_NEAR(exact_threshold(ProtocolId::P0, ghz(m, theta)).f_th, 1.0, 1e-12);
  }
}

TEST(Fidelity, ExactEqualsSumOfProbabilityTimesBranchFidelity) {
  for (ProtocolId p : kAllProtocols) {
    const FidelityReport r = exact_threshold(p, ghz(2, 0.9));
    double sum = 0.0;
    for (const BranchFidelity& b : r.per_branch) sum += b.probability * b.fidelity.value_or(0.0);
    EXPECT_NEAR(r.f_th, sum, 1e-12);
    EXPECT_GE(r.f_th, 0.0);
    EXPECT_LE(r.f_th, 1.0 + 1e-12);
    EXPECT_EQ(r.mode, FidelityMode::exact);
  }
}

TEST(Fidelity, MatchesOracleOnThetaGrid) {
  for (ProtocolId p : kAllProtocols) {
    for (int m = 1; m <= 3; ++m) {
      for (int i = 0; i < 20; ++i) {
        const double theta = std::numbers::pi * i / 19.0;
        EXPECT_NEAR(exact_threshold(p, ghz(m, theta)).f_th, oracle_fth(p, m, theta), 1e-12);
      }
    }
  }
}

TEST(Fidelity, SenderCheatingIsOneHalfOnIsolatedQubits) {
  for (double theta : {0.0, 0.8, 2.0}) {
    for (double phi : {0.0, 2.2}) {
      ProtocolParams p;
      p.family = InputFamily::bloch;
      p.theta = theta;
      p.phi = phi;
      EXPECT_NEAR(exact_threshold(ProtocolId::PA1, p).f_th, 0.5, 1e-12);
      EXPECT_NEAR(exact_threshold(ProtocolId::PA2, p).f_th, 0.5, 1e-12);
    }
  }
}

TEST(Fidelity, SenderCheatingCurveOnGhzFamily) {
  for (int m = 2; m <= 3; ++m) {
    for (double theta : {0.0, std::numbers::pi / 4, std::numbers::pi / 2, 2.5}) {
      const double expected = 0.5 - std::pow(std::sin(theta), 2) / 4;
      EXPECT_NEAR(exact_threshold(ProtocolId::PA1, ghz(m, theta)).f_th, expected, 1e-12);
      EXPECT_NEAR(exact_threshold(ProtocolId::PA2, ghz(m, theta)).f_th, expected, 1e-12);
    }
  }
}

TEST(Fidelity, ThetaSweepIsPointwise) {
  const std::vector<double> grid{0.0, 1.0, 2.0};
  const auto sweep = theta_sweep(ProtocolId::PA2, 2, grid);
  ASSERT_EQ(sweep.size(), 3u);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(sweep[i].first, grid[i]);
    EXPECT_EQ(sweep[i].second, exact_threshold(ProtocolId::PA2, ghz(2, grid[i])).f_th);
  }
}

TEST(Fidelity, ThetaAverageSenderCheating) {
  EXPECT_NEAR(theta_average(ProtocolId::PA1, 2), 3.0 / 8.0, 1e-12);
  EXPECT_NEAR(theta_average(ProtocolId::PA2, 3), 3.0 / 8.0, 1e-12);
  EXPECT_NEAR(theta_average(ProtocolId::P0, 2), 1.0, 1e-12);
}

TEST(Fidelity, ThetaAverageQuadratureConverges) {
  for (ProtocolId p : kAllProtocols) {
    const double g32 = theta_average(p, 2, QuadratureSpec{QuadratureSpec::Kind::gauss, 32});
    const double g64 = theta_average(p, 2, QuadratureSpec{QuadratureSpec::Kind::gauss, 64});
    EXPECT_LE(std::abs(g64 - g32), 1e-12);
    const double grid = theta_average(p, 2, QuadratureSpec{QuadratureSpec::Kind::grid, 400});
    EXPECT_NEAR(grid, g64, 1e-9);
  }
  EXPECT_THROW(theta_average(ProtocolId::PA1, 2, QuadratureSpec{QuadratureSpec::Kind::gauss, 1}), ConfigError);
}

TEST(Fidelity, QuadratureSpecParsing) {
  EXPECT_EQ(QuadratureSpec::parse("gauss_64").label(), "gauss_64");
  EXPECT_EQ(QuadratureSpec::parse("grid_200").n, 200);
  EXPECT_THROW(QuadratureSpec::parse("gauss_1"), ConfigError);
  EXPECT_THROW(QuadratureSpec::parse("simpson_10"), ConfigError);
  EXPECT_THROW(QuadratureSpec::parse("gauss_x"), ConfigError);
  EXPECT_THROW(QuadratureSpec::parse("gauss"), ConfigError);
}

TEST(Fidelity, GaussLegendreIntegratesPolynomialsExactly) {
  const QuadratureRule rule = gauss_legendre(8);
  for (int k = 0; k <= 15; ++k) {
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    EXPECT_NEAR(integrate(rule, [k](double x) { return std::pow(x, k); }), exact, 1e-14) << k;
  }
}

TEST(Fidelity, BlochAverageRejectsOtherProtocols) {
  EXPECT_THROW(bloch_average(ProtocolId::PA1), ConfigError);
  EXPECT_THROW(bloch_average(ProtocolId::PB, 2), ConfigError);
}

TEST(Fidelity, BlochAveragesAreSymmetricInTheAnnouncement) {
  for (ProtocolId p : {ProtocolId::PB, ProtocolId::PAB}) {
    const BlochAverage avg = bloch_average(p, std::nullopt, 16);
    EXPECT_NEAR(avg.per_a_squared[0], avg.per_a_squared[1], 1e-12);
    EXPECT_NEAR(avg.per_a_linear[0], avg.per_a_linear[1], 1e-12);
    EXPECT_FALSE(avg.postselected.has_value());
  }
}

TEST(Fidelity, BlochAverageUnsquaredSumIsTheSphereAverageOfThreshold) {
  // PB on one qubit has f_th = 1/2 everywhere; PAB has f_th = 1 - sin^2(theta)/2,
  // whose sphere average is 2/3.
  const BlochAverage pb = bloch_average(ProtocolId::PB, std::nullopt, 32);
  EXPECT_NEAR(pb.per_a_linear[0] + pb.per_a_linear[1], 0.5, 1e-12);
  const BlochAverage pab = bloch_average(ProtocolId::PAB, std::nullopt, 32);
  EXPECT_NEAR(pab.per_a_linear[0] + pab.per_a_linear[1], 2.0 / 3.0, 1e-12);
}

TEST(Fidelity, BlochPostselectedAverages) {
  EXPECT_NEAR(*bloch_average(ProtocolId::PAB, 1).postselected, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(*bloch_average(ProtocolId::PAB, 0).postselected, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(*bloch_average(ProtocolId::PB, 1).postselected, 0.5, 1e-12);
}

TEST(Fidelity, MonteCarloHonestHasZeroVariance) {
  const MonteCarloEstimate est = monte_carlo_threshold(ProtocolId::P0, ghz(2, 1.2), 10000, 1);
  EXPECT_NEAR(est.estimate, 1.0, 1e-12);
  EXPECT_LE(est.std_error, 1e-12);
  EXPECT_EQ(est.shots, 10000u);
}

TEST(Fidelity, MonteCarloAgreesWithExact) {
  for (ProtocolId p : kAllProtocols) {
    for (double theta : {0.0, std::numbers::pi / 4, std::numbers::pi / 2, 2.0, 3.0}) {
      const MonteCarloEstimate est = monte_carlo_threshold(p, ghz(2, theta), 20000, 77);
      const double exact = exact_threshold(p, ghz(2, theta)).f_th;
      EXPECT_LE(std::abs(est.estimate - exact), std::max(4 * est.std_error, 1e-12))
          << to_string(p) << " theta=" << theta;
    }
  }
}

TEST(Fidelity, MonteCarloIndependentOfThreadCount) {
  const MonteCarloEstimate one = monte_carlo_threshold(ProtocolId::PB, ghz(2, 0.6), 5000, 9, 1);
  for (int threads : {2, 3, 7}) {
    const MonteCarloEstimate many = monte_carlo_threshold(ProtocolId::PB, ghz(2, 0.6), 5000, 9, threads);
    EXPECT_EQ(one.estimate, many.estimate);
    EXPECT_EQ(one.std_error, many.std_error);
    EXPECT_EQ(one.counts, many.counts);
  }
  const MonteCarloEstimate other = monte_carlo_threshold(ProtocolId::PB, ghz(2, 0.6), 5000, 10, 1);
  EXPECT_NE(one.estimate, other.estimate);
}

TEST(Fidelity, MonteCarloNeedsEnoughShots) {
  EXPECT_THROW(monte_carlo_threshold(ProtocolId::P0, ghz(1, 0.0), 99, 1), ConfigError);
}

TEST(Fidelity, MonteCarloReportCarriesSeedAndShots) {
  const FidelityReport r = monte_carlo_report(ProtocolId::PA1, ghz(1, 0.3), 1000, 5);
  EXPECT_EQ(r.mode, FidelityMode::monte_carlo);
  EXPECT_EQ(*r.seed, 5u);
  EXPECT_EQ(*r.shots, 1000u);
  double total = 0.0;
  for (const auto& b : r.per_branch) total += b.probability;
  EXPECT_NEAR(total, 1.0, 1e-12);
}
