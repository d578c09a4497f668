#include <mvhp/error.hpp>
#include <mvhp/meta_estimator.hpp>
#include <mvhp/simulation.hpp>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace mvhp;

namespace {

SimConfig base_config(std::size_t n = 200) {
  SimConfig cfg;
  cfg.n = n;
  Matrix se(2, 2), sx(2, 2);
  se << 1.0, 0.4, 0.4, 2.0;
  sx << 0.1, 0.02, 0.02, 0.05;
  cfg.sigma_eps = SymMatrix(se);
  cfg.sigma_xi = SymMatrix(sx);
  cfg.seed = 42;
  return cfg;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an mvhp::Error";
  return ErrorCode::Internal;
}

}  // namespace

TEST(Rng, KnownXoshiroOutput) {
  // splitmix64 seeding of 0 followed by xoshiro256**, as in the reference C code.
  Rng a(0);
  EXPECT_EQ(a.next(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(a.next(), 0xbf6e1f784956452aULL);
  EXPECT_EQ(a.next(), 0x1a5f849d4933e6e0ULL);
  EXPECT_EQ(a.next(), 0x6aa594f1262d2d2cULL);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng(7);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.015);
}

TEST(Rng, UnitTHasUnitVariance) {
  Rng rng(8);
  const int n = 400000;
  double s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double t = rng.unit_t(8.0);
    s2 += t * t;
  }
  EXPECT_NEAR(s2 / n, 1.0, 0.03);
}

TEST(Rng, GammaMean) {
  Rng rng(9);
  for (double shape : {0.5, 2.5, 10.0}) {
    double s = 0;
    for (int i = 0; i < 100000; ++i) s += rng.gamma(shape);
    EXPECT_NEAR(s / 100000 / shape, 1.0, 0.02) << shape;
  }
}

TEST(Simulate, SeedDeterminism) {
  const Simulation a = simulate(base_config());
  const Simulation b = simulate(base_config());
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.trend, b.trend);
  SimConfig other = base_config();
  other.seed = 43;
  EXPECT_NE(simulate(other).y, a.y);
}

TEST(Simulate, NoSlopeNoiseGivesConstantTrend) {
  SimConfig cfg = base_config(50);
  cfg.sigma_xi = SymMatrix::zero(2);
  cfg.init_mu = Eigen::Vector2d(3.0, -1.0);
  const Simulation s = simulate(cfg);
  for (int t = 0; t < 50; ++t) EXPECT_EQ(s.trend.row(t), cfg.init_mu.transpose());
}

TEST(Simulate, NoIrregularMeansObservedTrend) {
  SimConfig cfg = base_config(80);
  cfg.sigma_eps = SymMatrix::zero(2);
  const Simulation s = simulate(cfg);
  EXPECT_EQ(s.y, s.trend);
  // z_t is the slope disturbance two periods back: Var(z) = sigma_xi.
  SimConfig big = cfg;
  big.n = 100000;
  const Matrix z = difference_twice(simulate(big).y);
  const Matrix g0 = sample_autocovariances(z, 1)[0];
  EXPECT_LE(relative_frobenius(g0, cfg.sigma_xi.matrix()), 0.03);
  EXPECT_LE(sample_autocovariances(z, 1)[1].norm(), 0.03 * cfg.sigma_xi.matrix().norm());
}

TEST(Simulate, InitialSlopeDrivesTrend) {
  SimConfig cfg = base_config(20);
  cfg.sigma_xi = SymMatrix::zero(2);
  cfg.init_beta = Eigen::Vector2d(0.5, -1.0);
  const Simulation s = simulate(cfg);
  EXPECT_NEAR(s.trend(10, 0), 5.0, 1e-15);
  EXPECT_NEAR(s.trend(10, 1), -10.0, 1e-15);
}

TEST(Simulate, LagTwoAutocovarianceMatchesIrregular) {
  const Matrix z = difference_twice(simulate(base_config(100000)).y);
  const Matrix g2 = sample_autocovariances(z, 2)[2];
  const Matrix se = base_config().sigma_eps.matrix();
  // Entry (i, j) measured on the scale sqrt(se_ii se_jj); about four sampling standard deviations.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_LE(std::abs(g2(i, j) - se(i, j)), 0.1 * std::sqrt(se(i, i) * se(j, j))) << i << j;
    }
}

TEST(Simulate, LagRatioIsMinusFour) {
  const Matrix z = difference_twice(simulate(base_config(50000)).y);
  const auto g = sample_autocovariances(z, 2);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(g[1](i, i) / g[2](i, i), -4.0, 0.15);
}

TEST(Simulate, IrregularCovarianceMoments) {
  SimConfig cfg = base_config(100000);
  cfg.sigma_xi = SymMatrix::zero(2);
  const Simulation s = simulate(cfg);
  const Matrix eps = s.y - s.trend;
  const Matrix cov = eps.transpose() * eps / static_cast<double>(eps.rows());
  EXPECT_LE(relative_frobenius(cov, cfg.sigma_eps.matrix()), 0.02);
}

TEST(Simulate, ScaledTNoise) {
  SimConfig cfg = base_config(50000);
  cfg.noise = NoiseDist::ScaledT;
  cfg.df = 6.0;
  cfg.sigma_xi = SymMatrix::zero(2);
  const Simulation s = simulate(cfg);
  const Matrix eps = s.y - s.trend;
  EXPECT_LE(relative_frobenius(eps.transpose() * eps / 50000.0, cfg.sigma_eps.matrix()), 0.05);
}

TEST(Simulate, Validation) {
  EXPECT_EQ(code_of([] { simulate(base_config(5)); }), ErrorCode::TooShort);
  SimConfig t = base_config();
  t.noise = NoiseDist::ScaledT;
  t.df = 4.0;
  EXPECT_EQ(code_of([&] { simulate(t); }), ErrorCode::InvalidArgument);
  SimConfig m = base_config();
  m.init_mu = Vector::Zero(3);
  EXPECT_EQ(code_of([&] { simulate(m); }), ErrorCode::DimensionMismatch);
  SimConfig neg = base_config();
  neg.sigma_xi = SymMatrix::diagonal(Eigen::Vector2d(1.0, -0.5));
  EXPECT_EQ(code_of([&] { simulate(neg); }), ErrorCode::InvalidArgument);
}

TEST(SampleAutocovariances, IidHigherLagsShrink) {
  Rng rng(3);
  auto norm_at = [&](int n) {
    Matrix z(n, 2);
    for (int t = 0; t < n; ++t) z.row(t) << rng.normal(), rng.normal();
    return sample_autocovariances(z, 3)[3].norm();
  };
  EXPECT_LT(norm_at(100000), 0.02);
  EXPECT_LT(norm_at(100000), norm_at(400) + 0.01);
}

TEST(SampleAutocovariances, ConstantSeries) {
  Matrix z(20, 2);
  z.col(0).setConstant(2.0);
  z.col(1).setConstant(-1.0);
  const Matrix g0 = sample_autocovariances(z, 2)[0];
  Matrix expected(2, 2);
  expected << 4, -2, -2, 1;
  EXPECT_LE((g0 - expected).norm(), 1e-14);
}

TEST(SampleAutocovariances, DirectDefinition) {
  std::mt19937_64 gen(4);
  const Matrix z = testing_support::random_matrix(gen, 40, 3);
  const auto g = sample_autocovariances(z, 2);
  Matrix ref = Matrix::Zero(3, 3);
  for (int t = 2; t < 40; ++t) ref += z.row(t).transpose() * z.row(t - 2);
  EXPECT_LE((g[2] - ref / 40.0).norm(), 1e-14);
}

TEST(SampleAutocovariances, LagLimit) {
  EXPECT_EQ(code_of([] { sample_autocovariances(Matrix::Ones(20, 2), 5); }), ErrorCode::LagTooLarge);
}

TEST(CovarianceFactor, SemidefiniteInput) {
  Matrix s(2, 2);
  s << 1, 1, 1, 1;
  const Matrix l = covariance_factor(SymMatrix(s));
  EXPECT_LE((l * l.transpose() - s).norm(), 1e-14);
}
