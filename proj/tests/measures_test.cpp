#include <gtest/gtest.h>

#include <cmath>

#include "frlab/measures.hpp"

namespace frlab {
namespace {

// Independent oracle: the infinite product cut at 60 factors.
Complex cantor_product(double n) {
  Complex acc{1.0, 0.0};
  double scale = 1.0;
  for (int k = 1; k <= 60; ++k) {
    scale /= 3.0;
    const double a = 2.0 * std::numbers::pi * n * scale;
    acc *= std::exp(Complex(0.0, -a)) * std::cos(a);
  }
  return acc;
}

TEST(FourierCoefficient, ZeroFrequencyIsTotalMass) {
  EXPECT_EQ(fourier_coefficient(MeasureModel::cantor(6), 0), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(fourier_coefficient(MeasureModel::density(WeightModel::constant(1.0)), 0) - 1.0), 0.0, 1e-13);
  const auto a = MeasureModel::atomic({0.1, 0.7}, {0.25, 0.75});
  EXPECT_NEAR(std::abs(fourier_coefficient(a, 0) - 1.0), 0.0, 1e-15);
}

TEST(FourierCoefficient, AtomicExactSum) {
  const auto a = MeasureModel::atomic({0.0, 0.25}, {0.5, 0.5});
  // 0.5 + 0.5 exp(-2 pi i n / 4)
  EXPECT_NEAR(std::abs(fourier_coefficient(a, 1) - Complex(0.5, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(fourier_coefficient(a, 2) - Complex(0.0, 0.0)), 0.0, 1e-15);
}

TEST(CantorCoefficient, MatchesProductOracle) {
  for (std::int64_t n = -100; n <= 100; ++n) {
    EXPECT_NEAR(std::abs(cantor_coefficient(n) - cantor_product(static_cast<double>(n))), 0.0, 1e-10) << n;
    EXPECT_NEAR(std::abs(cantor_transform(static_cast<double>(n)) - cantor_product(static_cast<double>(n))), 0.0,
                1e-10)
        << n;
  }
}

TEST(CantorCoefficient, TriadicSelfSimilarity) {
  for (std::int64_t n = 1; n <= 20; ++n) {
    EXPECT_NEAR(std::abs(cantor_coefficient(3 * n) - cantor_coefficient(n)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(cantor_transform(3.0 * n) - cantor_product(static_cast<double>(n))), 0.0, 1e-10);
  }
  const double base = std::abs(cantor_transform(1.0));
  double p = 1.0;
  for (int k = 0; k <= 8; ++k, p *= 3.0) EXPECT_NEAR(std::abs(cantor_transform(p)), base, 1e-8) << k;
}

TEST(CantorCoefficient, AgreesWithLevelTwelveAtoms) {
  const auto atoms = MeasureModel::atomic(cantor_atoms(12).points, cantor_atoms(12).weights);
  for (std::int64_t n = -100; n <= 100; ++n)
    EXPECT_NEAR(std::abs(fourier_coefficient(atoms, n) - cantor_coefficient(n)), 0.0, 1e-6) << n;
}

TEST(CantorAtoms, StructureAtLevelTwo) {
  const auto d = cantor_atoms(2);
  ASSERT_EQ(d.size(), 4u);
  const double len = 1.0 / 9.0;
  const double left[] = {0.0, 2.0 / 9.0, 6.0 / 9.0, 8.0 / 9.0};
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(d.points[j], left[j] + 0.5 * len, 1e-15);
    EXPECT_EQ(d.weights[j], 0.25);
  }
}

TEST(DensityMeasure, RejectsOddGridAndHonoursMidpoints) {
  EXPECT_THROW(MeasureModel::density(WeightModel::constant(1.0), 7), ContractError);
  const auto m = MeasureModel::density(WeightModel::power(0.5, -0.5), 64);
  for (double x : m.discrete().points) EXPECT_NE(x, 0.5);
}

TEST(RajchmanScan, LebesgueDecaysCantorDoesNot) {
  const auto leb = rajchman_scan(MeasureModel::density(WeightModel::constant(1.0)), 1000);
  EXPECT_EQ(leb.verdict, "Rajchman-consistent");
  for (double v : leb.profile) EXPECT_LE(v, 1e-13);
  const auto c = rajchman_scan(MeasureModel::cantor(8), 6561);
  EXPECT_EQ(c.verdict, "not Rajchman");
  ASSERT_EQ(c.witness.rows.size(), 9u);
  for (const auto& row : c.witness.rows) EXPECT_NEAR(row[2], c.witness.rows[0][2], 1e-8);
}

TEST(RajchmanScan, SmoothDensityDecaysToQuadratureFloor) {
  const WeightModel g{"1+x(1-x)", [](double x) { return 1.0 + x * (1.0 - x); }, 1.0, {}};
  const auto s = rajchman_scan(MeasureModel::density(g), 1000);
  EXPECT_EQ(s.verdict, "Rajchman-consistent");
  // Coefficients of the periodized density fall like 1/n^2.
  EXPECT_LE(s.profile[999], 2.0 * s.profile[99] / 100.0);
  EXPECT_THROW(rajchman_scan(MeasureModel::cantor(4), 5), ContractError);
}

TEST(Kaczmarz, FirstExponentialIsRecoveredInOneStep) {
  const auto mu = MeasureModel::cantor(6);
  const ComplexVector f = mu.discrete().exponential(0);
  const auto run = kaczmarz_run(mu, f, natural_sweep(3));
  EXPECT_LE(run.residuals[0], 1e-14);
}

TEST(Kaczmarz, ResidualsNeverIncrease) {
  Rng rng = make_rng(2);
  const MeasureModel measures[] = {MeasureModel::cantor(5), MeasureModel::atomic({0.1, 0.3, 0.35, 0.9}, {0.4, 0.1, 0.2, 0.3})};
  for (const auto& mu : measures) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_unit_vector(mu.size(), rng);
      std::vector<std::int64_t> sweep;
      for (int n = 0; n < 300; ++n) sweep.push_back(static_cast<std::int64_t>(rng() % 41) - 20);
      EXPECT_TRUE(kaczmarz_run(mu, f, sweep).monotone());
      EXPECT_TRUE(kaczmarz_run(mu, f, symmetric_sweep(200)).monotone());
    }
  }
}

TEST(Kaczmarz, RejectsNonProbabilityMeasure) {
  const auto mu = MeasureModel::atomic({0.1, 0.5}, {0.5, 0.7});
  EXPECT_THROW(kaczmarz_run(mu, ComplexVector(2), natural_sweep(2)), ContractError);
  EXPECT_THROW(kaczmarz_auxiliary(mu, natural_sweep(2)), ContractError);
}

TEST(Kaczmarz, CantorAtomsConvergeForSmoothTargets) {
  const auto mu = MeasureModel::cantor(8);
  const auto sweep = natural_sweep(2000);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = smooth_random_target(mu.discrete(), seed);
    const auto run = kaczmarz_run(mu, f, sweep);
    EXPECT_TRUE(run.monotone());
    EXPECT_LT(run.residuals.back(), 0.1 * run.target_norm) << seed;
  }
}

TEST(KaczmarzAuxiliary, OrthonormalExponentialsAreTheirOwnAuxiliary) {
  const auto mu = MeasureModel::density(WeightModel::constant(1.0), 16);
  const auto sweep = natural_sweep(16);
  const auto g = kaczmarz_auxiliary(mu, sweep);
  for (std::size_t n = 0; n < 16; ++n)
    EXPECT_LE((g[n] - mu.discrete().exponential(sweep[n])).norm(), 1e-13);
}

TEST(KaczmarzAuxiliary, DualPathMatchesIterates) {
  const auto mu = MeasureModel::cantor(8);
  const auto sweep = natural_sweep(501);
  const auto g = kaczmarz_auxiliary(mu, sweep);
  Rng rng = make_rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_unit_vector(mu.size(), rng);
    for (std::size_t n : {1u, 50u, 200u, 501u}) {
      const std::vector<std::int64_t> s(sweep.begin(), sweep.begin() + n);
      const std::vector<ComplexVector> gs(g.begin(), g.begin() + n);
      const auto x = kaczmarz_run(mu, f, s).iterate;
      EXPECT_LE((x - auxiliary_expansion(mu, gs, s, f)).norm(), 1e-10) << t << " " << n;
    }
  }
}

}  // namespace
}  // namespace frlab
