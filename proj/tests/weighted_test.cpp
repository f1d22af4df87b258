#include <gtest/gtest.h>

#include <cmath>

#include "frlab/weighted.hpp"

namespace frlab {
namespace {

const std::vector<std::size_t> kWindows{4, 8, 16, 32, 64};

TEST(A2Constant, ConstantWeightsGiveOne) {
  for (double c : {1.0, 3.7, 1e-5}) {
    const auto r = a2_constant(WeightModel::constant(c), 8);
    EXPECT_NEAR(r.constant, 1.0, 1e-14) << c;
    EXPECT_FALSE(r.divergent);
  }
  EXPECT_THROW(a2_constant(WeightModel::constant(1.0), 3), ContractError);
}

TEST(A2Constant, InverseSquareRootSingularityIsStable) {
  const auto w = WeightModel::power(0.5, -0.5);
  std::vector<double> constants;
  for (std::size_t depth = 8; depth <= 12; ++depth) {
    const auto r = a2_constant(w, depth);
    EXPECT_FALSE(r.divergent) << depth;
    constants.push_back(r.constant);
  }
  for (double c : constants) EXPECT_NEAR(c, constants.front(), 1e-9 * constants.front());
  // Exact value for intervals touching the singularity is 4/3; the midpoint
  // rule slightly underestimates the singular average.
  EXPECT_GT(constants.front(), 1.2);
  EXPECT_LT(constants.front(), 4.0 / 3.0 + 1e-12);
}

TEST(A2Constant, StepWeightIsBoundedAboveAndBelow) {
  // 1e-8 on [0,1/2), 1 on [1/2,1): both w and 1/w are bounded, so the
  // product is largest on [0,1) and constant under refinement.
  const auto r = a2_constant(WeightModel::step(0.5, 1e-8, 1.0), 12);
  EXPECT_FALSE(r.divergent);
  EXPECT_NEAR(r.depth_sup[0], 0.25 * (1.0 + 1e-8) * (1.0 + 1e8), 1e-6 * 2.5e7);
  for (std::size_t d = 1; d < r.depth_sup.size(); ++d) EXPECT_NEAR(r.depth_sup[d], 1.0, 1e-12);
}

TEST(A2Constant, FlatZeroWeightDiverges) {
  const auto r = a2_constant(WeightModel::flat_zero(), 12);
  EXPECT_TRUE(r.divergent);
}

TEST(A2Constant, NonIntegrableSingularityGrowsWithResolution) {
  // Midpoint averages near |x - 1/2|^-1 are scale invariant in the depth, so
  // the blow-up only shows as the grid is refined, logarithmically.
  const auto w = WeightModel::power(0.5, -1.0);
  const double coarse = a2_constant(w, 8, 1024).constant;
  const double fine = a2_constant(w, 8, 16384).constant;
  EXPECT_TRUE(std::isfinite(fine));
  EXPECT_GT(fine, coarse + 1.0);
}

TEST(PartialSum, ExactForLowFrequencies) {
  const auto x = midpoint_grid(64);
  std::vector<Complex> f(64);
  for (std::size_t j = 0; j < 64; ++j) f[j] = std::exp(Complex(0.0, kTwoPi * x[j]));
  const auto s = weighted_partial_sum(WeightModel::constant(1.0), f, 3);
  EXPECT_LE(s.weighted_residual, 1e-28);
  std::vector<Complex> g(64);
  Complex mean{0.0, 0.0};
  for (std::size_t j = 0; j < 64; ++j) {
    g[j] = x[j] * x[j];
    mean += g[j] / 64.0;
  }
  const auto s0 = weighted_partial_sum(WeightModel::constant(1.0), g, 0);
  for (const auto& v : s0.values) EXPECT_NEAR(std::abs(v - mean), 0.0, 1e-15);
}

TEST(PartialSum, SingularWeightResidualDecreases) {
  const auto w = WeightModel::power(0.5, -0.5);
  const auto x = midpoint_grid(kDefaultGrid);
  for (const auto& [name, fn] : smooth_test_functions()) {
    std::vector<Complex> f(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) f[j] = fn(x[j]);
    double prev = INFINITY;
    for (std::size_t m : kWindows) {
      const double r = weighted_partial_sum(w, f, m).weighted_residual;
      EXPECT_LT(r, prev) << name << " " << m;
      prev = r;
    }
  }
}

TEST(WeightCancellation, DualInnerProductsMatchLebesgueGrid) {
  Rng rng = make_rng(6);
  std::vector<double> table(256);
  for (double& v : table) v = 0.1 + 10.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const WeightModel w{"random steps", [&](double x) { return table[std::min<std::size_t>(255, x * 256)]; }, 0.1, {}};
  const auto mu = MeasureModel::density(w, 512);
  const auto leb = MeasureModel::density(WeightModel::constant(1.0), 512);
  const auto b = inverse_weight_operator(mu.discrete(), w);
  for (std::int64_t n = -6; n <= 6; ++n)
    for (std::int64_t k = -6; k <= 6; ++k) {
      const ComplexVector en = mu.discrete().exponential(n);
      const ComplexVector bek = b.apply(mu.discrete().exponential(k));
      const Complex weighted = dot(en, bek);
      const Complex plain = dot(leb.discrete().exponential(n), leb.discrete().exponential(k));
      EXPECT_NEAR(std::abs(weighted - plain), 0.0, 1e-15);
    }
}

TEST(ExponentialCheck, LebesgueWeightIsRiesz) {
  const auto r = exponential_fr_check(WeightModel::constant(1.0), kWindows, 4, 0, 1024);
  EXPECT_EQ(r.verdict, "Riesz");
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.residual;
}

TEST(ExponentialCheck, SingularWeightReconstructsButIsNotRiesz) {
  const auto r = exponential_fr_check(WeightModel::power(0.5, -0.5), kWindows, 4, 0);
  EXPECT_EQ(r.verdict, "Schauder-FR-not-Riesz");
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.residual;
  EXPECT_LE(r.find_check("biorthogonality")->residual, 1e-12);
  EXPECT_GT(r.find_observation("bessel_growth_exponent")->value, kDivergingExponent);
}

TEST(ExponentialCheck, RequiresPositiveFloor) {
  EXPECT_THROW(exponential_fr_check(WeightModel::power(0.5, 1.0), kWindows), PreconditionError);
  EXPECT_THROW(exponential_fr_check(WeightModel::flat_zero(), kWindows), PreconditionError);
}

}  // namespace
}  // namespace frlab
