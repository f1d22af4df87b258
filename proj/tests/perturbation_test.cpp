#include <gtest/gtest.h>

#include <cmath>

#include "frlab/perturbation.hpp"

namespace frlab {
namespace {

TEST(Budget, ClosedFormValues) {
  EXPECT_NEAR(paley_wiener_budget(1.0, 1.0), std::sqrt(2.0) - 1.0, 2e-16);
  EXPECT_NEAR(paley_wiener_budget(1.0, 1.0 / 3.0), 1.0, 1e-15);
  EXPECT_THROW(paley_wiener_budget(0.0, 1.0), ContractError);
  EXPECT_THROW(paley_wiener_budget(INFINITY, 1.0), UnboundedSequence);
  EXPECT_THROW(paley_wiener_budget(1.0, 0.0), ContractError);
}

TEST(Budget, TightAtSufficientCondition) {
  for (double m : {0.1, 0.5, 1.0, 3.0, 100.0})
    for (double b : {1e-3, 0.2, 1.0, 7.0, 1e4}) {
      const double lam = paley_wiener_budget(m, b);
      EXPECT_NEAR(lam * (2.0 * m + lam) * b, 1.0, 1e-12) << m << " " << b;
    }
}

TEST(Budget, MonotoneInBothArguments) {
  const std::vector<double> ms{0.05, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3};
  const std::vector<double> bs{1e-4, 1e-2, 0.5, 1.0, 4.0, 1e2};
  for (double b : bs)
    for (std::size_t i = 1; i < ms.size(); ++i)
      EXPECT_LT(paley_wiener_budget(ms[i], b), paley_wiener_budget(ms[i - 1], b));
  for (double m : ms)
    for (std::size_t i = 1; i < bs.size(); ++i)
      EXPECT_LT(paley_wiener_budget(m, bs[i]), paley_wiener_budget(m, bs[i - 1]));
  const auto t = budget_table(ms, bs);
  EXPECT_EQ(t.rows.size(), ms.size() * bs.size());
}

TEST(Budget, UnboundedBaseRejected) {
  const auto grow = scaled_basis([](std::size_t n) { return n + 1.0; });
  auto [d, t] = zero_deltas();
  const auto h = perturb(grow, d, t);
  EXPECT_THROW(perturbation_budget(*grow, inverse_square_diagonal(), *h, 64), UnboundedSequence);
}

TEST(PerturbedOperator, ZeroPerturbationReturnsBase) {
  const auto base = repeated_basis();
  auto [d, t] = zero_deltas();
  const auto h = perturb(base, d, t);
  const auto p = perturbed_reconstruction_operator(*base, harmonic_diagonal(), *h, 10);
  EXPECT_LE(max_abs_diff(p.op.matrix(10), harmonic_diagonal().matrix(10)), 1e-14);
  EXPECT_EQ(p.budget.spent, 0.0);
}

TEST(PerturbedOperator, RepeatedBasisWithinBudgetReconstructs) {
  const auto base = repeated_basis();
  auto [d, t] = geometric_deltas(0.4, 0);
  const auto h = perturb(base, d, t);
  const auto p = perturbed_reconstruction_operator(*base, harmonic_diagonal(), *h, 10);
  EXPECT_NEAR(p.budget.spent, 0.4, 1e-15);
  EXPECT_NEAR(p.budget.budget, std::sqrt(2.0) - 1.0, 1e-15);
  const auto vs = random_unit_vectors(10, 100, 0);
  EXPECT_LE(does_frame_reconstruction(*h, p.op, vs, 10, 1e-8).max_residual, 1e-8);
  EXPECT_TRUE(std::isfinite(p.condition_T));
}

TEST(PerturbedOperator, AdmissibleAtEveryAlignedLevel) {
  const auto base = repeated_basis();
  for (double total : {0.1, 0.25, 0.4}) {
    auto [d, t] = geometric_deltas(total, 0);
    const auto h = perturb(base, d, t);
    for (std::size_t blocks : {1u, 4u, 10u, 16u, 22u}) {
      ASSERT_LE(base->count_at(blocks), 256u);
      const auto p = perturbed_reconstruction_operator(*base, harmonic_diagonal(), *h, blocks);
      const auto vs = random_unit_vectors(blocks, 20, blocks);
      const auto v = does_frame_reconstruction(*h, p.op, vs, blocks, 1e-8);
      EXPECT_EQ(v.verdict, FRStatus::Reconstructs) << total << " " << blocks << " " << v.max_residual;
    }
  }
}

TEST(PerturbedOperator, SingleDeltaMatchesRankOneUpdateOracle) {
  const std::size_t dim = 6;
  auto [d, t] = single_delta(0, 0.3, 1);
  const auto h = perturb(orthonormal_basis(), d, t);
  const auto p = perturbed_reconstruction_operator(*orthonormal_basis(), ReconstructionOperator::identity(), *h, dim);
  // S_h = I + h0 h0* - e0 e0*; invert by two Sherman-Morrison steps.
  ComplexVector h0 = ComplexVector::basis(dim, 0);
  h0[1] = 0.3;
  const ComplexVector e0 = ComplexVector::basis(dim, 0);
  auto outer = [&](const ComplexVector& a, const ComplexVector& b) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  };
  const ComplexMatrix c = ComplexMatrix::identity(dim) - (1.0 / (1.0 + h0.squared_norm())) * outer(h0, h0);
  const ComplexVector ce = c * e0;
  const double denom = 1.0 - dot(ce, e0).real();
  const ComplexMatrix oracle = c + (1.0 / denom) * outer(ce, ce);
  EXPECT_LE(max_abs_diff(p.op.matrix(dim), oracle), 1e-12);
  const auto vs = random_unit_vectors(dim, 10, 1);
  EXPECT_LE(does_frame_reconstruction(*h, p.op, vs, dim, 1e-12).max_residual, 1e-12);
}

TEST(PerturbedOperator, OverBudgetCarriesSpentAndBudget) {
  auto [d, t] = single_delta(0, 0.5, 1);
  const auto h = perturb(orthonormal_basis(), d, t);
  try {
    perturbed_reconstruction_operator(*orthonormal_basis(), ReconstructionOperator::identity(), *h, 4);
    FAIL() << "expected InadmissiblePerturbation";
  } catch (const InadmissiblePerturbation& e) {
    EXPECT_DOUBLE_EQ(e.spent, 0.5);
    EXPECT_NEAR(e.budget, std::sqrt(2.0) - 1.0, 1e-15);
  }
}

TEST(NonFramePersistence, HarmonicWitnessExponentsMatch) {
  const auto base = repeated_basis();
  const std::vector<std::size_t> blocks{4, 8, 16, 32, 64};
  auto [d, t] = geometric_deltas(0.4, 0);
  const auto h = perturb(base, d, t);
  const auto r = non_frame_persistence(*base, *h, harmonic_witness(), blocks);
  EXPECT_TRUE(r.all_pass());
  // Oracle: base sum is (6/pi^2) * H_L.
  const auto* tab = r.find_table("witness_sums");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    double harmonic = 0.0;
    for (std::size_t k = 1; k <= blocks[i]; ++k) harmonic += 1.0 / k;
    EXPECT_NEAR(tab->rows[i][2], 6.0 / (std::numbers::pi * std::numbers::pi) * harmonic, 1e-12);
  }
  auto [zd, zt] = zero_deltas();
  const auto same = non_frame_persistence(*base, *perturb(base, zd, zt), harmonic_witness(), blocks);
  EXPECT_EQ(same.checks[0].residual, 0.0);
}

TEST(NonFramePersistence, WitnessSumsPassCapSchedule) {
  const auto base = repeated_basis();
  auto [d, t] = geometric_deltas(0.4, 0);
  const auto h = perturb(base, d, t);
  const std::vector<std::size_t> blocks{8, 16, 64, 128, 512, 1024};
  const std::vector<double> caps{10, 100, 1000};
  const auto r = non_frame_persistence(*base, *h, last_coordinate_witness(), blocks, caps);
  EXPECT_TRUE(r.all_pass()) << r.verdict;
  EXPECT_DOUBLE_EQ(r.find_table("witness_sums")->rows.back()[3], 1024.0);
}

TEST(NonFramePersistence, RequiresNonBesselBase) {
  const std::vector<std::size_t> dims{4, 8, 16};
  auto [d, t] = zero_deltas();
  EXPECT_THROW(non_frame_persistence(*orthonormal_basis(), *perturb(orthonormal_basis(), d, t), harmonic_witness(),
                                     dims),
               PreconditionError);
}

}  // namespace
}  // namespace frlab
