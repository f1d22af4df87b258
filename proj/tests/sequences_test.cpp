#include <gtest/gtest.h>

#include <cmath>

#include "frlab/sequences.hpp"

namespace frlab {
namespace {

TEST(Truncation, GrowingBasisFrameOperatorIsSquaredDiagonal) {
  const auto seq = scaled_basis([](std::size_t n) { return n + 1.0; });
  const auto tf = truncate(*seq, 4);
  EXPECT_EQ(tf.dim(), 4u);
  EXPECT_EQ(tf.count(), 4u);
  EXPECT_EQ(max_abs_diff(tf.frame_op(), ComplexMatrix::diagonal({1, 4, 9, 16})), 0.0);
  EXPECT_EQ(max_abs_diff(tf.gram(), ComplexMatrix::diagonal({1, 4, 9, 16})), 0.0);
}

TEST(Truncation, OrthonormalBasisGivesIdentity) {
  const auto tf = truncate(*orthonormal_basis(), 5);
  EXPECT_EQ(max_abs_diff(tf.frame_op(), ComplexMatrix::identity(5)), 0.0);
}

TEST(Truncation, RepeatedBasisCountsBlockMultiplicities) {
  const auto seq = repeated_basis();
  const auto tf = truncate(*seq, 3);
  EXPECT_EQ(tf.dim(), 3u);
  EXPECT_EQ(tf.count(), 6u);
  EXPECT_EQ(max_abs_diff(tf.frame_op(), ComplexMatrix::diagonal({1, 2, 3})), 0.0);
  // e_0, e_1, e_1, e_2, e_2, e_2
  const std::size_t expected[] = {0, 1, 1, 2, 2, 2};
  for (std::size_t n = 0; n < 6; ++n) {
    ASSERT_EQ(tf.element(n).nnz(), 1u);
    EXPECT_EQ(tf.element(n).index[0], expected[n]);
    EXPECT_EQ(block_index(std::get<tags::BlockRepeated>(seq->tag()), n), expected[n]);
  }
}

TEST(Truncation, RejectsLevelZeroAndMisalignedEntryCounts) {
  EXPECT_THROW(truncate(*orthonormal_basis(), 0), ContractError);
  const auto seq = repeated_basis();
  EXPECT_EQ(seq->level_for_entries(10), 4u);
  EXPECT_THROW(seq->level_for_entries(4), ContractError);
}

TEST(Truncation, AnalysisSynthesisAgreeWithFrameOperator) {
  const auto seq = repeated_basis();
  const auto tf = truncate(*seq, 4);
  const ComplexMatrix s = tf.synthesis() * tf.analysis();
  EXPECT_LE(max_abs_diff(s, tf.frame_op()), 1e-15);
  const ComplexMatrix g = tf.analysis() * tf.synthesis();
  EXPECT_LE(max_abs_diff(g, tf.gram()), 1e-15);
}

TEST(ScaledBasis, RejectsNonPositiveCoefficients) {
  EXPECT_THROW(scaled_basis([](std::size_t n) { return n == 7 ? 0.0 : 1.0; }), PreconditionError);
  EXPECT_THROW(scaled_basis([](std::size_t n) { return -1.0 * (n + 1); }), PreconditionError);
}

TEST(IntegerOrdering, AlternatesAroundZero) {
  const std::int64_t expected[] = {0, 1, -1, 2, -2, 3, -3};
  for (std::size_t p = 0; p < 7; ++p) EXPECT_EQ(integer_index_at(p), expected[p]);
}

TEST(Exponentials, IntegerLevelHoldsSymmetricWindow) {
  auto m = std::make_shared<DiscreteMeasure>();
  for (int j = 0; j < 8; ++j) {
    m->points.push_back((j + 0.5) / 8.0);
    m->weights.push_back(1.0 / 8.0);
  }
  const auto seq = exponential_sequence(m, IndexSet::Integer);
  const auto tf = truncate(*seq, 3);
  EXPECT_EQ(tf.count(), 7u);
  EXPECT_EQ(tf.dim(), 8u);
  EXPECT_EQ(tf.indices(), (std::vector<std::int64_t>{0, 1, -1, 2, -2, 3, -3}));
  // Equal weights on a uniform grid: the exponentials are orthonormal.
  EXPECT_LE(max_abs_diff(tf.gram(), ComplexMatrix::identity(7)), 1e-14);
}

TEST(Perturbation, ZeroDeltasReproduceBase) {
  const auto base = scaled_basis([](std::size_t n) { return 1.0 / (n + 1.0); });
  auto [d, t] = zero_deltas();
  const auto h = perturb(base, d, t);
  const auto a = truncate(*base, 6);
  const auto b = truncate(*h, 6);
  EXPECT_EQ(max_abs_diff(a.frame_op(), b.frame_op()), 0.0);
  EXPECT_EQ(total_spent(*h, 6), 0.0);
}

TEST(Perturbation, GeometricBudgetBookkeeping) {
  auto [d, t] = geometric_deltas(0.4, 0);
  const auto h = perturb(orthonormal_basis(), d, t);
  for (std::size_t level : {1u, 5u, 20u}) {
    const double horizon = horizon_spent(*h, level);
    EXPECT_NEAR(horizon, 0.4 * (1.0 - std::ldexp(1.0, -static_cast<int>(level))), 1e-15);
    EXPECT_NEAR(total_spent(*h, level), 0.4, 1e-15);
  }
  EXPECT_LT(0.4, std::sqrt(2.0) - 1.0);
  EXPECT_THROW(horizon_spent(*orthonormal_basis(), 3), UnsupportedStructure);
}

TEST(Perturbation, RejectsInfiniteMajorant) {
  EXPECT_THROW(perturb(orthonormal_basis(), zero_deltas().first,
                       [](std::size_t) { return INFINITY; }),
               PreconditionError);
}

TEST(SparseVector, InnerProductConvention) {
  // <f, v> = sum f_i conj(v_i)
  const SparseVector v{{1}, {Complex(0, 1)}};
  ComplexVector f(3);
  f[1] = 2.0;
  EXPECT_EQ(v.inner_from(f), Complex(0, -2));
  const auto s = v.plus(SparseVector{{0, 1}, {1.0, 1.0}});
  EXPECT_EQ(s.nnz(), 2u);
  EXPECT_DOUBLE_EQ(s.squared_norm(), 1.0 + 2.0);
}

TEST(ReconstructionOperator, FastPathsMatchDenseEvaluation) {
  const auto b = inverse_square_diagonal();
  const auto m = b.matrix(6);
  EXPECT_DOUBLE_EQ(b.norm(6), op_norm(m));
  EXPECT_NEAR(b.min_eigenvalue(6), hermitian_eigenvalues(m).front(), 1e-16);
  const auto dense = ReconstructionOperator::dense(ComplexMatrix::identity(3));
  EXPECT_THROW(dense.matrix(4), ContractError);
}

}  // namespace
}  // namespace frlab
