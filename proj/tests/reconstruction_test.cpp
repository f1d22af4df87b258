#include <gtest/gtest.h>

#include <cmath>

#include "frlab/reconstruction.hpp"

namespace frlab {
namespace {

SequencePtr growing_basis() {
  return scaled_basis([](std::size_t n) { return n + 1.0; });
}
SequencePtr shrinking_basis() {
  return scaled_basis([](std::size_t n) { return 1.0 / (n + 1.0); });
}

TEST(FrameReconstruction, GrowingBasisRecoversCoordinateVector) {
  const auto seq = growing_basis();
  for (std::size_t n : {4u, 9u, 33u}) {
    const std::vector<ComplexVector> f{ComplexVector::basis(n, 3)};
    const auto v = does_frame_reconstruction(*seq, inverse_square_diagonal(), f, n, 1e-12);
    EXPECT_EQ(v.max_residual, 0.0);
    EXPECT_EQ(v.verdict, FRStatus::Reconstructs);
  }
}

TEST(FrameReconstruction, OrthonormalBasisWithIdentity) {
  const auto vs = random_unit_vectors(12, 10, 5);
  const auto v = does_frame_reconstruction(*orthonormal_basis(), ReconstructionOperator::identity(), vs, 12, 1e-12);
  EXPECT_LE(v.max_residual, 1e-15);
}

TEST(FrameReconstruction, RepeatedBasisMatchesBlockTelescopingOracle) {
  const auto seq = repeated_basis();
  const auto vs = random_unit_vectors(10, 100, 17);
  const auto v = does_frame_reconstruction(*seq, harmonic_diagonal(), vs, 10, 1e-10);
  EXPECT_LE(v.max_residual, 1e-10);
  // Oracle: block k contributes (k+1) copies of <f, e_k/(k+1)> e_k = f_k e_k / (k+1).
  for (const auto& f : vs) {
    ComplexVector acc(10);
    for (std::size_t k = 0; k < 10; ++k)
      for (std::size_t copy = 0; copy <= k; ++copy) acc[k] += f[k] / (k + 1.0);
    EXPECT_LE((acc - f).norm(), 1e-14);
  }
  EXPECT_DOUBLE_EQ(v.B_norm, 1.0);
  EXPECT_DOUBLE_EQ(v.B_min_eig, 0.1);
}

TEST(FrameReconstruction, ShippedPairsAtEveryAlignedLevel) {
  const auto grow = growing_basis();
  const auto rep = repeated_basis();
  for (std::size_t n : {1u, 2u, 8u, 64u, 256u, 512u}) {
    const auto vs = random_unit_vectors(n, 100, n);
    EXPECT_LE(does_frame_reconstruction(*grow, inverse_square_diagonal(), vs, n, 1e-10).max_residual, 1e-10) << n;
  }
  for (std::size_t blocks = 1; blocks <= 31; blocks += 3) {
    ASSERT_LE(rep->count_at(blocks), 512u);
    const auto vs = random_unit_vectors(blocks, 100, blocks);
    EXPECT_LE(does_frame_reconstruction(*rep, harmonic_diagonal(), vs, blocks, 1e-10).max_residual, 1e-10)
        << blocks;
  }
}

TEST(FrameReconstruction, ContractErrors) {
  const std::vector<ComplexVector> f{ComplexVector::basis(4, 0)};
  const auto dense = ReconstructionOperator::dense(ComplexMatrix::identity(3));
  EXPECT_THROW(does_frame_reconstruction(*orthonormal_basis(), dense, f, 4, 1e-9), ContractError);
  EXPECT_THROW(does_frame_reconstruction(*orthonormal_basis(), dense, f, 4, 0.0), ContractError);
  EXPECT_THROW(does_frame_reconstruction(*orthonormal_basis(), dense, {}, 4, 1e-9), ContractError);
}

TEST(ConstructB, MatchesClosedForms) {
  const auto b = construct_B(*growing_basis(), 4);
  EXPECT_LE(max_abs_diff(b.matrix(4), ComplexMatrix::diagonal({1, 0.25, 1.0 / 9, 1.0 / 16})), 1e-15);
  EXPECT_LE(max_abs_diff(construct_B(*orthonormal_basis(), 7).matrix(7), ComplexMatrix::identity(7)), 1e-15);
  EXPECT_LE(max_abs_diff(construct_B(*shrinking_basis(), 4).matrix(4), ComplexMatrix::diagonal({1, 4, 9, 16})),
            1e-12);
}

TEST(ConstructB, RightInverseOfFrameOperatorForRandomSpanningFamilies) {
  Rng rng = make_rng(31);
  for (std::size_t d : {3u, 7u, 15u}) {
    std::vector<ComplexVector> vs;
    for (std::size_t k = 0; k < 2 * d; ++k) vs.push_back(random_unit_vector(d, rng));
    const auto seq = explicit_sequence(vs);
    const auto b = construct_B(*seq, 2 * d);
    const auto tf = truncate(*seq, 2 * d);
    const auto m = b.matrix(d);
    EXPECT_LE(max_abs_diff(tf.frame_op() * m, ComplexMatrix::identity(d)), 1e-9);
    EXPECT_LE(hermitian_residual(m), 1e-12);
    EXPECT_GT(hermitian_eigenvalues(m).front(), 0.0);
    const auto vsn = random_unit_vectors(d, 20, d);
    EXPECT_LE(does_frame_reconstruction(*seq, b, vsn, 2 * d, 1e-9).max_residual, 1e-9);
  }
}

TEST(ConstructB, RankDeficientFamilyRaisesSpanError) {
  const auto seq = explicit_sequence({ComplexVector::basis(3, 0), ComplexVector::basis(3, 1)});
  try {
    construct_B(*seq, 2);
    FAIL() << "expected SpanError";
  } catch (const SpanError& e) {
    EXPECT_EQ(e.rank, 2u);
    EXPECT_EQ(e.dim, 3u);
  }
}

TEST(FrScan, ShrinkingBasisCandidateDiverges) {
  const std::vector<std::size_t> dims{8, 16, 32, 64, 128};
  const auto v = fr_scan(*shrinking_basis(), synthesized_operator(), dims, 10, 0, kExactTolerance);
  EXPECT_NEAR(v.norm_growth_exponent, 2.0, 0.1);
  EXPECT_EQ(v.verdict, FRStatus::DivergingCandidate);
  EXPECT_TRUE(v.stable_across_dims);
  const auto g = fr_scan(*growing_basis(), synthesized_operator(), dims, 10, 0, kExactTolerance);
  EXPECT_EQ(g.verdict, FRStatus::Reconstructs);
  EXPECT_NEAR(g.norm_growth_exponent, 0.0, 1e-12);
}

TEST(FrScan, ShortScansNeverFlagDivergence) {
  const std::vector<std::size_t> dims{8, 16, 32};
  const auto v = fr_scan(*shrinking_basis(), synthesized_operator(), dims, 4, 0, kExactTolerance);
  EXPECT_EQ(v.verdict, FRStatus::Reconstructs);
}

TEST(Uniqueness, ShippedOperatorsMatchSynthesized) {
  EXPECT_LE(uniqueness_residual(*growing_basis(), inverse_square_diagonal(), construct_B(*growing_basis(), 64), 64),
            1e-10);
  EXPECT_EQ(uniqueness_residual(*orthonormal_basis(), ReconstructionOperator::identity(),
                                ReconstructionOperator::identity(), 9),
            0.0);
  EXPECT_LE(uniqueness_residual(*repeated_basis(), harmonic_diagonal(), construct_B(*repeated_basis(), 10), 10),
            1e-9);
  EXPECT_THROW(uniqueness_residual(*growing_basis(), ReconstructionOperator::identity(),
                                   inverse_square_diagonal(), 8),
               PreconditionError);
}

TEST(PropertyBattery, BothShippedPairsPassAllChecks) {
  const auto a = reconstruction_battery(*growing_basis(), inverse_square_diagonal(), 64, 100, 0);
  EXPECT_TRUE(a.all_pass());
  EXPECT_EQ(a.checks.size(), 5u + 1u);
  const auto b = reconstruction_battery(*repeated_basis(), harmonic_diagonal(), 10, 100, 0);
  EXPECT_TRUE(b.all_pass());
  for (const auto& c : b.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.residual;
  const auto* p = b.find_check("sqrt_parseval");
  ASSERT_NE(p, nullptr);
  EXPECT_LE(p->residual, 1e-10);
}

TEST(PropertyBattery, LowerBoundTightAtFirstCoordinate) {
  const auto tf = truncate(*growing_basis(), 16);
  const auto b = inverse_square_diagonal();
  const auto s = inequality_slacks(tf, b, ComplexVector::basis(16, 0), b.norm(16));
  EXPECT_NEAR(s.lower, 0.0, 1e-12);
  EXPECT_NEAR(s.bessel, 0.0, 1e-12);
}

TEST(PropertyBattery, WrongOperatorFailsSeriesCheck) {
  const auto r = reconstruction_battery(*growing_basis(), ReconstructionOperator::identity(), 8, 10, 0);
  EXPECT_FALSE(r.find_check("dual_series")->pass);
}

TEST(FrameCertificate, GrowingBasisHasNone) {
  const std::vector<std::size_t> dims{4, 16, 64, 256};
  const auto r = frame_certificate(*growing_basis(), fixed_operator(inverse_square_diagonal()), dims);
  EXPECT_EQ(r.verdict, "no-frame-certificate");
  for (const auto& o : r.observations) EXPECT_FALSE(o.holds) << o.name;
  EXPECT_TRUE(r.all_pass());
}

TEST(FrameCertificate, OrthonormalBasisCertified) {
  const std::vector<std::size_t> dims{4, 8, 16, 32};
  const auto r = frame_certificate(*orthonormal_basis(), fixed_operator(ReconstructionOperator::identity()), dims);
  EXPECT_EQ(r.verdict, "frame-certificate");
  for (const auto& o : r.observations) EXPECT_TRUE(o.holds) << o.name;
  EXPECT_TRUE(r.all_pass());
}

TEST(FrameCertificate, RepeatedBasisHasNone) {
  const std::vector<std::size_t> blocks{3, 6, 10, 20};
  const auto r = frame_certificate(*repeated_basis(), fixed_operator(harmonic_diagonal()), blocks);
  EXPECT_EQ(r.verdict, "no-frame-certificate");
  EXPECT_TRUE(r.all_pass());
}

TEST(SchauderClassifier, VerdictsOnDiagonalFamilies) {
  const std::vector<std::size_t> dims{8, 16, 32, 64, 128};
  const auto grow = schauder_fr_classifier(*growing_basis(), dims);
  EXPECT_EQ(grow.verdict, "reconstructs");
  EXPECT_TRUE(grow.all_pass());
  const auto flat = schauder_fr_classifier(*orthonormal_basis(), dims);
  EXPECT_EQ(flat.verdict, "reconstructs");
  const auto shrink = schauder_fr_classifier(*shrinking_basis(), dims);
  EXPECT_EQ(shrink.verdict, "diverging-candidate");
  EXPECT_TRUE(shrink.all_pass());
  EXPECT_NEAR(shrink.find_observation("candidate_norm_exponent")->value, 2.0, 0.1);
}

TEST(SchauderClassifier, AgreesWithInfTestAcrossCoefficientRules) {
  const std::vector<std::size_t> dims{8, 16, 32, 64};
  const std::vector<CoefficientRule> rules{
      [](std::size_t n) { return 2.0 + std::sin(n); },
      [](std::size_t n) { return 1.0 / std::sqrt(n + 1.0); },
      [](std::size_t n) { return std::pow(n + 1.0, 0.3); },
      [](std::size_t n) { return std::pow(n + 1.0, -1.5); },
      [](std::size_t n) { return n % 2 ? 1.0 : 3.0; },
  };
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto r = schauder_fr_classifier(*scaled_basis(rules[i]), dims, 5, i);
    EXPECT_TRUE(r.all_pass()) << i << " " << r.verdict;
  }
}

TEST(SchauderClassifier, RejectsNonDiagonalStructure) {
  const std::vector<std::size_t> dims{2, 4};
  EXPECT_THROW(schauder_fr_classifier(*repeated_basis(), dims), UnsupportedStructure);
}

TEST(NormalizedDuals, GrowingBasisAndOrthonormalAreDual) {
  const std::vector<std::size_t> dims{4, 8, 16, 32};
  const auto g = normalized_dual_check(*growing_basis(), inverse_square_diagonal(), dims);
  EXPECT_EQ(g.verdict, "dual-frames");
  EXPECT_TRUE(g.all_pass());
  const auto o = normalized_dual_check(*orthonormal_basis(), ReconstructionOperator::identity(), dims);
  EXPECT_EQ(o.verdict, "dual-frames");
  EXPECT_TRUE(o.all_pass());
}

TEST(NormalizedDuals, RepeatedBasisFailsWithLinearBesselGrowth) {
  const std::vector<std::size_t> blocks{3, 6, 10, 20};
  const auto r = normalized_dual_check(*repeated_basis(), harmonic_diagonal(), blocks);
  EXPECT_EQ(r.verdict, "not-dual-frames");
  EXPECT_TRUE(r.all_pass());
  EXPECT_NEAR(r.find_observation("normalized_upper_exponent")->value, 1.0, 1e-9);
  const auto* t = r.find_table("normalized_scan");
  for (std::size_t i = 0; i < blocks.size(); ++i) EXPECT_DOUBLE_EQ(t->rows[i][3], double(blocks[i]));
}

TEST(NormalizedDuals, BoundedMultiplicityIsFiniteUnion) {
  const auto seq = repeated_basis([](std::size_t) { return std::size_t{2}; });
  const std::vector<std::size_t> blocks{4, 8, 16, 32};
  const auto r = normalized_dual_check(*seq, ReconstructionOperator::diagonal([](std::size_t) { return 0.5; }, "half"),
                                       blocks);
  EXPECT_EQ(r.verdict, "dual-frames");
  EXPECT_TRUE(r.all_pass());
}

TEST(NormalizedDuals, ZeroVectorRejected) {
  const auto seq = explicit_sequence({ComplexVector::basis(2, 0), ComplexVector(2)});
  const std::vector<std::size_t> levels{2};
  EXPECT_THROW(normalized_dual_check(*seq, ReconstructionOperator::identity(), levels), PreconditionError);
}

}  // namespace
}  // namespace frlab
