#pragma once

// Frame reconstruction: f = sum_n <f, B f_n> f_n. Verification at a level,
// dimension scans with divergence detection, synthesis of the unique B from
// the truncated frame operator, and the property batteries built on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/fit.hpp"
#include "frlab/frame_analysis.hpp"
#include "frlab/linalg.hpp"
#include "frlab/random.hpp"
#include "frlab/report.hpp"
#include "frlab/sequences.hpp"

namespace frlab {

inline constexpr double kExactTolerance = 1e-9;
/// Fitted norm growth exponent above which a candidate B is declared diverging.
inline constexpr double kDivergingExponent = 0.1;
inline constexpr std::size_t kMinDivergenceScan = 4;

enum class FRStatus { Reconstructs, Fails, DivergingCandidate };

inline const char* to_string(FRStatus s) {
  switch (s) {
    case FRStatus::Reconstructs: return "reconstructs";
    case FRStatus::Fails: return "fails";
    default: return "diverging-candidate";
  }
}

struct FRVerdict {
  std::vector<double> residuals;  // per test vector, at the last level evaluated
  double max_residual = 0.0;      // over every vector and level
  double B_norm = 0.0;
  double B_min_eig = 0.0;
  bool stable_across_dims = true;
  double norm_growth_exponent = 0.0;
  double tolerance = 0.0;
  FRStatus verdict = FRStatus::Fails;
  ScanTable table{"fr_scan", {"level", "dim", "max_residual", "B_norm", "B_min_eig"}, {}};
};

/// Builds the reconstruction operator to test at a given level.
using OperatorFactory = std::function<ReconstructionOperator(const VectorSequence&, std::size_t level)>;

inline OperatorFactory fixed_operator(ReconstructionOperator b) {
  return [b = std::move(b)](const VectorSequence&, std::size_t) { return b; };
}

/// ||sum_n <f, B f_n> f_n - f|| for each f. <f, B f_n> is evaluated as
/// <B* f, f_n> so B is applied once per vector.
inline std::vector<double> fr_residuals(const TruncationFrame& tf, const ReconstructionOperator& b,
                                        std::span<const ComplexVector> vectors) {
  b.check_dim(tf.dim());
  std::vector<double> out;
  out.reserve(vectors.size());
  for (const auto& f : vectors) {
    if (f.dim() != tf.dim()) throw ContractError("frame reconstruction: test vector dimension mismatch");
    const ComplexVector g = b.apply_adjoint(f);
    ComplexVector acc(tf.dim());
    for (const auto& e : tf.elements()) e.add_to(acc, e.inner_from(g));
    out.push_back((acc - f).norm());
  }
  return out;
}

inline FRVerdict does_frame_reconstruction(const VectorSequence& seq, const ReconstructionOperator& b,
                                           std::span<const ComplexVector> test_vectors, std::size_t level,
                                           double tol) {
  if (!(tol > 0.0)) throw ContractError("does_frame_reconstruction: tolerance must be positive");
  if (test_vectors.empty()) throw ContractError("does_frame_reconstruction: no test vectors");
  const TruncationFrame tf = truncate(seq, level);
  FRVerdict v;
  v.tolerance = tol;
  v.residuals = fr_residuals(tf, b, test_vectors);
  v.max_residual = *std::max_element(v.residuals.begin(), v.residuals.end());
  v.B_norm = b.norm(tf.dim());
  v.B_min_eig = b.min_eigenvalue(tf.dim());
  v.verdict = v.max_residual <= tol ? FRStatus::Reconstructs : FRStatus::Fails;
  v.table.rows.push_back({static_cast<double>(level), static_cast<double>(tf.dim()), v.max_residual, v.B_norm,
                          v.B_min_eig});
  return v;
}

/// FR at every level of an ascending scan with `trials` seeded unit vectors
/// per level. A candidate whose norm grows with exponent above 0.1 over at
/// least four levels is reported as diverging regardless of residuals.
inline FRVerdict fr_scan(const VectorSequence& seq, const OperatorFactory& factory,
                         std::span<const std::size_t> levels, std::size_t trials, std::uint64_t seed,
                         double tol) {
  require_ascending(levels, "fr_scan");
  if (trials < 1) throw ContractError("fr_scan: trials must be at least 1");
  if (!(tol > 0.0)) throw ContractError("fr_scan: tolerance must be positive");
  FRVerdict v;
  v.tolerance = tol;
  std::vector<double> norms;
  std::vector<double> dims;
  ComplexMatrix previous;
  for (std::size_t level : levels) {
    const TruncationFrame tf = truncate(seq, level);
    const ReconstructionOperator b = factory(seq, level);
    const auto vectors = random_unit_vectors(tf.dim(), trials, seed);
    v.residuals = fr_residuals(tf, b, vectors);
    const double mx = *std::max_element(v.residuals.begin(), v.residuals.end());
    v.max_residual = std::max(v.max_residual, mx);
    v.B_norm = b.norm(tf.dim());
    v.B_min_eig = b.min_eigenvalue(tf.dim());
    norms.push_back(v.B_norm);
    dims.push_back(static_cast<double>(tf.dim()));
    if (!b.is_diagonal()) {
      const ComplexMatrix m = b.matrix(tf.dim());
      if (previous.rows() > 0) {
        const std::size_t k = std::min(previous.rows(), m.rows());
        const double diff = max_abs_diff(previous.leading_block(k), m.leading_block(k));
        if (diff > kExactTolerance * std::max(1.0, m.max_abs())) v.stable_across_dims = false;
      }
      previous = m;
    }
    v.table.rows.push_back({static_cast<double>(level), static_cast<double>(tf.dim()), mx, v.B_norm, v.B_min_eig});
  }
  v.norm_growth_exponent = growth_exponent(dims, norms);
  if (levels.size() >= kMinDivergenceScan && v.norm_growth_exponent > kDivergingExponent)
    v.verdict = FRStatus::DivergingCandidate;
  else
    v.verdict = v.max_residual <= tol ? FRStatus::Reconstructs : FRStatus::Fails;
  return v;
}

/// B_N = (pinv(S_N) + pinv(S_N)*) / 2.
inline ReconstructionOperator construct_B(const VectorSequence& seq, std::size_t level,
                                          double rank_tol = kDefaultRankTolerance) {
  const TruncationFrame tf = truncate(seq, level);
  const ComplexMatrix s = tf.frame_op();
  const std::size_t rank = numerical_rank(s, rank_tol);
  if (rank < tf.dim()) throw SpanError(rank, tf.dim());
  return ReconstructionOperator::dense(hermitian_part(pinv(s, rank_tol)),
                                       "pinv of the truncated frame operator");
}

inline OperatorFactory synthesized_operator(double rank_tol = kDefaultRankTolerance) {
  return [rank_tol](const VectorSequence& seq, std::size_t level) { return construct_B(seq, level, rank_tol); };
}

/// ||B_N - V_N|| after confirming both operators reconstruct at `level`.
inline double uniqueness_residual(const VectorSequence& seq, const ReconstructionOperator& b,
                                  const ReconstructionOperator& v, std::size_t level,
                                  double tol = 1e-8, std::uint64_t seed = 0) {
  const std::size_t dim = seq.dim_at(level);
  const auto vectors = random_unit_vectors(dim, 8, seed);
  for (const auto* op : {&b, &v}) {
    const auto r = does_frame_reconstruction(seq, *op, vectors, level, tol);
    if (r.verdict != FRStatus::Reconstructs)
      throw PreconditionError("uniqueness_residual: operator '" + op->description() +
                              "' does not reconstruct (residual " + format_17g(r.max_residual) + ")");
  }
  const ComplexMatrix diff = b.matrix(dim) - v.matrix(dim);
  return diff.max_abs() == 0.0 ? 0.0 : op_norm(diff);
}

/// The family {B f_n} at a truncation.
inline TruncationFrame mapped(const TruncationFrame& tf, const ReconstructionOperator& b) {
  std::vector<SparseVector> out;
  out.reserve(tf.count());
  for (const auto& e : tf.elements()) out.push_back(SparseVector::from_dense(b.apply(e, tf.dim())));
  return {tf.level(), tf.dim(), tf.index_set(), tf.indices(), std::move(out)};
}

/// The family {B^(1/2) f_n}.
inline TruncationFrame sqrt_mapped(const TruncationFrame& tf, const ReconstructionOperator& b) {
  if (const auto* d = std::get_if<ReconstructionOperator::DiagonalRule>(&b.representation())) {
    const auto rule = d->d;
    return mapped(tf, ReconstructionOperator::diagonal(
                          [rule](std::size_t k) {
                            const double x = rule(k);
                            if (x < 0.0) throw PsdViolation(x, x);
                            return std::sqrt(x);
                          },
                          "sqrt"));
  }
  return transformed(tf, psd_sqrt(hermitian_part(b.matrix(tf.dim()))));
}

struct InequalitySlacks {
  double bessel = 0.0;  // ||B|| ||f||^2 - sum |<f, B f_n>|^2
  double lower = 0.0;   // sum |<f, f_n>|^2 - ||f||^2 / ||B||
  double bessel_scale = 0.0;
  double lower_scale = 0.0;
};

inline InequalitySlacks inequality_slacks(const TruncationFrame& tf, const ReconstructionOperator& b,
                                          const ComplexVector& f, double b_norm) {
  const ComplexVector g = b.apply_adjoint(f);
  double mapped_sum = 0.0;
  double plain_sum = 0.0;
  for (const auto& e : tf.elements()) {
    mapped_sum += std::norm(e.inner_from(g));
    plain_sum += std::norm(e.inner_from(f));
  }
  const double ff = f.squared_norm();
  InequalitySlacks s;
  s.bessel = b_norm * ff - mapped_sum;
  s.lower = plain_sum - ff / b_norm;
  s.bessel_scale = std::max(b_norm * ff, mapped_sum);
  s.lower_scale = std::max(plain_sum, ff / b_norm);
  return s;
}

inline double normalized(double slack, double scale) { return scale > 0.0 ? slack / scale : slack; }

/// Relative slack below which an inequality counts as violated.
inline constexpr double kInequalitySlack = 1e-12;

/// Five checks on a reconstruction pair at one level: B positive and
/// injective, both dual series reconstruct, the Bessel bound ||B|| for
/// {B f_n}, the lower frame bound 1/||B|| for {f_n}, and Parseval for
/// {B^(1/2) f_n}.
inline PropertyReport reconstruction_battery(const VectorSequence& seq, const ReconstructionOperator& b,
                                      std::size_t level, std::size_t trials, std::uint64_t seed,
                                      double tol = kExactTolerance) {
  if (trials < 1) throw ContractError("reconstruction_battery: trials must be at least 1");
  const TruncationFrame tf = truncate(seq, level);
  b.check_dim(tf.dim());
  const double b_norm = b.norm(tf.dim());
  const double min_eig = b.min_eigenvalue(tf.dim());

  PropertyReport rep;
  rep.name = "reconstruction_operator_properties";
  rep.anchor = "properties forced on B by f = sum <f, B f_n> f_n";
  rep.checks.push_back(Check::at_least("psd", "B is positive semi-definite", min_eig, -1e-10 * b_norm, seed,
                                       "smallest eigenvalue of B_N"));
  rep.checks.push_back(Check::at_least("injective", "B is injective", min_eig, kDefaultRankTolerance * b_norm,
                                       seed, "smallest eigenvalue strictly positive at rank tolerance"));

  std::vector<ComplexVector> images;
  images.reserve(tf.count());
  for (const auto& e : tf.elements()) images.push_back(b.apply(e, tf.dim()));

  const auto vectors = random_unit_vectors(tf.dim(), trials, seed);
  ScanTable trial_table{"trials", {"trial", "residual_B_after", "residual_B_before", "bessel_slack", "lower_slack"}, {}};
  double worst_series = 0.0;
  double worst_bessel = std::numeric_limits<double>::infinity();
  double worst_lower = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    const ComplexVector& f = vectors[t];
    // sum <f, f_n> B f_n
    ComplexVector after(tf.dim());
    for (std::size_t n = 0; n < tf.count(); ++n) after.axpy(tf.element(n).inner_from(f), images[n]);
    // sum <B f, f_n> f_n
    const ComplexVector bf = b.apply(f);
    ComplexVector before(tf.dim());
    for (const auto& e : tf.elements()) e.add_to(before, e.inner_from(bf));
    const double ra = (after - f).norm();
    const double rb = (before - f).norm();
    worst_series = std::max({worst_series, ra, rb});
    const auto s = inequality_slacks(tf, b, f, b_norm);
    const double sb = normalized(s.bessel, s.bessel_scale);
    const double sl = normalized(s.lower, s.lower_scale);
    worst_bessel = std::min(worst_bessel, sb);
    worst_lower = std::min(worst_lower, sl);
    trial_table.rows.push_back({static_cast<double>(t), ra, rb, sb, sl});
  }
  rep.checks.push_back(Check::at_most("dual_series", "sum <f, f_n> B f_n = sum <B f, f_n> f_n = f", worst_series,
                                      tol, seed, "worst residual over both summation paths"));
  rep.checks.push_back(Check::at_least("bessel_bound", "sum |<f, B f_n>|^2 <= ||B|| ||f||^2", worst_bessel,
                                       -kInequalitySlack, seed, "smallest relative slack over trials"));
  rep.checks.push_back(Check::at_least("lower_bound", "||f||^2 / ||B|| <= sum |<f, f_n>|^2", worst_lower,
                                       -kInequalitySlack, seed, "smallest relative slack over trials"));
  const auto parseval = is_parseval(sqrt_mapped(tf, b), tol);
  rep.checks.push_back(Check::at_most("sqrt_parseval", "{B^(1/2) f_n} is a Parseval frame", parseval.residual,
                                      tol, seed, "||S - I|| for the family B^(1/2) f_n"));
  rep.observations.push_back(Observation::make("B_norm", b_norm, Comparison::AtMost,
                                               std::numeric_limits<double>::infinity()));
  rep.tables.push_back(std::move(trial_table));
  rep.verdict = rep.all_pass() ? "consistent" : "violated";
  return rep;
}

/// Finite proxies for the conditions under which a reconstructing sequence
/// must be a frame: {f_n} Bessel, B bounded below, {B f_n} with a lower
/// frame bound, inf ||B f_n|| > 0. Any proxy holding issues a certificate.
inline PropertyReport frame_certificate(const VectorSequence& seq, const OperatorFactory& factory,
                                          std::span<const std::size_t> levels, std::size_t trials = 20,
                                          std::uint64_t seed = 0, double tol = kExactTolerance) {
  require_ascending(levels, "frame_certificate");
  PropertyReport rep;
  rep.name = "frame_certificate";
  rep.anchor = "a reconstructing sequence is a frame under any of four conditions";
  ScanTable table{"certificate_scan",
                  {"level", "dim", "A", "B_upper", "B_norm", "B_min_eig", "mapped_lower", "min_mapped_norm",
                   "fr_residual"},
                  {}};
  std::vector<double> dims, upper, min_eig, mapped_lower, min_mapped, lower_gap;
  double worst_residual = 0.0;
  for (std::size_t level : levels) {
    const TruncationFrame tf = truncate(seq, level);
    const ReconstructionOperator b = factory(seq, level);
    const auto vectors = random_unit_vectors(tf.dim(), trials, seed);
    const auto res = fr_residuals(tf, b, vectors);
    const double r = *std::max_element(res.begin(), res.end());
    worst_residual = std::max(worst_residual, r);
    const auto bounds = frame_bounds(tf);
    const TruncationFrame images = mapped(tf, b);
    const auto mb = frame_bounds(images);
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& e : images.elements()) mn = std::min(mn, e.norm());
    const double bn = b.norm(tf.dim());
    const double be = b.min_eigenvalue(tf.dim());
    dims.push_back(static_cast<double>(tf.dim()));
    upper.push_back(bounds.upper);
    min_eig.push_back(be);
    mapped_lower.push_back(mb.lower);
    min_mapped.push_back(mn);
    lower_gap.push_back(bounds.lower - 1.0 / bn);
    table.rows.push_back({static_cast<double>(level), static_cast<double>(tf.dim()), bounds.lower, bounds.upper, bn,
                          be, mb.lower, mn, r});
  }
  auto bounded_below = [&](const std::vector<double>& v) {
    const double e = growth_exponent(dims, v);
    return std::pair{e, e >= -kBoundedExponent && v.back() > 0.0};
  };
  const double up_exp = growth_exponent(dims, upper);
  const auto [eig_exp, eig_ok] = bounded_below(min_eig);
  const auto [ml_exp, ml_ok] = bounded_below(mapped_lower);
  const auto [mn_exp, mn_ok] = bounded_below(min_mapped);
  rep.observations.push_back(Observation::make("bessel_upper_bound_exponent", up_exp, Comparison::AtMost,
                                               kBoundedExponent, "upper frame bound bounded across dims"));
  auto below = [](std::string name, double e, bool ok, std::string note) {
    Observation o = Observation::make(std::move(name), e, Comparison::AtLeast, -kBoundedExponent, std::move(note));
    o.holds = ok;
    return o;
  };
  rep.observations.push_back(below("B_min_eigenvalue_exponent", eig_exp, eig_ok, "B bounded below (closed range)"));
  rep.observations.push_back(below("mapped_lower_bound_exponent", ml_exp, ml_ok,
                                   "lower frame bound of {B f_n} bounded away from 0"));
  rep.observations.push_back(below("min_mapped_norm_exponent", mn_exp, mn_ok, "inf_n ||B f_n|| bounded away from 0"));
  bool certificate = false;
  for (const auto& o : rep.observations) certificate = certificate || o.holds;

  rep.checks.push_back(Check::at_most("reconstructs_across_dims", "B reconstructs at every scanned level",
                                      worst_residual, tol, seed));
  rep.checks.push_back(Check::holds("certificate_implies_bounded_upper",
                                    "a frame certificate requires a bounded upper frame bound",
                                    !certificate || up_exp <= kBoundedExponent, seed));
  rep.checks.push_back(Check::at_least("lower_bound_at_least_inverse_norm", "A_N >= 1/||B_N||",
                                       *std::min_element(lower_gap.begin(), lower_gap.end()), -1e-9, seed,
                                       "smallest A_N - 1/||B_N|| over the scan"));
  rep.tables.push_back(std::move(table));
  rep.verdict = certificate ? "frame-certificate" : "no-frame-certificate";
  return rep;
}

/// For a sequence with diagonal structure: compares the test
/// inf_n ||f_n|| > 0 with the FR verdict of the candidate operator
/// f_n -> S^-1 f_n / ||f_n||^2, S the frame operator of {f_n / ||f_n||}.
inline PropertyReport schauder_fr_classifier(const VectorSequence& seq, std::span<const std::size_t> levels,
                                             std::size_t trials = 20, std::uint64_t seed = 0,
                                             double tol = kExactTolerance) {
  if (!std::holds_alternative<tags::Diagonal>(seq.tag()))
    throw UnsupportedStructure("schauder_fr_classifier: sequence '" + seq.name() + "' has structure '" +
                               tag_name(seq.tag()) + "', expected 'diagonal'");
  require_ascending(levels, "schauder_fr_classifier");
  OperatorFactory candidate = [](const VectorSequence& s, std::size_t level) {
    const TruncationFrame tf = truncate(s, level);
    std::vector<double> norms(tf.count());
    for (std::size_t n = 0; n < tf.count(); ++n) norms[n] = tf.element(n).norm();
    const TruncationFrame unit = rescaled(tf, [&](std::size_t n) { return 1.0 / norms[n]; });
    const ComplexMatrix f = tf.synthesis();
    ComplexMatrix g = inverse(unit.frame_op()) * f;
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t n = 0; n < g.cols(); ++n) g(i, n) /= norms[n] * norms[n];
    return ReconstructionOperator::dense(g * inverse(f), "candidate from normalized frame operator");
  };
  const FRVerdict fr = fr_scan(seq, candidate, levels, trials, seed, tol);

  std::vector<double> dims, infs;
  for (std::size_t level : levels) {
    const std::size_t dim = seq.dim_at(level);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < seq.count_at(level); ++n) m = std::min(m, seq.norm(n, dim));
    dims.push_back(static_cast<double>(dim));
    infs.push_back(m);
  }
  const double inf_exp = growth_exponent(dims, infs);
  const bool inf_positive = inf_exp >= -kBoundedExponent && infs.back() > 0.0;

  PropertyReport rep;
  rep.name = "schauder_fr_classifier";
  rep.anchor = "an unconditional Schauder basis does FR iff inf ||f_n|| > 0";
  Observation o = Observation::make("inf_norm_exponent", inf_exp, Comparison::AtLeast, -kBoundedExponent,
                                    "inf_n ||f_n|| over the horizon bounded away from 0");
  o.holds = inf_positive;
  rep.observations.push_back(o);
  rep.observations.push_back(Observation::make("candidate_norm_exponent", fr.norm_growth_exponent,
                                               Comparison::AtMost, kDivergingExponent));
  rep.observations.push_back(Observation::make("candidate_max_residual", fr.max_residual, Comparison::AtMost, tol));
  rep.checks.push_back(Check::holds("classifier_agreement", rep.anchor,
                                    inf_positive == (fr.verdict == FRStatus::Reconstructs), seed,
                                    std::string("FR verdict ") + to_string(fr.verdict)));
  ScanTable t{"classifier_scan", {"dim", "inf_norm", "B_norm", "max_residual"}, {}};
  for (std::size_t i = 0; i < dims.size(); ++i) t.rows.push_back({dims[i], infs[i], fr.table.rows[i][3], fr.table.rows[i][2]});
  rep.tables.push_back(std::move(t));
  rep.verdict = to_string(fr.verdict);
  return rep;
}

/// Checks whether {f_n/||f_n||} and {||f_n|| B f_n} are dual frames, and
/// compares with the finite-union structure known from the sequence tag.
inline PropertyReport normalized_dual_check(const VectorSequence& seq, const ReconstructionOperator& b,
                                            std::span<const std::size_t> levels, std::size_t trials = 20,
                                            std::uint64_t seed = 0, double tol = kExactTolerance) {
  require_ascending(levels, "normalized_dual_check");
  {
    const std::size_t top = levels.back();
    const std::size_t dim = seq.dim_at(top);
    for (std::size_t n = 0; n < seq.count_at(top); ++n)
      if (!(seq.norm(n, dim) > 0.0))
        throw PreconditionError("normalized_dual_check: vector at position " + std::to_string(n) + " is zero");
  }
  PropertyReport rep;
  rep.name = "normalized_dual_frames";
  rep.anchor = "{f_n/||f_n||} and {||f_n|| B f_n} are dual frames iff the sequence is a finite union of "
               "unconditional bases";
  ScanTable table{"normalized_scan", {"level", "dim", "residual", "normalized_upper", "weighted_upper"}, {}};
  std::vector<double> dims, uu, vu;
  double worst = 0.0;
  for (std::size_t level : levels) {
    const TruncationFrame tf = truncate(seq, level);
    std::vector<double> norms(tf.count());
    for (std::size_t n = 0; n < tf.count(); ++n) norms[n] = tf.element(n).norm();
    const TruncationFrame u = rescaled(tf, [&](std::size_t n) { return 1.0 / norms[n]; });
    const TruncationFrame v = rescaled(mapped(tf, b), [&](std::size_t n) { return norms[n]; });
    double r = 0.0;
    for (const auto& f : random_unit_vectors(tf.dim(), trials, seed)) {
      ComplexVector acc(tf.dim());
      for (std::size_t n = 0; n < tf.count(); ++n) u.element(n).add_to(acc, v.element(n).inner_from(f));
      r = std::max(r, (acc - f).norm());
    }
    worst = std::max(worst, r);
    dims.push_back(static_cast<double>(tf.dim()));
    uu.push_back(frame_bounds(u).upper);
    vu.push_back(frame_bounds(v).upper);
    table.rows.push_back({static_cast<double>(level), dims.back(), r, uu.back(), vu.back()});
  }
  const double ue = growth_exponent(dims, uu);
  const double ve = growth_exponent(dims, vu);
  rep.observations.push_back(Observation::make("normalized_upper_exponent", ue, Comparison::AtMost, kBoundedExponent,
                                               "{f_n/||f_n||} Bessel across dims"));
  rep.observations.push_back(Observation::make("weighted_upper_exponent", ve, Comparison::AtMost, kBoundedExponent,
                                               "{||f_n|| B f_n} Bessel across dims"));
  rep.observations.push_back(Observation::make("normalized_reconstruction_residual", worst, Comparison::AtMost, tol));
  const bool dual = rep.observations[0].holds && rep.observations[1].holds && rep.observations[2].holds;

  std::string structure = "undetermined";
  std::optional<bool> finite_union;
  if (std::holds_alternative<tags::Diagonal>(seq.tag())) {
    structure = "single unconditional basis";
    finite_union = true;
  } else if (const auto* blk = std::get_if<tags::BlockRepeated>(&seq.tag())) {
    std::size_t early = 0, late = 0;
    for (std::size_t k = 0; k < levels.front(); ++k) early = std::max(early, blk->multiplicity(k));
    for (std::size_t k = 0; k < levels.back(); ++k) late = std::max(late, blk->multiplicity(k));
    finite_union = late <= early;
    structure = late > early ? "not a finite union" : "finite union of orthonormal bases";
  }
  rep.observations.push_back(Observation::make("structure_" + structure, finite_union ? (*finite_union ? 1.0 : 0.0)
                                                                                      : std::nan(""),
                                               Comparison::AtLeast, 0.5, "finite union of unconditional bases"));
  if (finite_union)
    rep.checks.push_back(Check::holds("dual_iff_finite_union", rep.anchor, dual == *finite_union, seed, structure));
  rep.tables.push_back(std::move(table));
  rep.verdict = dual ? "dual-frames" : "not-dual-frames";
  return rep;
}

}  // namespace frlab
