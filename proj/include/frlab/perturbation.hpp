#pragma once

// l1 perturbations of reconstructing sequences: the stability budget, the
// reconstruction operator of the perturbed family, and persistence of the
// non-Bessel property.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/fit.hpp"
#include "frlab/frame_analysis.hpp"
#include "frlab/linalg.hpp"
#include "frlab/reconstruction.hpp"
#include "frlab/report.hpp"
#include "frlab/sequences.hpp"

namespace frlab {

/// sqrt(M^2 + 1/||B||) - M, evaluated without cancellation.
inline double paley_wiener_budget(double m, double b_norm) {
  if (!std::isfinite(m))
    throw UnboundedSequence("stability budget: sup_n ||f_n|| is not finite (unbounded base sequence)");
  if (!(m > 0.0)) throw ContractError("stability budget: M must be positive (it comes from a nonzero sequence)");
  if (!(b_norm > 0.0) || !std::isfinite(b_norm))
    throw ContractError("stability budget: ||B|| must be positive and finite");
  const double inv = 1.0 / b_norm;
  return inv / (std::sqrt(m * m + inv) + m);
}

struct PerturbationBudget {
  double M = 0.0;
  double B_norm = 0.0;
  double budget = 0.0;
  double spent = 0.0;
  bool admissible() const { return spent < budget; }
};

/// sup_n ||f_n|| over the horizon at `level`. The norms are also scanned
/// over the dyadic levels up to `level`; growth beyond the boundedness
/// exponent means the base has no finite M.
inline double sequence_sup_norm(const VectorSequence& seq, std::size_t level) {
  std::vector<std::size_t> levels;
  for (std::size_t l = 1; l < level; l *= 2) levels.push_back(l);
  levels.push_back(level);
  std::vector<double> sups;
  for (std::size_t l : levels) {
    const std::size_t dim = seq.dim_at(l);
    double m = 0.0;
    for (std::size_t n = 0; n < seq.count_at(l); ++n) m = std::max(m, seq.norm(n, dim));
    sups.push_back(m);
  }
  if (levels.size() >= 2 && growth_exponent(as_doubles(levels), sups) > kBoundedExponent)
    return std::numeric_limits<double>::infinity();
  return sups.back();
}

inline PerturbationBudget perturbation_budget(const VectorSequence& base, const ReconstructionOperator& b,
                                              const VectorSequence& h, std::size_t level) {
  PerturbationBudget p;
  p.M = sequence_sup_norm(base, level);
  p.B_norm = b.norm(base.dim_at(level));
  p.budget = paley_wiener_budget(p.M, p.B_norm);
  p.spent = total_spent(h, level);
  return p;
}

struct PerturbedOperator {
  ReconstructionOperator op;
  PerturbationBudget budget;
  double condition_T = 0.0;
};

/// (T^-1)* B with T f = sum <f, B h_n> h_n, solved directly at the
/// truncation.
inline PerturbedOperator perturbed_reconstruction_operator(const VectorSequence& base,
                                                           const ReconstructionOperator& b,
                                                           const VectorSequence& h, std::size_t level,
                                                           double rank_tol = kDefaultRankTolerance) {
  const PerturbationBudget budget = perturbation_budget(base, b, h, level);
  if (!budget.admissible()) throw InadmissiblePerturbation(budget.spent, budget.budget);
  const TruncationFrame tf = truncate(h, level);
  const ComplexMatrix bm = b.matrix(tf.dim());
  const ComplexMatrix t = tf.frame_op() * bm.adjoint();
  const double cond = condition_number(t);
  if (!(cond * rank_tol < 1.0)) throw ConditioningError(cond, "perturbed reconstruction: T is singular at rank tolerance");
  const LuDecomposition lu(t);
  if (lu.singular()) throw ConditioningError(cond, "perturbed reconstruction: T is singular");
  const ComplexMatrix t_inv = lu.solve(ComplexMatrix::identity(tf.dim()));
  return {ReconstructionOperator::dense(t_inv.adjoint() * bm, "(T^-1)* B for the perturbed family"), budget, cond};
}

inline OperatorFactory perturbed_operator_factory(SequencePtr base, ReconstructionOperator b) {
  return [base = std::move(base), b = std::move(b)](const VectorSequence& h, std::size_t level) {
    return perturbed_reconstruction_operator(*base, b, h, level).op;
  };
}

/// Largest dimension used by the non-Bessel precondition probe.
inline constexpr std::size_t kProbeDim = 256;

/// Witness vector at a dimension.
using WitnessRule = std::function<ComplexVector(std::size_t dim)>;

/// sum_k e_k/(k+1), normalized in l2.
inline WitnessRule harmonic_witness() {
  return [](std::size_t dim) {
    ComplexVector v(dim);
    const double scale = std::sqrt(6.0) / std::numbers::pi;
    for (std::size_t k = 0; k < dim; ++k) v[k] = scale / (static_cast<double>(k) + 1.0);
    return v;
  };
}

/// e_{dim-1}.
inline WitnessRule last_coordinate_witness() {
  return [](std::size_t dim) { return ComplexVector::basis(dim, dim - 1); };
}

/// sum_{n < count} |<f, f_n>|^2 streamed over the sequence entries.
inline double witness_sum(const VectorSequence& seq, std::size_t level, const ComplexVector& f) {
  const std::size_t dim = seq.dim_at(level);
  if (f.dim() != dim) throw ContractError("witness_sum: witness dimension mismatch");
  double s = 0.0;
  for (std::size_t n = 0; n < seq.count_at(level); ++n) s += std::norm(seq.entry(n, dim).inner_from(f));
  return s;
}

/// Witness Bessel sums of the base and the perturbed sequence along the
/// scan, their divergence exponents, and for each cap the first scanned
/// level where the perturbed sum exceeds it.
inline PropertyReport non_frame_persistence(const VectorSequence& base, const VectorSequence& h,
                                            const WitnessRule& witness, std::span<const std::size_t> levels,
                                            std::span<const double> caps = {}) {
  require_ascending(levels, "non_frame_persistence");
  std::size_t top = levels.front();
  for (std::size_t l : levels)
    if (base.dim_at(l) <= kProbeDim) top = l;
  if (top > levels.front()) {
    const std::size_t probe[] = {levels.front(), top};
    if (bounds_scan(base, probe).growth_exponent <= kBoundedExponent)
      throw PreconditionError("non_frame_persistence: base sequence '" + base.name() +
                              "' is not flagged non-Bessel by its bounds scan");
  }
  PropertyReport rep;
  rep.name = "non_frame_persistence";
  rep.anchor = "a perturbation within budget of a non-frame is not a frame";
  ScanTable table{"witness_sums", {"level", "dim", "base_sum", "perturbed_sum"}, {}};
  std::vector<double> x, bs, hs;
  for (std::size_t level : levels) {
    const std::size_t dim = base.dim_at(level);
    const ComplexVector f = witness(dim);
    x.push_back(static_cast<double>(level));
    bs.push_back(witness_sum(base, level, f));
    hs.push_back(witness_sum(h, level, f));
    table.rows.push_back({x.back(), static_cast<double>(dim), bs.back(), hs.back()});
  }
  const double be = growth_exponent(x, bs);
  const double he = growth_exponent(x, hs);
  rep.observations.push_back(Observation::make("base_divergence_exponent", be, Comparison::AtLeast, 0.0));
  rep.observations.push_back(Observation::make("perturbed_divergence_exponent", he, Comparison::AtLeast, 0.0));
  rep.checks.push_back(Check::at_most("divergence_exponent_match", rep.anchor, std::abs(he - be), 0.1, 0,
                                      "|perturbed - base| divergence exponent"));
  rep.checks.push_back(Check::holds("perturbed_sum_grows", "witness sums keep growing", hs.back() > hs.front()));
  for (double cap : caps) {
    double reached = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (hs[i] > cap) {
        reached = x[i];
        break;
      }
    rep.checks.push_back(Check::holds("exceeds_cap_" + format_17g(cap), "witness sums exceed any fixed cap",
                                      !std::isnan(reached), 0, "first level " + format_17g(reached)));
  }
  rep.tables.push_back(std::move(table));
  rep.verdict = rep.all_pass() ? "non-frame-persists" : "inconclusive";
  return rep;
}

/// (M, ||B||, budget) over a grid, for CSV export.
inline ScanTable budget_table(std::span<const double> ms, std::span<const double> b_norms) {
  ScanTable t{"budget", {"M", "B_norm", "budget"}, {}};
  for (double m : ms)
    for (double b : b_norms) t.rows.push_back({m, b, paley_wiener_budget(m, b)});
  return t;
}

}  // namespace frlab
