#pragma once

// Frame-theoretic measurements on truncations: bounds and their growth,
// Parseval and Riesz certification, biorthogonal systems, permutation
// evidence for unconditional convergence, and norm-bound (Gohberg) checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/fit.hpp"
#include "frlab/linalg.hpp"
#include "frlab/random.hpp"
#include "frlab/report.hpp"
#include "frlab/sequences.hpp"

namespace frlab {

/// Growth exponent at or below which a scanned quantity counts as bounded.
inline constexpr double kBoundedExponent = 0.05;
/// Riesz proxy: Gram condition growth exponent must stay below this.
inline constexpr double kRieszConditionExponent = 0.1;

inline void require_ascending(std::span<const std::size_t> dims, const char* op) {
  if (dims.empty()) throw ContractError(std::string(op) + ": empty dimension list");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) throw ContractError(std::string(op) + ": dimensions must be positive");
    if (i > 0 && dims[i] <= dims[i - 1])
      throw ContractError(std::string(op) + ": dimensions must be strictly ascending");
  }
}

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extreme eigenvalues of the truncated frame operator. When the family has
/// fewer vectors than the dimension the frame operator is singular, so the
/// lower bound is 0 and the upper bound is read off the (smaller) Gram
/// matrix, which has the same nonzero spectrum.
inline FrameBounds frame_bounds(const TruncationFrame& tf) {
  if (tf.count() == 0) return {0.0, 0.0};
  if (tf.count() >= tf.dim()) {
    const auto ev = hermitian_eigenvalues(tf.frame_op());
    return {std::max(0.0, ev.front()), ev.back()};
  }
  const auto ev = hermitian_eigenvalues(tf.gram());
  return {0.0, ev.back()};
}

/// lambda_max / lambda_min of the Gram matrix; infinite when it is singular
/// at the default rank tolerance.
inline double gram_condition(const TruncationFrame& tf) {
  const auto ev = hermitian_eigenvalues(tf.gram());
  if (ev.empty()) return 1.0;
  if (ev.front() <= kDefaultRankTolerance * ev.back()) return std::numeric_limits<double>::infinity();
  return ev.back() / ev.front();
}

struct FrameBoundsScan {
  std::vector<std::size_t> dims;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> condition;  // empty unless requested
  double growth_exponent = 0.0;
  double lower_infimum = 0.0;

  ScanTable table(std::string name = "frame_bounds") const {
    ScanTable t{std::move(name), {"dim", "A", "B", "cond"}, {}};
    for (std::size_t i = 0; i < dims.size(); ++i)
      t.rows.push_back({static_cast<double>(dims[i]), lower[i], upper[i],
                        condition.empty() ? std::numeric_limits<double>::quiet_NaN() : condition[i]});
    return t;
  }
};

inline FrameBoundsScan bounds_scan_frames(std::span<const TruncationFrame> frames, bool with_condition) {
  FrameBoundsScan s;
  for (const auto& tf : frames) {
    const auto b = frame_bounds(tf);
    s.dims.push_back(tf.level());
    s.lower.push_back(b.lower);
    s.upper.push_back(b.upper);
    if (with_condition) s.condition.push_back(gram_condition(tf));
  }
  const auto x = as_doubles(s.dims);
  s.growth_exponent = growth_exponent(x, s.upper);
  s.lower_infimum = *std::min_element(s.lower.begin(), s.lower.end());
  return s;
}

/// Bounds at every level in `dims`; the growth exponent is the log-log slope
/// of the upper bound against the level.
inline FrameBoundsScan bounds_scan(const VectorSequence& seq, std::span<const std::size_t> dims,
                                   bool with_condition = false) {
  require_ascending(dims, "bounds_scan");
  std::vector<TruncationFrame> frames;
  frames.reserve(dims.size());
  for (std::size_t d : dims) frames.push_back(truncate(seq, d));
  return bounds_scan_frames(frames, with_condition);
}

struct ParsevalResult {
  bool pass = false;
  double residual = 0.0;
};

/// residual = ||S - I|| in operator norm.
inline ParsevalResult is_parseval(const TruncationFrame& tf, double tol) {
  if (!(tol > 0.0)) throw ContractError("is_parseval: tolerance must be positive");
  const ComplexMatrix diff = tf.frame_op() - ComplexMatrix::identity(tf.dim());
  const double r = diff.max_abs() == 0.0 ? 0.0 : op_norm(diff);
  return {r <= tol, r};
}

/// g_k with <f_n, g_k> = delta_nk, g_k in the span of the family.
inline std::vector<ComplexVector> biorthogonal_system(const TruncationFrame& tf,
                                                      double rank_tol = kDefaultRankTolerance) {
  // Locate the first dependent vector by Gram-Schmidt.
  std::vector<ComplexVector> ortho;
  for (std::size_t n = 0; n < tf.count(); ++n) {
    ComplexVector v = tf.element_dense(n);
    const double original = v.norm();
    for (const auto& q : ortho) v.axpy(-dot(v, q), q);
    for (const auto& q : ortho) v.axpy(-dot(v, q), q);
    const double r = v.norm();
    if (original == 0.0 || r <= std::sqrt(rank_tol) * original)
      throw NotABasis(n, "biorthogonal_system: vector at position " + std::to_string(n) +
                             " is linearly dependent on the earlier vectors (not a basis)");
    ortho.push_back((1.0 / r) * v);
  }
  const ComplexMatrix g = tf.gram();
  // G(n, m) = <f_m, f_n>; the coefficients of g_k solve G A = I.
  const ComplexMatrix a = inverse(g);
  std::vector<ComplexVector> out(tf.count(), ComplexVector(tf.dim()));
  for (std::size_t k = 0; k < tf.count(); ++k)
    for (std::size_t m = 0; m < tf.count(); ++m) tf.element(m).add_to(out[k], a(m, k));
  return out;
}

struct UnconditionalityResult {
  double terminal_deviation = 0.0;  // max_pi ||sum_pi - sum_id||
  double max_excursion = 0.0;       // max_pi max_k ||partial_k||
  double identity_excursion = 0.0;  // max_k ||partial_k|| in natural order
  double target_norm = 0.0;
};

/// Sums <f, B f_pi(n)> f_pi(n) along seeded random permutations of the
/// truncated family and records terminal deviation and the largest partial
/// sum norm encountered.
inline UnconditionalityResult unconditionality_test(const VectorSequence& seq, const ReconstructionOperator& b,
                                                    const ComplexVector& f, std::size_t level,
                                                    std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw ContractError("unconditionality_test: trials must be at least 1");
  const TruncationFrame tf = truncate(seq, level);
  if (f.dim() != tf.dim()) throw ContractError("unconditionality_test: test vector dimension mismatch");
  const ComplexVector g = b.apply_adjoint(f);
  std::vector<Complex> coef(tf.count());
  for (std::size_t n = 0; n < tf.count(); ++n) coef[n] = tf.element(n).inner_from(g);

  auto run = [&](const std::vector<std::size_t>& order, double& excursion) {
    ComplexVector partial(tf.dim());
    excursion = 0.0;
    for (std::size_t n : order) {
      tf.element(n).add_to(partial, coef[n]);
      excursion = std::max(excursion, partial.norm());
    }
    return partial;
  };

  UnconditionalityResult res;
  res.target_norm = f.norm();
  std::vector<std::size_t> identity(tf.count());
  for (std::size_t n = 0; n < identity.size(); ++n) identity[n] = n;
  const ComplexVector reference = run(identity, res.identity_excursion);
  res.max_excursion = res.identity_excursion;
  Rng rng = make_rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    double exc = 0.0;
    const ComplexVector s = run(random_permutation(tf.count(), rng), exc);
    res.terminal_deviation = std::max(res.terminal_deviation, (s - reference).norm());
    res.max_excursion = std::max(res.max_excursion, exc);
  }
  return res;
}

/// A fixed l2 element seen through nested truncations: coordinate k is a
/// seeded complex Gaussian divided by (k+1), so prefixes agree across dims.
inline ComplexVector nested_l2_vector(std::size_t dim, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  ComplexVector v(dim);
  for (std::size_t k = 0; k < dim; ++k) v[k] = complex_gaussian(rng) / (static_cast<double>(k) + 1.0);
  return v;
}

/// Norm bounds of the family over each horizon (Riesz-criterion
/// precondition), Gram conditioning as the finite Riesz proxy, and, for a
/// reconstruction pair claimed unconditional, boundedness of
/// sum_n ||<f, f_n> B f_n||^2 across dims.
inline PropertyReport gohberg_checks(const VectorSequence& seq, std::span<const std::size_t> dims,
                                     const ReconstructionOperator* unconditional_pair = nullptr,
                                     std::uint64_t seed = 0) {
  require_ascending(dims, "gohberg_checks");
  PropertyReport rep;
  rep.name = "gohberg_checks";
  rep.anchor = "Gohberg: Riesz basis iff unconditional basis with 0 < inf ||f_n|| <= sup ||f_n|| < inf";

  ScanTable table{"norm_bounds", {"dim", "inf_norm", "sup_norm", "gram_cond", "term_square_sum"}, {}};
  std::vector<double> infs, sups, conds, sums;
  bool sane = true;
  for (std::size_t level : dims) {
    const TruncationFrame tf = truncate(seq, level);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t n = 0; n < tf.count(); ++n) {
      const double nn = seq.norm(n, tf.dim());
      lo = std::min(lo, nn);
      hi = std::max(hi, nn);
    }
    sane = sane && std::isfinite(hi) && lo <= hi;
    infs.push_back(lo);
    sups.push_back(hi);
    conds.push_back(gram_condition(tf));
    double sum = std::numeric_limits<double>::quiet_NaN();
    if (unconditional_pair) {
      const ComplexVector f = nested_l2_vector(tf.dim(), seed);
      sum = 0.0;
      for (std::size_t n = 0; n < tf.count(); ++n) {
        const Complex c = tf.element(n).inner_from(f);
        sum += std::norm(c) * unconditional_pair->apply(tf.element(n), tf.dim()).squared_norm();
      }
    }
    sums.push_back(sum);
    table.rows.push_back({static_cast<double>(level), lo, hi, conds.back(), sum});
  }
  const auto x = as_doubles(dims);
  const double sup_exp = growth_exponent(x, sups);
  const double inf_exp = growth_exponent(x, infs);
  const double cond_exp = growth_exponent(x, conds);
  const bool finite_cond = std::all_of(conds.begin(), conds.end(), [](double c) { return std::isfinite(c); });

  rep.observations.push_back(Observation::make("sup_norm_growth_exponent", sup_exp, Comparison::AtMost,
                                               kBoundedExponent, "sup_n ||f_n|| bounded across dims"));
  rep.observations.push_back(Observation::make("inf_norm_growth_exponent", inf_exp, Comparison::AtLeast,
                                               -kBoundedExponent, "inf_n ||f_n|| bounded below across dims"));
  const bool norm_bounded = rep.observations[0].holds && rep.observations[1].holds && infs.back() > 0.0;
  rep.observations.push_back(Observation::make(
      "gram_condition_growth_exponent", finite_cond ? cond_exp : std::numeric_limits<double>::infinity(),
      Comparison::AtMost, kRieszConditionExponent, "Riesz proxy: Gram conditioning bounded across dims"));
  const bool riesz = norm_bounded && rep.observations[2].holds;

  rep.checks.push_back(Check::holds("norm_bounds_well_defined", rep.anchor, sane, seed));
  if (unconditional_pair) {
    const double e = tail_growth_exponent(x, sums);
    rep.checks.push_back(Check::at_most("unconditional_terms_square_summable",
                                        "Gohberg: unconditional convergence implies sum ||x_n||^2 < inf", e,
                                        kBoundedExponent, seed,
                                        "tail growth exponent of sum_n ||<f,f_n> B f_n||^2 over a fixed l2 element"));
  }
  rep.tables.push_back(std::move(table));
  rep.verdict = riesz ? "riesz" : (norm_bounded ? "norm-bounded" : "not-norm-bounded");
  return rep;
}

}  // namespace frlab
