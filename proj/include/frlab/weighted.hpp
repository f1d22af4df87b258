#pragma once

// Exponentials in L2(w dx): the A2 constant of a weight, classical Fourier
// partial sums measured in the weighted norm, and the reconstruction check
// with B = multiplication by 1/w.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/fit.hpp"
#include "frlab/frame_analysis.hpp"
#include "frlab/linalg.hpp"
#include "frlab/measures.hpp"
#include "frlab/reconstruction.hpp"
#include "frlab/report.hpp"
#include "frlab/sequences.hpp"

namespace frlab {

/// Fewest quadrature points used inside one dyadic interval.
inline constexpr std::size_t kMinIntervalPoints = 64;
/// Log-log slope of the per-depth supremum above which A2 is flagged divergent.
inline constexpr double kA2DivergenceSlope = 0.1;

struct A2Result {
  double constant = 0.0;             // sup over all depths
  std::vector<double> depth_sup;     // sup over the 2^d intervals at depth d
  double slope = 0.0;                // log-log slope of depth_sup against 2^d
  bool divergent = false;

  ScanTable table() const {
    ScanTable t{"a2_depth_scan", {"depth", "sup_product"}, {}};
    for (std::size_t d = 0; d < depth_sup.size(); ++d) t.rows.push_back({static_cast<double>(d), depth_sup[d]});
    return t;
  }
};

struct NeumaierSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

/// sup over dyadic intervals I of depth <= max_depth of avg_I(w) avg_I(1/w).
/// Averages use the midpoint rule with max(q / 2^d, 64) points per interval.
/// Non-finite products are recorded as divergent rather than thrown.
inline A2Result a2_constant(const WeightModel& w, std::size_t max_depth, std::size_t q = kDefaultGrid) {
  if (max_depth < 4) throw ContractError("a2_constant: max_depth must be at least 4");
  if (max_depth > 24) throw ContractError("a2_constant: max_depth above 24 is not supported");
  A2Result r;
  for (std::size_t d = 0; d <= max_depth; ++d) {
    const std::size_t intervals = std::size_t{1} << d;
    const std::size_t points = std::max(q >> d, kMinIntervalPoints);
    const double width = 1.0 / static_cast<double>(intervals);
    double sup = 0.0;
    for (std::size_t i = 0; i < intervals; ++i) {
      NeumaierSum sw, si;
      for (std::size_t j = 0; j < points; ++j) {
        const double x = width * (static_cast<double>(i) + (static_cast<double>(j) + 0.5) / static_cast<double>(points));
        const double v = w(x);
        sw.add(v);
        si.add(1.0 / v);
      }
      const double prod = (sw.value() / static_cast<double>(points)) * (si.value() / static_cast<double>(points));
      if (!std::isfinite(prod)) {
        sup = std::numeric_limits<double>::infinity();
        break;
      }
      sup = std::max(sup, prod);
    }
    r.depth_sup.push_back(sup);
  }
  std::vector<double> res;
  for (std::size_t d = 0; d <= max_depth; ++d) res.push_back(std::ldexp(1.0, static_cast<int>(d)));
  r.constant = *std::max_element(r.depth_sup.begin(), r.depth_sup.end());
  r.slope = growth_exponent(res, r.depth_sup);
  r.divergent = !std::isfinite(r.constant) || r.slope > kA2DivergenceSlope;
  return r;
}

struct PartialSum {
  std::vector<Complex> values;    // S_M f on the midpoint grid
  std::vector<Complex> coefficients;  // Lebesgue coefficients in the order 0, 1, -1, ...
  double weighted_residual = 0.0;  // int |S_M f - f|^2 w dx
};

/// Classical Fourier partial sum sum_{|k| <= M} f^(k) e^{2 pi i k x} of grid
/// values on the midpoint grid, with the residual measured in L2(w dx).
inline PartialSum weighted_partial_sum(const WeightModel& w, std::span<const Complex> f, std::size_t m) {
  const std::size_t q = f.size();
  if (q < 2 || q % 2) throw ContractError("weighted_partial_sum: grid size must be even and at least 2");
  if (2 * m + 1 > q) throw ContractError("weighted_partial_sum: M exceeds the grid resolution");
  const auto x = midpoint_grid(q);
  PartialSum s;
  s.values.assign(q, Complex{0.0, 0.0});
  for (std::size_t p = 0; p < 2 * m + 1; ++p) {
    const std::int64_t k = integer_index_at(p);
    Complex c{0.0, 0.0};
    std::vector<Complex> e(q);
    for (std::size_t j = 0; j < q; ++j) {
      const double phase = kTwoPi * std::remainder(static_cast<double>(k) * x[j], 1.0);
      e[j] = Complex(std::cos(phase), std::sin(phase));
      c += f[j] * std::conj(e[j]);
    }
    c /= static_cast<double>(q);
    s.coefficients.push_back(c);
    for (std::size_t j = 0; j < q; ++j) s.values[j] += c * e[j];
  }
  for (std::size_t j = 0; j < q; ++j) s.weighted_residual += std::norm(s.values[j] - f[j]) * w(x[j]);
  s.weighted_residual /= static_cast<double>(q);
  return s;
}

/// Coordinates of a function given on the midpoint grid in L2(mu).
inline ComplexVector grid_coordinates(const DiscreteMeasure& d, const std::function<Complex(double)>& f) {
  return d.coordinates(f);
}

/// x(1-x) and x^2(1-x)^2, both continuous when periodized.
inline std::vector<std::pair<std::string, std::function<Complex(double)>>> smooth_test_functions() {
  return {{"x(1-x)", [](double x) { return Complex(x * (1.0 - x), 0.0); }},
          {"x^2(1-x)^2", [](double x) { return Complex(x * x * (1.0 - x) * (1.0 - x), 0.0); }}};
}

inline ReconstructionOperator inverse_weight_operator(const DiscreteMeasure& d, const WeightModel& w) {
  std::vector<double> samples(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) samples[j] = 1.0 / w(d.points[j]);
  return ReconstructionOperator::multiplication(std::move(samples), "multiplication by 1/w");
}

/// Exponentials {e^{2 pi i n x}}_{|n| <= M} in L2(w dx) at quadrature
/// resolution, with B = multiplication by 1/w: biorthogonality, symmetric
/// partial-sum reconstruction of smooth functions, Bessel scan, A2 constant,
/// and the equivalence battery (Bessel, lower semi-frame dual, unconditional,
/// Riesz for both families, w bounded) through finite Gram proxies.
inline PropertyReport exponential_fr_check(const WeightModel& w, std::span<const std::size_t> levels,
                                           std::size_t trials = 8, std::uint64_t seed = 0,
                                           std::size_t q = kDefaultGrid, double tol = kExactTolerance,
                                           std::size_t a2_depth = 12) {
  require_ascending(levels, "exponential_fr_check");
  {
    double floor = w.floor.value_or(std::numeric_limits<double>::infinity());
    for (double x : midpoint_grid(q)) floor = std::min(floor, w(x));
    if (!(floor > 0.0))
      throw PreconditionError("exponential_fr_check: weight '" + w.name +
                              "' is not bounded below by a positive constant (floor " + format_17g(floor) + ")");
  }
  const MeasureModel mu = MeasureModel::density(w, q);
  const auto& d = mu.discrete();
  const auto seq = exponential_sequence(mu.discrete_ptr(), IndexSet::Integer, "exponentials in L2(w dx)");
  const ReconstructionOperator b = inverse_weight_operator(d, w);

  PropertyReport rep;
  rep.name = "weighted_exponentials";
  rep.anchor = "exponentials in L2(w dx) form a Schauder basis doing FR iff w is bounded below and A2";

  // Biorthogonality <e_n, B e_k> = delta_nk over the largest window.
  const std::size_t top = levels.back();
  const TruncationFrame big = truncate(*seq, top);
  const TruncationFrame duals = mapped(big, b);
  double bio = 0.0;
  for (std::size_t n = 0; n < big.count(); ++n) {
    const ComplexVector en = big.element_dense(n);
    for (std::size_t k = 0; k < big.count(); ++k) {
      const Complex v = duals.element(k).inner_from(en);
      bio = std::max(bio, std::abs(v - (n == k ? 1.0 : 0.0)));
    }
  }
  rep.checks.push_back(Check::at_most("biorthogonality", "<e_n, B e_k> = delta_nk", bio, 1e-12, seed));

  // Reconstruction of smooth functions and random trigonometric polynomials.
  ScanTable fr_table{"symmetric_partial_sums", {"M"}, {}};
  const auto funcs = smooth_test_functions();
  for (const auto& [name, f] : funcs) fr_table.columns.push_back("residual_" + name);
  fr_table.columns.push_back("trig_poly_residual");
  std::vector<std::vector<double>> residuals(funcs.size());
  double trig = 0.0;
  std::vector<ComplexVector> polys;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t degree = std::min<std::size_t>(levels.front(), 4);
    polys.push_back(smooth_random_target(d, seed + t, degree, 0.0, IndexSet::Integer));
  }
  for (std::size_t level : levels) {
    const TruncationFrame tf = truncate(*seq, level);
    std::vector<double> row{static_cast<double>(level)};
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      const ComplexVector fv = d.coordinates(funcs[i].second);
      const double r = fr_residuals(tf, b, std::span<const ComplexVector>(&fv, 1)).front();
      residuals[i].push_back(r);
      row.push_back(r);
    }
    const auto rt = fr_residuals(tf, b, polys);
    const double mt = polys.empty() ? 0.0 : *std::max_element(rt.begin(), rt.end());
    trig = std::max(trig, mt);
    row.push_back(mt);
    fr_table.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    bool decreasing = true;
    for (std::size_t k = 1; k < residuals[i].size(); ++k) decreasing = decreasing && residuals[i][k] < residuals[i][k - 1];
    rep.checks.push_back(Check::holds("partial_sums_decrease_" + funcs[i].first,
                                      "symmetric partial sums converge in L2(w dx)", decreasing, seed,
                                      "final residual " + format_17g(residuals[i].back())));
  }
  rep.checks.push_back(Check::at_most("trig_polynomials_reconstructed", "sum_{|n|<=M} <f, B e_n> e_n = f", trig,
                                      tol, seed, "random trigonometric polynomials of degree <= min(M)"));

  // A2 constant of the weight.
  const A2Result a2 = a2_constant(w, a2_depth, q);
  rep.observations.push_back(Observation::make("a2_constant", a2.constant, Comparison::AtMost,
                                               std::numeric_limits<double>::infinity()));
  rep.checks.push_back(Check::holds("a2_finite", "w satisfies the A2 condition", !a2.divergent, seed,
                                    "depth slope " + format_17g(a2.slope)));

  // Gram proxies for both families over the scan.
  ScanTable gram_table{"gram_scan", {"M", "exp_lambda_max", "exp_lambda_min", "dual_lambda_max", "dual_lambda_min"}, {}};
  std::vector<double> ms, emax, emin, dmax, dmin;
  for (std::size_t level : levels) {
    const TruncationFrame tf = truncate(*seq, level);
    const auto ge = hermitian_eigenvalues(tf.gram());
    const auto gd = hermitian_eigenvalues(mapped(tf, b).gram());
    ms.push_back(static_cast<double>(level));
    emax.push_back(ge.back());
    emin.push_back(ge.front());
    dmax.push_back(gd.back());
    dmin.push_back(gd.front());
    gram_table.rows.push_back({ms.back(), ge.back(), ge.front(), gd.back(), gd.front()});
  }
  auto bounded = [&](const std::vector<double>& v) { return growth_exponent(ms, v) <= kBoundedExponent; };
  auto bounded_below = [&](const std::vector<double>& v) {
    return growth_exponent(ms, v) >= -kBoundedExponent && v.back() > 0.0;
  };
  auto cond = [](const std::vector<double>& hi, const std::vector<double>& lo) {
    std::vector<double> c(hi.size());
    for (std::size_t i = 0; i < hi.size(); ++i) c[i] = lo[i] > 0.0 ? hi[i] / lo[i] : std::numeric_limits<double>::infinity();
    return c;
  };
  std::vector<double> inv_emax(emax.size());
  for (std::size_t i = 0; i < emax.size(); ++i) inv_emax[i] = 1.0 / emax[i];

  // sup w over coarser grids.
  std::vector<double> grids, sups;
  for (std::size_t g = q / 8; g <= q; g *= 2) {
    double s = 0.0;
    for (double x : midpoint_grid(g)) s = std::max(s, w(x));
    grids.push_back(static_cast<double>(g));
    sups.push_back(s);
  }
  const double bessel_exp = growth_exponent(ms, emax);
  const bool items[7] = {
      bounded(emax),                                  // exponentials Bessel
      bounded_below(inv_emax),                        // duals a lower semi-frame
      bounded(cond(emax, emin)),                      // exponentials unconditional
      bounded(cond(dmax, dmin)),                      // duals unconditional
      bounded(emax) && bounded_below(emin),           // exponentials Riesz
      bounded(dmax) && bounded_below(dmin),           // duals Riesz
      growth_exponent(grids, sups) <= kBoundedExponent,  // w bounded
  };
  const char* names[7] = {"exponentials_bessel",        "duals_lower_semi_frame", "exponentials_unconditional",
                          "duals_unconditional",        "exponentials_riesz",     "duals_riesz",
                          "weight_bounded"};
  int holding = 0;
  for (int i = 0; i < 7; ++i) {
    Observation o = Observation::make(names[i], items[i] ? 1.0 : 0.0, Comparison::AtLeast, 0.5);
    rep.observations.push_back(o);
    holding += items[i];
  }
  rep.observations.push_back(Observation::make("bessel_growth_exponent", bessel_exp, Comparison::AtMost,
                                               kDivergingExponent, "exceeding the threshold flags divergence"));
  rep.checks.push_back(Check::holds("equivalences_agree", "the seven conditions are equivalent",
                                    holding == 0 || holding == 7, seed,
                                    std::to_string(holding) + " of 7 hold"));
  rep.tables.push_back(std::move(fr_table));
  rep.tables.push_back(std::move(gram_table));
  rep.tables.push_back(a2.table());
  rep.verdict = holding == 7 ? "Riesz" : (holding == 0 ? "Schauder-FR-not-Riesz" : "inconsistent");
  return rep;
}

}  // namespace frlab
