#pragma once

// Measures on [0,1): atomic, midpoint-discretized densities and the
// middle-thirds Cantor measure. Fourier coefficients, decay scans, and the
// Kaczmarz algorithm for exponentials in L2(mu).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/linalg.hpp"
#include "frlab/random.hpp"
#include "frlab/report.hpp"
#include "frlab/sequences.hpp"

namespace frlab {

inline constexpr std::size_t kDefaultGrid = 4096;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A positive density on [0,1).
struct WeightModel {
  std::string name;
  std::function<double(double)> rule;
  std::optional<double> floor;  // analytic lower bound, when known
  std::vector<double> singular_points;

  double operator()(double x) const { return rule(x); }

  static WeightModel constant(double c) {
    if (!(c > 0.0)) throw ContractError("constant weight must be positive");
    return {"constant " + format_17g(c), [c](double) { return c; }, c, {}};
  }
  /// |x - center|^exponent; for negative exponents the floor is the value
  /// at the farthest point of [0,1).
  static WeightModel power(double center, double exponent) {
    std::optional<double> fl;
    std::vector<double> sing;
    if (exponent < 0.0) {
      fl = std::pow(std::max(center, 1.0 - center), exponent);
      sing.push_back(center);
    } else if (exponent == 0.0) {
      fl = 1.0;
    } else {
      fl = 0.0;
    }
    return {"|x-" + format_17g(center) + "|^" + format_17g(exponent),
            [center, exponent](double x) { return std::pow(std::abs(x - center), exponent); }, fl, sing};
  }
  static WeightModel step(double split, double left, double right) {
    if (!(left > 0.0) || !(right > 0.0)) throw ContractError("step weight values must be positive");
    return {"step " + format_17g(left) + "/" + format_17g(right) + " at " + format_17g(split),
            [=](double x) { return x < split ? left : right; }, std::min(left, right), {}};
  }
  /// exp(-x^(-1/2)): positive on (0,1) but vanishing to infinite order at 0.
  static WeightModel flat_zero() {
    return {"exp(-x^(-1/2))", [](double x) { return std::exp(-1.0 / std::sqrt(x)); }, 0.0, {0.0}};
  }
};

/// Midpoints (j + 1/2)/q of the uniform grid.
inline std::vector<double> midpoint_grid(std::size_t q) {
  std::vector<double> x(q);
  for (std::size_t j = 0; j < q; ++j) x[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(q);
  return x;
}

/// Level-m atoms of the middle-thirds Cantor measure: 2^m atoms of mass
/// 2^-m at the centres of the surviving intervals of length 3^-m.
inline DiscreteMeasure cantor_atoms(std::size_t level) {
  if (level > 24) throw ContractError("cantor_atoms: level above 24 is not supported");
  DiscreteMeasure m;
  const std::size_t count = std::size_t{1} << level;
  const double len = std::pow(3.0, -static_cast<double>(level));
  m.points.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    double x = 0.0;
    double scale = 1.0;
    for (std::size_t i = 1; i <= level; ++i) {
      scale /= 3.0;
      if ((code >> (level - i)) & 1u) x += 2.0 * scale;
    }
    m.points.push_back(x + 0.5 * len);
  }
  m.weights.assign(count, std::ldexp(1.0, -static_cast<int>(level)));
  return m;
}

class MeasureModel {
public:
  enum class Kind { Atomic, Density, Cantor };

  static MeasureModel atomic(std::vector<double> points, std::vector<double> weights) {
    if (points.size() != weights.size() || points.empty())
      throw ContractError("atomic measure: points and weights must be nonempty and of equal length");
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (!(weights[j] >= 0.0)) throw ContractError("atomic measure: negative weight at atom " + std::to_string(j));
      if (!(points[j] >= 0.0 && points[j] < 1.0))
        throw ContractError("atomic measure: atom " + std::to_string(j) + " outside [0,1)");
    }
    MeasureModel m(Kind::Atomic);
    m.atoms_ = std::make_shared<DiscreteMeasure>(DiscreteMeasure{std::move(points), std::move(weights)});
    return m;
  }

  /// g dx discretized by the midpoint rule on an even grid of size q.
  static MeasureModel density(WeightModel g, std::size_t q = kDefaultGrid) {
    if (q < 2 || q % 2) throw ContractError("density measure: grid size must be even and at least 2");
    MeasureModel m(Kind::Density);
    auto d = std::make_shared<DiscreteMeasure>();
    d->points = midpoint_grid(q);
    d->weights.resize(q);
    for (std::size_t j = 0; j < q; ++j) {
      const double w = g(d->points[j]);
      if (!(w >= 0.0) || !std::isfinite(w))
        throw ContractError("density measure: weight '" + g.name + "' is not finite and nonnegative at x = " +
                            format_17g(d->points[j]));
      d->weights[j] = w / static_cast<double>(q);
    }
    m.atoms_ = std::move(d);
    m.weight_ = std::move(g);
    return m;
  }

  /// The Cantor measure; `level` fixes the atomic realization of L2(mu).
  static MeasureModel cantor(std::size_t level) {
    MeasureModel m(Kind::Cantor);
    m.atoms_ = std::make_shared<DiscreteMeasure>(cantor_atoms(level));
    m.level_ = level;
    return m;
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t cantor_level() const noexcept { return level_; }
  std::size_t size() const noexcept { return atoms_->size(); }
  double total_mass() const { return kind_ == Kind::Cantor ? 1.0 : atoms_->total_mass(); }
  const DiscreteMeasure& discrete() const noexcept { return *atoms_; }
  std::shared_ptr<const DiscreteMeasure> discrete_ptr() const noexcept { return atoms_; }
  const std::optional<WeightModel>& weight() const noexcept { return weight_; }

private:
  explicit MeasureModel(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const DiscreteMeasure> atoms_;
  std::optional<WeightModel> weight_;
  std::size_t level_ = 0;
};

inline const char* to_string(MeasureModel::Kind k) {
  switch (k) {
    case MeasureModel::Kind::Atomic: return "atomic";
    case MeasureModel::Kind::Density: return "density";
    default: return "cantor";
  }
}

/// Factor stop point of the Cantor product: remaining angles below this.
inline constexpr double kCantorTailAngle = 1e-4;

namespace detail {
inline std::int64_t positive_mod(std::int64_t n, std::int64_t p) {
  const std::int64_t r = n % p;
  return r < 0 ? r + p : r;
}
}  // namespace detail

/// mu^(n) = prod_k exp(-2 pi i n / 3^k) cos(2 pi n / 3^k) for the Cantor
/// measure. Angles are reduced with integer arithmetic; once 2 pi |n| / 3^k
/// drops below 1e-4 the remaining phases sum to exp(-pi i n / 3^(k-1)) and
/// the remaining cosines are replaced by 1 - (9/8) theta_k^2 / 2.
inline Complex cantor_coefficient(std::int64_t n) {
  if (n == 0) return 1.0;
  Complex acc{1.0, 0.0};
  std::int64_t p = 1;
  const double an = std::abs(static_cast<double>(n));
  for (int k = 1; k < 40; ++k) {
    const std::int64_t prev = p;
    p *= 3;
    const double theta = kTwoPi * an / static_cast<double>(p);
    if (theta < kCantorTailAngle) {
      const double frac = static_cast<double>(detail::positive_mod(n, 2 * prev)) / static_cast<double>(2 * prev);
      acc *= std::polar(1.0 - 0.5 * theta * theta * 9.0 / 8.0, -kTwoPi * frac);
      return acc;
    }
    const double frac = static_cast<double>(detail::positive_mod(n, p)) / static_cast<double>(p);
    acc *= std::polar(std::cos(kTwoPi * frac), -kTwoPi * frac);
  }
  return acc;
}

/// mu^(xi) = exp(-2 pi i xi/3) cos(2 pi xi/3) mu^(xi/3) at a real frequency.
inline Complex cantor_transform(double xi) {
  const double theta = kTwoPi * std::abs(xi) / 3.0;
  if (theta < kCantorTailAngle) return std::polar(1.0 - 0.5 * theta * theta * 9.0 / 8.0, -std::numbers::pi * xi);
  const double phase = kTwoPi * std::remainder(xi / 3.0, 1.0);
  return std::polar(std::cos(phase), -phase) * cantor_transform(xi / 3.0);
}

/// int exp(-2 pi i n x) dmu.
inline Complex fourier_coefficient(const MeasureModel& mu, std::int64_t n) {
  if (mu.kind() == MeasureModel::Kind::Cantor) return cantor_coefficient(n);
  const auto& d = mu.discrete();
  Complex s{0.0, 0.0};
  for (std::size_t j = 0; j < d.size(); ++j) {
    const double phase = kTwoPi * std::remainder(static_cast<double>(n) * d.points[j], 1.0);
    s += d.weights[j] * Complex(std::cos(phase), -std::sin(phase));
  }
  return s;
}

struct RajchmanScan {
  std::vector<double> profile;  // |mu^(n)| for n = 1..n_max
  ScanTable windows{"window_maxima", {"start", "end", "max_abs"}, {}};
  ScanTable witness{"triadic_witness", {"k", "n", "abs_coefficient"}, {}};
  bool decaying = true;
  std::string verdict;
};

/// Tail windows below this maximum count as decayed.
inline constexpr double kRajchmanFloor = 1e-8;

/// |mu^(n)| for 1 <= n <= n_max, maxima over dyadic windows [2^j, 2^(j+1)),
/// and the witness subsequence |mu^(3^k)|. A last-window maximum that keeps
/// at least half of the first one (and stays above 1e-8) is the non-decay
/// verdict. Density measures are scanned only below half the grid size.
inline RajchmanScan rajchman_scan(const MeasureModel& mu, std::size_t n_max, std::size_t witness_k = 8) {
  if (n_max < 10) throw ContractError("rajchman_scan: n_max must be at least 10");
  if (mu.kind() == MeasureModel::Kind::Density) n_max = std::min(n_max, mu.size() / 2 - 1);
  RajchmanScan s;
  s.profile.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) s.profile.push_back(std::abs(fourier_coefficient(mu, static_cast<std::int64_t>(n))));
  for (std::size_t start = 1; start <= n_max; start *= 2) {
    const std::size_t end = std::min(2 * start - 1, n_max);
    double m = 0.0;
    for (std::size_t n = start; n <= end; ++n) m = std::max(m, s.profile[n - 1]);
    s.windows.rows.push_back({static_cast<double>(start), static_cast<double>(end), m});
  }
  std::int64_t p = 1;
  for (std::size_t k = 0; k <= witness_k; ++k, p *= 3) {
    if (mu.kind() == MeasureModel::Kind::Density && static_cast<std::size_t>(p) > n_max) break;
    s.witness.rows.push_back({static_cast<double>(k), static_cast<double>(p), std::abs(fourier_coefficient(mu, p))});
  }
  const double first = s.windows.rows.front()[2];
  const double last = s.windows.rows.back()[2];
  s.decaying = !(last >= 0.5 * first && last > kRajchmanFloor);
  s.verdict = s.decaying ? "Rajchman-consistent" : "not Rajchman";
  return s;
}

/// Unit vectors phi_n = exp(2 pi i n x) in L2(mu) need total mass 1.
inline void require_probability(const DiscreteMeasure& d, const char* op) {
  const double mass = d.total_mass();
  if (std::abs(mass - 1.0) > 1e-12)
    throw ContractError(std::string(op) + ": exponentials are not unit vectors (total mass " + format_17g(mass) +
                        ", expected 1)");
}

inline std::vector<std::int64_t> natural_sweep(std::size_t steps) {
  std::vector<std::int64_t> s(steps);
  for (std::size_t n = 0; n < steps; ++n) s[n] = static_cast<std::int64_t>(n);
  return s;
}

/// 0, 1, -1, 2, -2, ...
inline std::vector<std::int64_t> symmetric_sweep(std::size_t steps) {
  std::vector<std::int64_t> s(steps);
  for (std::size_t n = 0; n < steps; ++n) s[n] = integer_index_at(n);
  return s;
}

inline constexpr double kMonotoneSlack = 1e-14;

struct KaczmarzRun {
  std::vector<double> residuals;  // ||f - x_n|| after step n
  ComplexVector iterate;
  double target_norm = 0.0;

  /// Nonincreasing up to rounding: an increase may not exceed 1e-14 ||f||.
  bool monotone() const { return worst_increase() <= kMonotoneSlack * target_norm; }
  double worst_increase() const {
    double prev = target_norm;
    double worst = 0.0;
    for (double r : residuals) {
      worst = std::max(worst, r - prev);
      prev = r;
    }
    return worst;
  }
  ScanTable table() const {
    ScanTable t{"kaczmarz_residuals", {"step", "residual"}, {}};
    for (std::size_t n = 0; n < residuals.size(); ++n) t.rows.push_back({static_cast<double>(n), residuals[n]});
    return t;
  }
};

/// x_n = x_{n-1} + <f - x_{n-1}, phi_n> phi_n along the sweep, with f given
/// by its coordinates in L2(mu).
inline KaczmarzRun kaczmarz_run(const MeasureModel& mu, const ComplexVector& f,
                                const std::vector<std::int64_t>& sweep) {
  const auto& d = mu.discrete();
  require_probability(d, "kaczmarz_run");
  if (f.dim() != d.size()) throw ContractError("kaczmarz_run: target dimension mismatch");
  KaczmarzRun run;
  run.target_norm = f.norm();
  run.residuals.reserve(sweep.size());
  ComplexVector r = f;
  for (std::int64_t n : sweep) {
    const ComplexVector phi = d.exponential(n);
    r.axpy(-dot(r, phi), phi);
    run.residuals.push_back(r.norm());
  }
  run.iterate = f - r;
  return run;
}

/// g_n = phi_n - sum_{i<n} <phi_n, phi_i> g_i along the sweep.
inline std::vector<ComplexVector> kaczmarz_auxiliary(const MeasureModel& mu, const std::vector<std::int64_t>& sweep) {
  const auto& d = mu.discrete();
  require_probability(d, "kaczmarz_auxiliary");
  std::vector<ComplexVector> phis;
  std::vector<ComplexVector> gs;
  phis.reserve(sweep.size());
  gs.reserve(sweep.size());
  for (std::int64_t n : sweep) {
    ComplexVector phi = d.exponential(n);
    ComplexVector g = phi;
    for (std::size_t i = 0; i < gs.size(); ++i) g.axpy(-dot(phi, phis[i]), gs[i]);
    phis.push_back(std::move(phi));
    gs.push_back(std::move(g));
  }
  return gs;
}

/// sum_{n <= N} <f, g_n> phi_n.
inline ComplexVector auxiliary_expansion(const MeasureModel& mu, const std::vector<ComplexVector>& g,
                                         const std::vector<std::int64_t>& sweep, const ComplexVector& f) {
  if (g.size() != sweep.size()) throw ContractError("auxiliary_expansion: sweep and auxiliary sizes differ");
  ComplexVector x(f.dim());
  for (std::size_t n = 0; n < g.size(); ++n) x.axpy(dot(f, g[n]), mu.discrete().exponential(sweep[n]));
  return x;
}

/// Coordinates of a random trigonometric polynomial with coefficients
/// CN(0,1) / (1 + |k|)^decay, over frequencies 0..degree (Natural) or
/// -degree..degree (Integer).
inline ComplexVector smooth_random_target(const DiscreteMeasure& d, std::uint64_t seed, std::size_t degree = 64,
                                          double decay = 2.0, IndexSet frequencies = IndexSet::Natural) {
  Rng rng = make_rng(seed);
  std::vector<std::pair<std::int64_t, Complex>> terms;
  const std::size_t count = frequencies == IndexSet::Integer ? 2 * degree + 1 : degree + 1;
  for (std::size_t p = 0; p < count; ++p) {
    const std::int64_t k = frequencies == IndexSet::Integer ? integer_index_at(p) : static_cast<std::int64_t>(p);
    terms.emplace_back(k, complex_gaussian(rng) / std::pow(1.0 + std::abs(static_cast<double>(k)), decay));
  }
  ComplexVector v(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    Complex s{0.0, 0.0};
    for (const auto& [k, c] : terms) {
      const double phase = kTwoPi * std::remainder(static_cast<double>(k) * d.points[j], 1.0);
      s += c * Complex(std::cos(phase), std::sin(phase));
    }
    v[j] = std::sqrt(d.weights[j]) * s;
  }
  return v;
}

}  // namespace frlab
