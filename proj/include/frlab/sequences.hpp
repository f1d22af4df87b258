#pragma once

// Vector sequences realised in the canonical coordinate basis, the candidate
// reconstruction operators that act on them, and finite truncations.
//
// A sequence is consumed level by level. At level L it lives in a space of
// dimension dim_at(L) and contributes count_at(L) vectors:
//   scaled basis      dim L,  count L
//   repeated basis    dim L,  count m(0) + ... + m(L-1)   (L whole blocks)
//   exponentials (Z)  dim Q,  count 2L + 1                (indices -L..L)
// Integer-indexed sequences are always enumerated 0, 1, -1, 2, -2, ... so
// every prefix of odd length 2M+1 is the symmetric family -M..M.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "frlab/errors.hpp"
#include "frlab/linalg.hpp"

namespace frlab {

enum class IndexSet { Natural, Integer };

inline const char* to_string(IndexSet s) { return s == IndexSet::Natural ? "N" : "Z"; }

/// Position in the enumeration -> integer index: 0, 1, -1, 2, -2, ...
inline std::int64_t integer_index_at(std::size_t position) {
  if (position == 0) return 0;
  const auto p = static_cast<std::int64_t>(position);
  return (p % 2 == 1) ? (p + 1) / 2 : -p / 2;
}

/// Coordinate vector stored by its nonzero entries.
struct SparseVector {
  std::vector<std::size_t> index;
  std::vector<Complex> value;

  static SparseVector unit(std::size_t k, Complex scale = 1.0) { return {{k}, {scale}}; }

  static SparseVector from_dense(const ComplexVector& v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (v[i] != Complex{0.0, 0.0}) {
        s.index.push_back(i);
        s.value.push_back(v[i]);
      }
    }
    return s;
  }

  std::size_t nnz() const noexcept { return index.size(); }

  ComplexVector dense(std::size_t dim) const {
    ComplexVector v(dim);
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (index[k] >= dim) throw ContractError("sparse vector entry outside truncation dimension");
      v[index[k]] += value[k];
    }
    return v;
  }

  // Indices are unique: every constructor and plus() maintain that.
  double squared_norm() const {
    double s = 0.0;
    for (const auto& z : value) s += std::norm(z);
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  /// <f, this>
  Complex inner_from(const ComplexVector& f) const {
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < index.size(); ++k) s += f[index[k]] * std::conj(value[k]);
    return s;
  }

  /// acc += coef * this
  void add_to(ComplexVector& acc, Complex coef) const {
    for (std::size_t k = 0; k < index.size(); ++k) acc[index[k]] += coef * value[k];
  }

  SparseVector plus(const SparseVector& o) const {
    SparseVector r = *this;
    for (std::size_t k = 0; k < o.index.size(); ++k) {
      bool merged = false;
      for (std::size_t j = 0; j < r.index.size(); ++j) {
        if (r.index[j] == o.index[k]) {
          r.value[j] += o.value[k];
          merged = true;
          break;
        }
      }
      if (!merged) {
        r.index.push_back(o.index[k]);
        r.value.push_back(o.value[k]);
      }
    }
    return r;
  }
};

/// Coordinate realisation of L^2(mu) for a measure with finitely many atoms:
/// a function g is stored as sqrt(weight_j) * g(point_j).
struct DiscreteMeasure {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
  double total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  ComplexVector coordinates(const std::function<Complex(double)>& g) const {
    ComplexVector v(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) v[j] = std::sqrt(weights[j]) * g(points[j]);
    return v;
  }

  /// Coordinates of the exponential x -> exp(2 pi i n x).
  ComplexVector exponential(std::int64_t n) const {
    ComplexVector v(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      const double phase = 2.0 * std::numbers::pi * std::remainder(static_cast<double>(n) * points[j], 1.0);
      v[j] = std::sqrt(weights[j]) * Complex(std::cos(phase), std::sin(phase));
    }
    return v;
  }
};

class VectorSequence;

using CoefficientRule = std::function<double(std::size_t)>;
using MultiplicityRule = std::function<std::size_t(std::size_t)>;
/// (position, dim) -> perturbation vector
using DeltaRule = std::function<SparseVector(std::size_t, std::size_t)>;
/// count -> upper bound on sum_{n >= count} ||delta_n||
using TailBound = std::function<double(std::size_t)>;

namespace tags {

struct Diagonal {
  CoefficientRule c;
};

struct BlockRepeated {
  MultiplicityRule multiplicity;
};

struct Perturbed {
  std::shared_ptr<const VectorSequence> base;
  DeltaRule deltas;
  TailBound tail;
};

struct Exponential {
  std::shared_ptr<const DiscreteMeasure> measure;
};

struct Generic {};

}  // namespace tags

using StructureTag =
    std::variant<tags::Diagonal, tags::BlockRepeated, tags::Perturbed, tags::Exponential, tags::Generic>;

inline const char* tag_name(const StructureTag& t) {
  switch (t.index()) {
    case 0: return "diagonal";
    case 1: return "block_repeated";
    case 2: return "perturbed";
    case 3: return "exponential";
    default: return "generic";
  }
}

class VectorSequence {
public:
  using Generator = std::function<SparseVector(std::size_t position, std::size_t dim)>;
  using SizeRule = std::function<std::size_t(std::size_t level)>;
  using NormRule = std::function<double(std::size_t position)>;

  VectorSequence(std::string name, IndexSet index_set, SizeRule dim_at, SizeRule count_at,
                 Generator generator, std::optional<NormRule> norm_rule, StructureTag tag)
      : name_(std::move(name)), index_set_(index_set), dim_at_(std::move(dim_at)),
        count_at_(std::move(count_at)), generator_(std::move(generator)),
        norm_rule_(std::move(norm_rule)), tag_(std::move(tag)) {}

  const std::string& name() const noexcept { return name_; }
  IndexSet index_set() const noexcept { return index_set_; }
  const StructureTag& tag() const noexcept { return tag_; }

  std::size_t dim_at(std::size_t level) const { return dim_at_(level); }
  std::size_t count_at(std::size_t level) const { return count_at_(level); }

  /// Integer label of the vector at `position` in the enumeration.
  std::int64_t index_at(std::size_t position) const {
    return index_set_ == IndexSet::Integer ? integer_index_at(position)
                                           : static_cast<std::int64_t>(position);
  }

  SparseVector entry(std::size_t position, std::size_t dim) const { return generator_(position, dim); }
  ComplexVector vector(std::size_t position, std::size_t dim) const { return entry(position, dim).dense(dim); }

  double norm(std::size_t position, std::size_t dim) const {
    return norm_rule_ ? (*norm_rule_)(position) : entry(position, dim).norm();
  }
  bool has_norm_rule() const noexcept { return norm_rule_.has_value(); }

  /// Level whose truncation holds exactly `entries` vectors. Block-repeated
  /// sequences reject counts that cut through a block.
  std::size_t level_for_entries(std::size_t entries) const {
    for (std::size_t level = 0;; ++level) {
      const std::size_t c = count_at(level);
      if (c == entries) return level;
      if (c > entries)
        throw ContractError("truncation at " + std::to_string(entries) + " entries of '" + name_ +
                            "' is not aligned with the sequence structure (nearest aligned counts " +
                            std::to_string(level == 0 ? 0 : count_at(level - 1)) + " and " +
                            std::to_string(c) + ")");
    }
  }

private:
  std::string name_;
  IndexSet index_set_;
  SizeRule dim_at_;
  SizeRule count_at_;
  Generator generator_;
  std::optional<NormRule> norm_rule_;
  StructureTag tag_;
};

using SequencePtr = std::shared_ptr<const VectorSequence>;

inline constexpr std::size_t kConstructionHorizon = 4096;

/// f_n = c_n e_n.
inline SequencePtr scaled_basis(CoefficientRule c, std::string name = "scaled_basis") {
  for (std::size_t n = 0; n < kConstructionHorizon; ++n) {
    const double cn = c(n);
    if (!(cn > 0.0) || !std::isfinite(cn))
      throw PreconditionError("scaled_basis: coefficient c_" + std::to_string(n) +
                              " = " + std::to_string(cn) + " is not positive");
  }
  auto identity = [](std::size_t level) { return level; };
  auto gen = [c](std::size_t n, std::size_t dim) {
    if (n >= dim) throw ContractError("scaled_basis: position outside truncation");
    return SparseVector::unit(n, c(n));
  };
  return std::make_shared<VectorSequence>(std::move(name), IndexSet::Natural, identity, identity, gen,
                                          VectorSequence::NormRule(c), tags::Diagonal{c});
}

inline SequencePtr orthonormal_basis() {
  return scaled_basis([](std::size_t) { return 1.0; }, "orthonormal_basis");
}

/// Number of entries in the first `blocks` blocks.
inline std::size_t block_prefix_count(const MultiplicityRule& m, std::size_t blocks) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < blocks; ++k) s += m(k);
  return s;
}

/// e_k repeated multiplicity(k) times consecutively; default multiplicity k+1
/// gives e_0, e_1, e_1, e_2, e_2, e_2, ...
inline SequencePtr repeated_basis(MultiplicityRule multiplicity = [](std::size_t k) { return k + 1; },
                                  std::string name = "repeated_basis") {
  auto identity = [](std::size_t level) { return level; };
  auto count = [multiplicity](std::size_t blocks) { return block_prefix_count(multiplicity, blocks); };
  // Block starts over the construction horizon, for binary search.
  auto starts = std::make_shared<std::vector<std::size_t>>();
  starts->reserve(kConstructionHorizon + 1);
  std::size_t acc = 0;
  for (std::size_t k = 0; k <= kConstructionHorizon; ++k) {
    starts->push_back(acc);
    const std::size_t m = multiplicity(k);
    if (m == 0) throw PreconditionError("repeated_basis: multiplicity of block " + std::to_string(k) + " is zero");
    acc += m;
  }
  auto block_of = [multiplicity, starts](std::size_t n) {
    if (n < starts->back()) {
      const auto it = std::upper_bound(starts->begin(), starts->end(), n);
      return static_cast<std::size_t>(it - starts->begin()) - 1;
    }
    std::size_t k = starts->size() - 1;
    std::size_t start = starts->back();
    while (start + multiplicity(k) <= n) start += multiplicity(k++);
    return k;
  };
  auto gen = [block_of](std::size_t n, std::size_t dim) {
    const std::size_t k = block_of(n);
    if (k >= dim) throw ContractError("repeated_basis: position outside truncation");
    return SparseVector::unit(k);
  };
  return std::make_shared<VectorSequence>(std::move(name), IndexSet::Natural, identity, count, gen,
                                          VectorSequence::NormRule([](std::size_t) { return 1.0; }),
                                          tags::BlockRepeated{std::move(multiplicity)});
}

/// Block index of the entry at `position` for a block-repeated sequence.
inline std::size_t block_index(const tags::BlockRepeated& tag, std::size_t position) {
  std::size_t k = 0;
  std::size_t start = 0;
  while (start + tag.multiplicity(k) <= position) start += tag.multiplicity(k++);
  return k;
}

/// h_n = f_n + delta_n. `tail` must bound the l1 mass of the deltas beyond
/// any horizon; it is the declared summable majorant.
inline SequencePtr perturb(SequencePtr base, DeltaRule deltas, TailBound tail,
                           std::string name = "perturbed") {
  if (!base) throw ContractError("perturb: null base sequence");
  const double t0 = tail(0);
  if (!std::isfinite(t0) || t0 < 0.0)
    throw PreconditionError("perturb: the declared l1 majorant of the deltas is not finite");
  auto gen = [base, deltas](std::size_t n, std::size_t dim) {
    return base->entry(n, dim).plus(deltas(n, dim));
  };
  auto dim_at = [base](std::size_t level) { return base->dim_at(level); };
  auto count_at = [base](std::size_t level) { return base->count_at(level); };
  const IndexSet is = base->index_set();
  return std::make_shared<VectorSequence>(std::move(name), is, dim_at, count_at, gen, std::nullopt,
                                          tags::Perturbed{base, std::move(deltas), std::move(tail)});
}

/// delta_n = total / 2^(n+1) * e_direction; full l1 mass `total`.
inline std::pair<DeltaRule, TailBound> geometric_deltas(double total, std::size_t direction = 0) {
  DeltaRule d = [total, direction](std::size_t n, std::size_t dim) {
    if (direction >= dim) return SparseVector{};
    return SparseVector::unit(direction, std::ldexp(total, -static_cast<int>(std::min<std::size_t>(n + 1, 1070))));
  };
  TailBound t = [total](std::size_t count) {
    return std::ldexp(total, -static_cast<int>(std::min<std::size_t>(count, 1070)));
  };
  return {std::move(d), std::move(t)};
}

/// A single perturbation of size `size` along e_direction at one position.
inline std::pair<DeltaRule, TailBound> single_delta(std::size_t position, double size,
                                                    std::size_t direction) {
  DeltaRule d = [=](std::size_t n, std::size_t dim) {
    if (n != position || direction >= dim) return SparseVector{};
    return SparseVector::unit(direction, size);
  };
  TailBound t = [=](std::size_t count) { return count > position ? 0.0 : std::abs(size); };
  return {std::move(d), std::move(t)};
}

inline std::pair<DeltaRule, TailBound> zero_deltas() {
  return {[](std::size_t, std::size_t) { return SparseVector{}; }, [](std::size_t) { return 0.0; }};
}

/// sum_{n < count_at(level)} ||delta_n|| for a perturbed sequence.
inline double horizon_spent(const VectorSequence& h, std::size_t level) {
  const auto* p = std::get_if<tags::Perturbed>(&h.tag());
  if (!p) throw UnsupportedStructure("horizon_spent: sequence is not perturbed");
  const std::size_t dim = h.dim_at(level);
  const std::size_t count = h.count_at(level);
  double s = 0.0;
  for (std::size_t n = 0; n < count; ++n) s += p->deltas(n, dim).norm();
  return s;
}

/// Horizon l1 mass plus the declared tail majorant.
inline double total_spent(const VectorSequence& h, std::size_t level) {
  const auto* p = std::get_if<tags::Perturbed>(&h.tag());
  if (!p) throw UnsupportedStructure("total_spent: sequence is not perturbed");
  return horizon_spent(h, level) + p->tail(h.count_at(level));
}

/// {exp(2 pi i n x)} in L^2(mu). Natural: n = 0..L-1; Integer: n = -L..L.
inline SequencePtr exponential_sequence(std::shared_ptr<const DiscreteMeasure> measure, IndexSet index_set,
                                        std::string name = "exponentials") {
  if (!measure || measure->size() == 0) throw ContractError("exponential_sequence: empty measure");
  const std::size_t q = measure->size();
  auto dim_at = [q](std::size_t) { return q; };
  auto count_at = [index_set](std::size_t level) {
    return index_set == IndexSet::Integer ? 2 * level + 1 : level;
  };
  auto gen = [measure, index_set](std::size_t n, std::size_t) {
    const std::int64_t k = index_set == IndexSet::Integer ? integer_index_at(n) : static_cast<std::int64_t>(n);
    SparseVector s;
    const ComplexVector v = measure->exponential(k);
    s.index.resize(v.dim());
    s.value.assign(v.begin(), v.end());
    for (std::size_t j = 0; j < v.dim(); ++j) s.index[j] = j;
    return s;
  };
  const double mass = measure->total_mass();
  return std::make_shared<VectorSequence>(
      std::move(name), index_set, dim_at, count_at, gen,
      VectorSequence::NormRule([mass](std::size_t) { return std::sqrt(mass); }), tags::Exponential{measure});
}

/// Finite explicit family in a fixed dimension; level L exposes the first
/// min(L, size) vectors.
inline SequencePtr explicit_sequence(std::vector<ComplexVector> vectors, std::string name = "explicit") {
  if (vectors.empty()) throw ContractError("explicit_sequence: no vectors");
  const std::size_t dim = vectors.front().dim();
  for (const auto& v : vectors)
    if (v.dim() != dim) throw ContractError("explicit_sequence: ragged vectors");
  auto data = std::make_shared<std::vector<SparseVector>>();
  for (const auto& v : vectors) data->push_back(SparseVector::from_dense(v));
  const std::size_t size = vectors.size();
  auto dim_at = [dim](std::size_t) { return dim; };
  auto count_at = [size](std::size_t level) { return std::min(level, size); };
  auto gen = [data](std::size_t n, std::size_t) { return data->at(n); };
  return std::make_shared<VectorSequence>(std::move(name), IndexSet::Natural, dim_at, count_at, gen,
                                          std::nullopt, tags::Generic{});
}

/// The operator B of a reconstruction candidate.
class ReconstructionOperator {
public:
  struct DiagonalRule {
    CoefficientRule d;
  };
  struct Dense {
    ComplexMatrix m;
  };
  struct Multiplication {
    std::vector<double> samples;
  };
  using Representation = std::variant<DiagonalRule, Dense, Multiplication>;

  ReconstructionOperator(Representation rep, std::string description)
      : rep_(std::move(rep)), description_(std::move(description)) {}

  static ReconstructionOperator identity() {
    return {DiagonalRule{[](std::size_t) { return 1.0; }}, "identity"};
  }
  static ReconstructionOperator diagonal(CoefficientRule d, std::string description) {
    return {DiagonalRule{std::move(d)}, std::move(description)};
  }
  static ReconstructionOperator dense(ComplexMatrix m, std::string description = "dense") {
    if (!m.square()) throw ContractError("dense reconstruction operator must be square");
    return {Dense{std::move(m)}, std::move(description)};
  }
  static ReconstructionOperator multiplication(std::vector<double> samples, std::string description) {
    return {Multiplication{std::move(samples)}, std::move(description)};
  }

  const Representation& representation() const noexcept { return rep_; }
  const std::string& description() const noexcept { return description_; }

  /// Fixed dimension for dense and multiplication operators.
  std::optional<std::size_t> domain_dim() const {
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->m.rows();
    if (const auto* m = std::get_if<Multiplication>(&rep_)) return m->samples.size();
    return std::nullopt;
  }

  void check_dim(std::size_t dim) const {
    if (auto fixed = domain_dim(); fixed && *fixed != dim)
      throw ContractError("reconstruction operator acts on dimension " + std::to_string(*fixed) +
                          " but the truncation has dimension " + std::to_string(dim));
  }

  ComplexMatrix matrix(std::size_t dim) const {
    check_dim(dim);
    if (const auto* d = std::get_if<DiagonalRule>(&rep_)) {
      ComplexMatrix m(dim, dim);
      for (std::size_t i = 0; i < dim; ++i) m(i, i) = d->d(i);
      return m;
    }
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->m;
    const auto& s = std::get<Multiplication>(rep_).samples;
    return ComplexMatrix::diagonal(std::span<const double>(s));
  }

  ComplexVector apply(const ComplexVector& v) const {
    check_dim(v.dim());
    if (const auto* d = std::get_if<DiagonalRule>(&rep_)) {
      ComplexVector out(v.dim());
      for (std::size_t i = 0; i < v.dim(); ++i) out[i] = d->d(i) * v[i];
      return out;
    }
    if (const auto* d = std::get_if<Dense>(&rep_)) return d->m * v;
    const auto& s = std::get<Multiplication>(rep_).samples;
    ComplexVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s[i] * v[i];
    return out;
  }

  ComplexVector apply_adjoint(const ComplexVector& v) const {
    if (const auto* d = std::get_if<Dense>(&rep_)) {
      check_dim(v.dim());
      return d->m.adjoint() * v;
    }
    return apply(v);  // diagonal kinds are real
  }

  /// Operator norm at truncation `dim`.
  double norm(std::size_t dim) const {
    check_dim(dim);
    if (const auto* d = std::get_if<DiagonalRule>(&rep_)) {
      double m = 0.0;
      for (std::size_t i = 0; i < dim; ++i) m = std::max(m, std::abs(d->d(i)));
      return m;
    }
    if (const auto* d = std::get_if<Dense>(&rep_)) return op_norm(d->m);
    double m = 0.0;
    for (double s : std::get<Multiplication>(rep_).samples) m = std::max(m, std::abs(s));
    return m;
  }

  /// Smallest eigenvalue of the Hermitian part at truncation `dim`.
  double min_eigenvalue(std::size_t dim) const {
    check_dim(dim);
    if (const auto* d = std::get_if<DiagonalRule>(&rep_)) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < dim; ++i) m = std::min(m, d->d(i));
      return m;
    }
    if (const auto* d = std::get_if<Dense>(&rep_)) return hermitian_eig(hermitian_part(d->m)).values.front();
    double m = std::numeric_limits<double>::infinity();
    for (double s : std::get<Multiplication>(rep_).samples) m = std::min(m, s);
    return m;
  }

  bool is_diagonal() const noexcept { return !std::holds_alternative<Dense>(rep_); }

  /// B applied to a sparse vector, densified in `dim`.
  ComplexVector apply(const SparseVector& v, std::size_t dim) const {
    check_dim(dim);
    if (const auto* d = std::get_if<DiagonalRule>(&rep_)) {
      ComplexVector out(dim);
      for (std::size_t k = 0; k < v.nnz(); ++k) out[v.index[k]] += d->d(v.index[k]) * v.value[k];
      return out;
    }
    return apply(v.dense(dim));
  }

private:
  Representation rep_;
  std::string description_;
};

/// Diagonal d_n = 1/(n+1)^2: the operator reconstructing f_n = (n+1) e_n.
inline ReconstructionOperator inverse_square_diagonal() {
  return ReconstructionOperator::diagonal(
      [](std::size_t n) {
        const double k = static_cast<double>(n) + 1.0;
        return 1.0 / (k * k);
      },
      "diag 1/(n+1)^2");
}

/// Diagonal d_k = 1/(k+1): the operator reconstructing the repeated basis,
/// indexed by the coordinate (block) k.
inline ReconstructionOperator harmonic_diagonal() {
  return ReconstructionOperator::diagonal(
      [](std::size_t k) { return 1.0 / (static_cast<double>(k) + 1.0); }, "diag 1/(k+1)");
}

/// Fixed-level realisation of a sequence.
class TruncationFrame {
public:
  TruncationFrame(std::size_t level, std::size_t dim, IndexSet index_set,
                  std::vector<std::int64_t> indices, std::vector<SparseVector> elements)
      : level_(level), dim_(dim), index_set_(index_set), indices_(std::move(indices)),
        elements_(std::move(elements)) {}

  std::size_t level() const noexcept { return level_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return elements_.size(); }
  IndexSet index_set() const noexcept { return index_set_; }
  const std::vector<std::int64_t>& indices() const noexcept { return indices_; }
  const SparseVector& element(std::size_t n) const { return elements_.at(n); }
  ComplexVector element_dense(std::size_t n) const { return elements_.at(n).dense(dim_); }
  const std::vector<SparseVector>& elements() const noexcept { return elements_; }

  /// Row n holds the conjugated coordinates of f_n, so analysis * f = (<f, f_n>)_n.
  ComplexMatrix analysis() const {
    ComplexMatrix a(count(), dim_);
    for (std::size_t n = 0; n < count(); ++n) {
      const auto& e = elements_[n];
      for (std::size_t k = 0; k < e.nnz(); ++k) a(n, e.index[k]) += std::conj(e.value[k]);
    }
    return a;
  }

  ComplexMatrix synthesis() const { return analysis().adjoint(); }

  /// S = sum_n f_n f_n^*
  ComplexMatrix frame_op() const {
    ComplexMatrix s(dim_, dim_);
    for (const auto& e : elements_) {
      for (std::size_t a = 0; a < e.nnz(); ++a)
        for (std::size_t b = 0; b < e.nnz(); ++b)
          s(e.index[a], e.index[b]) += e.value[a] * std::conj(e.value[b]);
    }
    return s;
  }

  /// G(n, m) = <f_m, f_n>
  ComplexMatrix gram() const {
    const ComplexMatrix a = analysis();
    ComplexMatrix g(count(), count());
    for (std::size_t n = 0; n < count(); ++n) {
      for (std::size_t m = n; m < count(); ++m) {
        Complex s{0.0, 0.0};
        const auto rn = a.row(n);
        const auto rm = a.row(m);
        for (std::size_t k = 0; k < dim_; ++k) s += std::conj(rm[k]) * rn[k];
        g(n, m) = s;
        g(m, n) = std::conj(s);
      }
    }
    return g;
  }

  /// (<f, f_n>)_n
  ComplexVector analyze(const ComplexVector& f) const {
    ComplexVector c(count());
    for (std::size_t n = 0; n < count(); ++n) c[n] = elements_[n].inner_from(f);
    return c;
  }

  /// sum_n c_n f_n
  ComplexVector synthesize(const ComplexVector& c) const {
    if (c.dim() != count()) throw ContractError("synthesize: coefficient count mismatch");
    ComplexVector out(dim_);
    for (std::size_t n = 0; n < count(); ++n) elements_[n].add_to(out, c[n]);
    return out;
  }

private:
  std::size_t level_;
  std::size_t dim_;
  IndexSet index_set_;
  std::vector<std::int64_t> indices_;
  std::vector<SparseVector> elements_;
};

inline TruncationFrame truncate(const VectorSequence& seq, std::size_t level) {
  if (level < 1) throw ContractError("truncate: level must be at least 1");
  const std::size_t dim = seq.dim_at(level);
  const std::size_t count = seq.count_at(level);
  std::vector<std::int64_t> indices(count);
  std::vector<SparseVector> elements;
  elements.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    indices[n] = seq.index_at(n);
    elements.push_back(seq.entry(n, dim));
  }
  return {level, dim, seq.index_set(), std::move(indices), std::move(elements)};
}

/// Family obtained by applying a dense operator to every element.
inline TruncationFrame transformed(const TruncationFrame& tf, const ComplexMatrix& op) {
  std::vector<SparseVector> out;
  out.reserve(tf.count());
  for (std::size_t n = 0; n < tf.count(); ++n)
    out.push_back(SparseVector::from_dense(op * tf.element_dense(n)));
  return {tf.level(), tf.dim(), tf.index_set(), tf.indices(), std::move(out)};
}

/// Family with every element rescaled by `scale(n)`.
inline TruncationFrame rescaled(const TruncationFrame& tf, const std::function<double(std::size_t)>& scale) {
  std::vector<SparseVector> out = tf.elements();
  for (std::size_t n = 0; n < out.size(); ++n)
    for (auto& z : out[n].value) z *= scale(n);
  return {tf.level(), tf.dim(), tf.index_set(), tf.indices(), std::move(out)};
}

}  // namespace frlab
