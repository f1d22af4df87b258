#pragma once

// Experiment declarations: parsing, validation and construction of the
// sequences, operators, measures and weights they name.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "frlab/measures.hpp"
#include "frlab/perturbation.hpp"
#include "frlab/reconstruction.hpp"
#include "frlab/report.hpp"
#include "frlab/sequences.hpp"

namespace frlab::cli {

/// A config document that does not validate. `field` is the JSON path of
/// the offending entry, e.g. "experiments[2].dims[0]".
class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field(std::move(field)) {}
  std::string field;
};

enum class Kind { Analyze, Reconstruct, Perturb, Kaczmarz, WeightedFourier, Suite };

inline constexpr std::pair<Kind, const char*> kKindNames[] = {
    {Kind::Analyze, "analyze"},   {Kind::Reconstruct, "reconstruct"},
    {Kind::Perturb, "perturb"},   {Kind::Kaczmarz, "kaczmarz"},
    {Kind::WeightedFourier, "weighted-fourier"}, {Kind::Suite, "suite"},
};

inline const char* to_string(Kind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

/// Quadrature-backed experiments default to a looser tolerance.
inline constexpr double kExactDefault = 1e-9;
inline constexpr double kQuadratureDefault = 1e-6;

struct ExperimentConfig {
  std::string name;
  Kind kind = Kind::Analyze;
  Json sequence;  // null when absent
  Json op;
  Json measure;
  Json weight;
  Json deltas;
  std::vector<std::size_t> dims;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = kExactDefault;
  std::string tolerance_source;  // "config", "default-exact" or "default-quadrature"
  std::vector<std::string> procedures;
  std::vector<std::pair<std::string, std::string>> expect;  // procedure -> verdict
  Json params;  // kind-specific scalars, defaults filled in
  std::string output_dir;
  std::string report_file;
  std::vector<ExperimentConfig> experiments;
  Json echo;

  std::optional<std::string> expected_verdict(const std::string& procedure) const {
    for (const auto& [p, v] : expect)
      if (p == procedure) return v;
    return std::nullopt;
  }
};

namespace detail {

inline std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
  return s;
}

inline std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

inline void allow_keys(const Json& j, const std::string& path, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(child(path, key), "unknown field (allowed: " + join(allowed) + ")");
}

inline const Json& require(const Json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigError(child(path, key), "required field is missing");
  return j.at(key);
}

inline double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path, "expected a finite number");
  return d;
}

inline double number_or(const Json& j, const std::string& path, const std::string& key, double fallback) {
  return j.contains(key) ? number(j.at(key), child(path, key)) : fallback;
}

inline double positive_number(const Json& j, const std::string& path, const std::string& key) {
  const double d = number(require(j, path, key), child(path, key));
  if (!(d > 0.0)) throw ConfigError(child(path, key), "must be positive");
  return d;
}

inline std::uint64_t unsigned_integer(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(path, "must be a nonnegative integer, got " + v.dump());
  throw ConfigError(path, "expected a nonnegative integer");
}

inline std::size_t count(const Json& v, const std::string& path, std::size_t lo, std::size_t hi) {
  const std::uint64_t n = unsigned_integer(v, path);
  if (n < lo || n > hi)
    throw ConfigError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                std::to_string(n));
  return static_cast<std::size_t>(n);
}

inline std::size_t count_or(const Json& j, const std::string& path, const std::string& key, std::size_t fallback,
                            std::size_t lo, std::size_t hi) {
  return j.contains(key) ? count(j.at(key), child(path, key), lo, hi) : fallback;
}

inline std::string string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

inline std::string choice(const Json& v, const std::string& path, const std::vector<std::string>& valid,
                          const char* what) {
  const std::string s = string(v, path);
  if (std::find(valid.begin(), valid.end(), s) == valid.end())
    throw ConfigError(path, std::string("unknown ") + what + " '" + s + "' (valid: " + join(valid) + ")");
  return s;
}

inline std::vector<double> number_list(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], element(path, i)));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Declarations. Each builder validates its JSON and constructs the object.

inline const std::vector<std::string> kSequenceTags{"orthonormal_basis", "scaled_basis", "repeated_basis",
                                                    "perturbed", "exponentials"};
inline const std::vector<std::string> kOperatorTags{"identity", "inverse_square", "harmonic_blocks",
                                                    "diagonal_power", "synthesized"};
inline const std::vector<std::string> kMeasureKinds{"cantor", "density", "atomic"};
inline const std::vector<std::string> kWeightRules{"constant", "power", "step", "flat_zero"};
inline const std::vector<std::string> kDeltaRules{"geometric", "single", "zero"};

inline constexpr std::size_t kMaxLevel = 4096;
inline constexpr std::size_t kMaxCantorLevel = 14;
inline constexpr std::size_t kMaxGrid = 1 << 16;

inline WeightModel build_weight(const Json& j, const std::string& path) {
  using namespace detail;
  require_object(j, path);
  const std::string rule = choice(require(j, path, "rule"), child(path, "rule"), kWeightRules, "weight rule");
  if (rule == "constant") {
    allow_keys(j, path, {"rule", "value"});
    return WeightModel::constant(positive_number(j, path, "value"));
  }
  if (rule == "power") {
    allow_keys(j, path, {"rule", "center", "exponent"});
    const double c = number(require(j, path, "center"), child(path, "center"));
    if (!(c >= 0.0 && c <= 1.0)) throw ConfigError(child(path, "center"), "must lie in [0, 1]");
    return WeightModel::power(c, number(require(j, path, "exponent"), child(path, "exponent")));
  }
  if (rule == "step") {
    allow_keys(j, path, {"rule", "split", "left", "right"});
    const double s = number(require(j, path, "split"), child(path, "split"));
    if (!(s > 0.0 && s < 1.0)) throw ConfigError(child(path, "split"), "must lie in (0, 1)");
    return WeightModel::step(s, positive_number(j, path, "left"), positive_number(j, path, "right"));
  }
  allow_keys(j, path, {"rule"});
  return WeightModel::flat_zero();
}

inline MeasureModel build_measure(const Json& j, const std::string& path) {
  using namespace detail;
  require_object(j, path);
  const std::string kind = choice(require(j, path, "kind"), child(path, "kind"), kMeasureKinds, "measure kind");
  if (kind == "cantor") {
    allow_keys(j, path, {"kind", "level"});
    return MeasureModel::cantor(count(require(j, path, "level"), child(path, "level"), 1, kMaxCantorLevel));
  }
  if (kind == "density") {
    allow_keys(j, path, {"kind", "weight", "grid"});
    const std::size_t q = count_or(j, path, "grid", kDefaultGrid, 2, kMaxGrid);
    if (q % 2) throw ConfigError(child(path, "grid"), "must be even");
    try {
      return MeasureModel::density(build_weight(require(j, path, "weight"), child(path, "weight")), q);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(child(path, "weight"), e.what());
    }
  }
  allow_keys(j, path, {"kind", "points", "weights"});
  const auto points = number_list(require(j, path, "points"), child(path, "points"));
  const auto weights = number_list(require(j, path, "weights"), child(path, "weights"));
  try {
    return MeasureModel::atomic(points, weights);
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

inline std::pair<DeltaRule, TailBound> build_deltas(const Json& j, const std::string& path) {
  using namespace detail;
  require_object(j, path);
  const std::string rule = choice(require(j, path, "rule"), child(path, "rule"), kDeltaRules, "delta rule");
  if (rule == "geometric") {
    allow_keys(j, path, {"rule", "total", "direction"});
    const double total = number(require(j, path, "total"), child(path, "total"));
    if (!(total >= 0.0)) throw ConfigError(child(path, "total"), "must be nonnegative");
    return geometric_deltas(total, count_or(j, path, "direction", 0, 0, kMaxLevel));
  }
  if (rule == "single") {
    allow_keys(j, path, {"rule", "position", "size", "direction"});
    return single_delta(count(require(j, path, "position"), child(path, "position"), 0, kMaxLevel),
                        number(require(j, path, "size"), child(path, "size")),
                        count_or(j, path, "direction", 0, 0, kMaxLevel));
  }
  allow_keys(j, path, {"rule"});
  return zero_deltas();
}

inline SequencePtr build_sequence(const Json& j, const std::string& path) {
  using namespace detail;
  require_object(j, path);
  const std::string tag = choice(require(j, path, "tag"), child(path, "tag"), kSequenceTags, "sequence tag");
  if (tag == "orthonormal_basis") {
    allow_keys(j, path, {"tag"});
    return orthonormal_basis();
  }
  if (tag == "scaled_basis") {
    allow_keys(j, path, {"tag", "power"});
    const double p = number_or(j, path, "power", 1.0);
    if (std::abs(p) > 4.0) throw ConfigError(child(path, "power"), "must lie in [-4, 4]");
    return scaled_basis([p](std::size_t n) { return std::pow(static_cast<double>(n) + 1.0, p); },
                        "scaled_basis (n+1)^" + format_17g(p));
  }
  if (tag == "repeated_basis") {
    allow_keys(j, path, {"tag", "multiplicity", "copies"});
    const std::string m = j.contains("multiplicity")
                              ? choice(j.at("multiplicity"), child(path, "multiplicity"), {"linear", "constant"},
                                       "multiplicity")
                              : "linear";
    if (m == "linear") {
      if (j.contains("copies")) throw ConfigError(child(path, "copies"), "only valid with multiplicity 'constant'");
      return repeated_basis();
    }
    const std::size_t copies = count(require(j, path, "copies"), child(path, "copies"), 1, 64);
    return repeated_basis([copies](std::size_t) { return copies; }, "repeated_basis x" + std::to_string(copies));
  }
  if (tag == "perturbed") {
    allow_keys(j, path, {"tag", "base", "deltas"});
    auto base = build_sequence(require(j, path, "base"), child(path, "base"));
    auto [d, t] = build_deltas(require(j, path, "deltas"), child(path, "deltas"));
    std::string name = "perturbed " + base->name();
    return perturb(std::move(base), std::move(d), std::move(t), std::move(name));
  }
  allow_keys(j, path, {"tag", "measure", "index_set"});
  const MeasureModel mu = build_measure(require(j, path, "measure"), child(path, "measure"));
  const std::string is = j.contains("index_set")
                             ? choice(j.at("index_set"), child(path, "index_set"), {"natural", "integer"}, "index set")
                             : "integer";
  return exponential_sequence(mu.discrete_ptr(), is == "natural" ? IndexSet::Natural : IndexSet::Integer,
                              std::string("exponentials in L2(") + to_string(mu.kind()) + ")");
}

/// Empty optional means "synthesized": construct_B at every level.
inline std::optional<ReconstructionOperator> build_operator(const Json& j, const std::string& path) {
  using namespace detail;
  require_object(j, path);
  const std::string tag = choice(require(j, path, "tag"), child(path, "tag"), kOperatorTags, "operator tag");
  if (tag == "diagonal_power") {
    allow_keys(j, path, {"tag", "power"});
    const double p = number(require(j, path, "power"), child(path, "power"));
    if (std::abs(p) > 8.0) throw ConfigError(child(path, "power"), "must lie in [-8, 8]");
    return ReconstructionOperator::diagonal([p](std::size_t n) { return std::pow(static_cast<double>(n) + 1.0, p); },
                                            "diag (n+1)^" + format_17g(p));
  }
  allow_keys(j, path, {"tag"});
  if (tag == "identity") return ReconstructionOperator::identity();
  if (tag == "inverse_square") return inverse_square_diagonal();
  if (tag == "harmonic_blocks") return harmonic_diagonal();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Experiment configs.

struct KindSchema {
  std::vector<std::string> procedures;
  std::vector<std::string> default_procedures;
  std::vector<std::string> fields;  // kind-specific top-level fields
  std::size_t default_trials;
};

inline const KindSchema& schema(Kind k) {
  static const KindSchema analyze{{"bounds", "gohberg", "classifier", "parseval", "normalized_dual", "rajchman"},
                                  {"bounds"},
                                  {"sequence", "operator", "measure", "dims", "n_max", "witness_k", "cross_check_level"},
                                  20};
  static const KindSchema reconstruct{{"fr_scan", "battery", "certify", "uniqueness", "construct"},
                                      {"fr_scan"},
                                      {"sequence", "operator", "dims"},
                                      100};
  static const KindSchema perturb{{"budget", "fr_scan", "persistence"},
                                  {"budget", "fr_scan"},
                                  {"sequence", "operator", "deltas", "dims", "witness", "caps"},
                                  20};
  static const KindSchema kaczmarz{{"monotone", "convergence", "dual_path"},
                                   {"monotone", "convergence", "dual_path"},
                                   {"measure", "steps", "sweep", "target", "convergence_fraction", "dual_path_steps"},
                                   20};
  static const KindSchema weighted{{"exponentials", "a2"}, {"exponentials"}, {"weight", "dims", "grid", "a2_depth"}, 8};
  static const KindSchema suite{{}, {}, {"experiments"}, 0};
  switch (k) {
    case Kind::Analyze: return analyze;
    case Kind::Reconstruct: return reconstruct;
    case Kind::Perturb: return perturb;
    case Kind::Kaczmarz: return kaczmarz;
    case Kind::WeightedFourier: return weighted;
    default: return suite;
  }
}

inline const std::vector<std::string> kCommonFields{"name",      "kind",       "description", "seed", "trials",
                                                    "tolerance", "procedures", "expect",      "output"};

namespace detail {

inline std::vector<std::size_t> dims_list(const Json& j, const std::string& path) {
  const Json& v = require(j, path, "dims");
  const std::string p = child(path, "dims");
  if (!v.is_array() || v.empty()) throw ConfigError(p, "expected a nonempty array of positive integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string pi = element(p, i);
    if (v[i].is_number_integer() && !v[i].is_number_unsigned())
      throw ConfigError(pi, "dimension must be a positive integer, got " + v[i].dump());
    out.push_back(count(v[i], pi, 1, kMaxLevel));
    if (i && out[i] <= out[i - 1]) throw ConfigError(pi, "dims must be strictly ascending");
  }
  return out;
}

inline bool needs_fixed_operator(const std::string& procedure) {
  return procedure == "gohberg" || procedure == "parseval" || procedure == "normalized_dual" ||
         procedure == "uniqueness" || procedure == "construct";
}

inline void validate_sequence_kind(ExperimentConfig& c, const Json& j, const std::string& path) {
  c.sequence = require(j, path, "sequence");
  c.dims = dims_list(j, path);
  const SequencePtr seq = build_sequence(c.sequence, child(path, "sequence"));
  // Levels must be realizable for the declared sequence.
  for (std::size_t i = 0; i < c.dims.size(); ++i)
    if (seq->count_at(c.dims[i]) > 4 * kMaxLevel)
      throw ConfigError(element(child(path, "dims"), i),
                        "truncation holds " + std::to_string(seq->count_at(c.dims[i])) + " vectors, above the " +
                            std::to_string(4 * kMaxLevel) + " supported");
}

}  // namespace detail

inline ExperimentConfig parse_config(const Json& j, const std::string& path = "", bool nested = false) {
  using namespace detail;
  require_object(j, path);
  ExperimentConfig c;
  c.echo = j;
  c.name = string(require(j, path, "name"), child(path, "name"));
  if (c.name.empty() || !std::all_of(c.name.begin(), c.name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
      }))
    throw ConfigError(child(path, "name"), "must be nonempty and use only letters, digits, '-', '_' and '.'");

  std::vector<std::string> kinds;
  for (const auto& [k, n] : kKindNames) kinds.push_back(n);
  const std::string kind = choice(require(j, path, "kind"), child(path, "kind"), kinds, "experiment kind");
  for (const auto& [k, n] : kKindNames)
    if (kind == n) c.kind = k;
  const KindSchema& sc = schema(c.kind);

  std::vector<std::string> allowed = kCommonFields;
  allowed.insert(allowed.end(), sc.fields.begin(), sc.fields.end());
  allow_keys(j, path, allowed);
  if (j.contains("description")) string(j.at("description"), child(path, "description"));

  c.seed = j.contains("seed") ? unsigned_integer(j.at("seed"), child(path, "seed")) : 0;
  c.trials = count_or(j, path, "trials", sc.default_trials, 1, 10000);

  if (j.contains("procedures")) {
    if (c.kind == Kind::Suite) throw ConfigError(child(path, "procedures"), "not valid for a suite");
    const Json& p = j.at("procedures");
    const std::string pp = child(path, "procedures");
    if (!p.is_array() || p.empty()) throw ConfigError(pp, "expected a nonempty array of procedure names");
    for (std::size_t i = 0; i < p.size(); ++i) {
      c.procedures.push_back(choice(p[i], element(pp, i), sc.procedures, "procedure"));
      if (std::count(c.procedures.begin(), c.procedures.end(), c.procedures.back()) > 1)
        throw ConfigError(element(pp, i), "duplicate procedure");
    }
  } else if (c.kind == Kind::Analyze && j.contains("measure")) {
    c.procedures = {"rajchman"};
  } else {
    c.procedures = sc.default_procedures;
  }

  if (j.contains("expect")) {
    const Json& e = j.at("expect");
    const std::string ep = child(path, "expect");
    require_object(e, ep);
    for (const auto& [proc, verdict] : e.items()) {
      if (std::find(c.procedures.begin(), c.procedures.end(), proc) == c.procedures.end())
        throw ConfigError(child(ep, proc), "expectation for a procedure that is not run (running: " +
                                               join(c.procedures) + ")");
      c.expect.emplace_back(proc, string(verdict, child(ep, proc)));
    }
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    const std::string op = child(path, "output");
    if (nested) throw ConfigError(op, "only valid at the top level");
    require_object(o, op);
    allow_keys(o, op, {"dir", "report"});
    if (o.contains("dir")) c.output_dir = string(o.at("dir"), child(op, "dir"));
    if (o.contains("report")) c.report_file = string(o.at("report"), child(op, "report"));
  }

  bool quadrature = c.kind == Kind::WeightedFourier;
  Json params = Json::object();
  switch (c.kind) {
    case Kind::Analyze: {
      const bool has_seq = j.contains("sequence");
      const bool has_measure = j.contains("measure");
      if (has_seq == has_measure) throw ConfigError(path.empty() ? "<root>" : path, "declare exactly one of 'sequence' or 'measure'");
      if (has_seq) {
        detail::validate_sequence_kind(c, j, path);
        for (const auto& proc : c.procedures)
          if (proc == "rajchman") throw ConfigError(child(path, "procedures"), "'rajchman' needs a measure declaration");
      } else {
        c.measure = j.at("measure");
        const MeasureModel mu = build_measure(c.measure, child(path, "measure"));
        quadrature = mu.kind() == MeasureModel::Kind::Density;
        for (const auto& proc : c.procedures)
          if (proc != "rajchman") throw ConfigError(child(path, "procedures"), "'" + proc + "' needs a sequence declaration");
        for (const char* k : {"dims", "operator"})
          if (j.contains(k)) throw ConfigError(child(path, k), "not valid with a measure declaration");
        params["n_max"] = count_or(j, path, "n_max", 2187, 10, 1 << 20);
        params["witness_k"] = count_or(j, path, "witness_k", 8, 0, 30);
        params["cross_check_level"] = count_or(j, path, "cross_check_level", 12, 0, kMaxCantorLevel);
      }
      if (has_seq)
        for (const char* k : {"n_max", "witness_k", "cross_check_level"})
          if (j.contains(k)) throw ConfigError(child(path, k), "only valid with a measure declaration");
      if (j.contains("operator")) {
        c.op = j.at("operator");
        const auto b = build_operator(c.op, child(path, "operator"));
        if (!b) throw ConfigError(child(path, "operator.tag"), "'synthesized' is not valid for analyze");
      }
      for (const auto& proc : c.procedures)
        if ((proc == "parseval" || proc == "normalized_dual") && c.op.is_null())
          throw ConfigError(child(path, "operator"), "required by procedure '" + proc + "'");
      break;
    }
    case Kind::Reconstruct: {
      detail::validate_sequence_kind(c, j, path);
      c.op = require(j, path, "operator");
      const auto b = build_operator(c.op, child(path, "operator"));
      if (!b)
        for (const auto& proc : c.procedures)
          if (needs_fixed_operator(proc))
            throw ConfigError(child(path, "operator.tag"), "procedure '" + proc + "' needs an explicit operator");
      break;
    }
    case Kind::Perturb: {
      detail::validate_sequence_kind(c, j, path);
      c.op = require(j, path, "operator");
      if (!build_operator(c.op, child(path, "operator")))
        throw ConfigError(child(path, "operator.tag"), "the base operator must be explicit");
      c.deltas = require(j, path, "deltas");
      build_deltas(c.deltas, child(path, "deltas"));
      params["witness"] = j.contains("witness") ? choice(j.at("witness"), child(path, "witness"),
                                                         {"harmonic", "last_coordinate"}, "witness")
                                                : "harmonic";
      params["caps"] = j.contains("caps") ? number_list(j.at("caps"), child(path, "caps")) : std::vector<double>{};
      break;
    }
    case Kind::Kaczmarz: {
      c.measure = require(j, path, "measure");
      const MeasureModel mu = build_measure(c.measure, child(path, "measure"));
      if (std::abs(mu.total_mass() - 1.0) > 1e-12)
        throw ConfigError(child(path, "measure"), "must be a probability measure (total mass " +
                                                      format_17g(mu.total_mass()) + ")");
      params["steps"] = count_or(j, path, "steps", 2000, 1, 100000);
      params["sweep"] = j.contains("sweep") ? choice(j.at("sweep"), child(path, "sweep"), {"natural", "symmetric"}, "sweep")
                                            : "natural";
      params["convergence_fraction"] = number_or(j, path, "convergence_fraction", 0.1);
      if (!(params["convergence_fraction"].get<double>() > 0.0))
        throw ConfigError(child(path, "convergence_fraction"), "must be positive");
      params["dual_path_steps"] = count_or(j, path, "dual_path_steps", 500, 1, 2000);
      Json target = j.contains("target") ? j.at("target") : Json{{"class", "smooth"}};
      const std::string tp = child(path, "target");
      require_object(target, tp);
      allow_keys(target, tp, {"class", "degree", "decay"});
      const std::string cls = choice(require(target, tp, "class"), child(tp, "class"), {"smooth", "random"}, "target class");
      Json t{{"class", cls}};
      if (cls == "smooth") {
        t["degree"] = count_or(target, tp, "degree", 64, 1, 4096);
        t["decay"] = number_or(target, tp, "decay", 2.0);
      } else if (target.contains("degree") || target.contains("decay")) {
        throw ConfigError(tp, "'degree' and 'decay' apply to the smooth class only");
      }
      params["target"] = t;
      break;
    }
    case Kind::WeightedFourier: {
      c.weight = require(j, path, "weight");
      build_weight(c.weight, child(path, "weight"));
      c.dims = dims_list(j, path);
      params["grid"] = count_or(j, path, "grid", kDefaultGrid, 2, kMaxGrid);
      if (params["grid"].get<std::size_t>() % 2) throw ConfigError(child(path, "grid"), "must be even");
      if (2 * c.dims.back() + 1 > params["grid"].get<std::size_t>())
        throw ConfigError(child(path, "dims"), "largest window exceeds the grid resolution");
      params["a2_depth"] = count_or(j, path, "a2_depth", 12, 4, 24);
      break;
    }
    case Kind::Suite: {
      if (nested) throw ConfigError(child(path, "kind"), "suites cannot be nested");
      const Json& e = require(j, path, "experiments");
      const std::string ep = child(path, "experiments");
      if (!e.is_array() || e.empty()) throw ConfigError(ep, "expected a nonempty array of experiments");
      std::set<std::string> names;
      for (std::size_t i = 0; i < e.size(); ++i) {
        c.experiments.push_back(parse_config(e[i], element(ep, i), true));
        ExperimentConfig& x = c.experiments.back();
        if (!e[i].contains("seed")) x.seed = c.seed;
        if (!e[i].contains("tolerance") && j.contains("tolerance")) {
          x.tolerance = number(j.at("tolerance"), child(path, "tolerance"));
          x.tolerance_source = "config";
        }
        if (!names.insert(c.experiments.back().name).second)
          throw ConfigError(element(ep, i) + ".name", "duplicate experiment name '" + c.experiments.back().name + "'");
      }
      break;
    }
  }
  c.params = std::move(params);

  if (j.contains("tolerance")) {
    c.tolerance = number(j.at("tolerance"), child(path, "tolerance"));
    if (c.tolerance < 0.0) throw ConfigError(child(path, "tolerance"), "must be nonnegative");
    c.tolerance_source = "config";
  } else {
    c.tolerance = quadrature ? kQuadratureDefault : kExactDefault;
    c.tolerance_source = quadrature ? "default-quadrature" : "default-exact";
  }
  return c;
}

inline void override_seed(ExperimentConfig& c, std::uint64_t seed) {
  c.seed = seed;
  for (auto& x : c.experiments) override_seed(x, seed);
}

/// Parses a document, mapping JSON syntax errors to ConfigError.
inline ExperimentConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<document>", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace frlab::cli
