#pragma once

// Executes validated experiment configs and writes report documents.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "frlab/cli/config.hpp"
#include "frlab/frame_analysis.hpp"
#include "frlab/measures.hpp"
#include "frlab/perturbation.hpp"
#include "frlab/reconstruction.hpp"
#include "frlab/weighted.hpp"

namespace frlab::cli {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kOutputDirVariable = "FRLAB_OUTPUT_DIR";

struct ProcedureResult {
  std::string procedure;
  PropertyReport report;
};

struct Section {
  const ExperimentConfig* config = nullptr;
  std::vector<ProcedureResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.report.all_pass()) return false;
    return true;
  }
};

namespace detail {

/// Library routines reject a zero tolerance; the recorded checks keep the
/// configured value.
inline double effective_tolerance(double tol) { return std::max(tol, std::numeric_limits<double>::denorm_min()); }

/// Adds the declared-outcome check. Returns true when the procedure's own
/// success check should also be asserted (no expectation, or the
/// expectation is the success verdict).
inline bool expectation(PropertyReport& rep, const ExperimentConfig& c, const std::string& procedure,
                        const std::string& success_verdict) {
  const auto e = c.expected_verdict(procedure);
  if (!e) return true;
  rep.checks.push_back(Check::holds("expected_verdict", "declared outcome of the experiment", rep.verdict == *e,
                                    c.seed, "expected '" + *e + "', got '" + rep.verdict + "'"));
  return *e == success_verdict;
}

inline PropertyReport fr_report(const FRVerdict& v, const ExperimentConfig& c, const std::string& procedure) {
  PropertyReport rep;
  rep.name = "frame_reconstruction_scan";
  rep.anchor = "sum_n <f, B f_n> f_n = f at every scanned level";
  rep.verdict = to_string(v.verdict);
  rep.observations.push_back(Observation::make("max_residual", v.max_residual, Comparison::AtMost, c.tolerance));
  rep.observations.push_back(Observation::make("B_norm_growth_exponent", v.norm_growth_exponent, Comparison::AtMost,
                                               kDivergingExponent, "candidate norm bounded across dims"));
  Observation stable = Observation::make("stable_across_dims", v.stable_across_dims ? 1.0 : 0.0,
                                         Comparison::AtLeast, 0.5, "leading blocks agree between levels");
  rep.observations.push_back(stable);
  const bool assert_success = expectation(rep, c, procedure, "reconstructs");
  if (assert_success)
    rep.checks.insert(rep.checks.begin(), Check::at_most("reconstruction_residual", rep.anchor, v.max_residual,
                                                         c.tolerance, c.seed, "worst over vectors and levels"));
  rep.tables.push_back(v.table);
  return rep;
}

struct Resolved {
  SequencePtr seq;
  std::optional<ReconstructionOperator> op;  // empty when synthesized
  OperatorFactory factory;

  ReconstructionOperator at(std::size_t level) const { return op ? *op : construct_B(*seq, level); }
};

inline Resolved resolve(const ExperimentConfig& c) {
  Resolved r;
  r.seq = build_sequence(c.sequence, "sequence");
  if (!c.op.is_null()) {
    r.op = build_operator(c.op, "operator");
    r.factory = r.op ? fixed_operator(*r.op) : synthesized_operator();
  }
  return r;
}

inline PropertyReport bounds_report(const VectorSequence& seq, const ExperimentConfig& c) {
  const FrameBoundsScan s = bounds_scan(seq, c.dims, true);
  const auto x = as_doubles(s.dims);
  const double lower_exp = growth_exponent(x, s.lower);
  PropertyReport rep;
  rep.name = "frame_bounds_scan";
  rep.anchor = "optimal frame bounds of the truncations";
  rep.observations.push_back(Observation::make("upper_growth_exponent", s.growth_exponent, Comparison::AtMost,
                                               kBoundedExponent, "upper bound bounded across dims"));
  rep.observations.push_back(Observation::make("lower_growth_exponent", lower_exp, Comparison::AtLeast,
                                               -kBoundedExponent, "lower bound bounded away from 0"));
  rep.observations.push_back(Observation::make("lower_infimum", s.lower_infimum, Comparison::AtLeast, 0.0));
  rep.observations.push_back(Observation::make("upper_at_largest_dim", s.upper.back(), Comparison::AtMost,
                                               std::numeric_limits<double>::infinity()));
  double worst = 0.0;
  for (std::size_t i = 0; i < s.dims.size(); ++i) worst = std::max(worst, s.lower[i] - s.upper[i]);
  rep.checks.push_back(Check::at_most("lower_not_above_upper", "A_N <= B_N", worst, 0.0, c.seed));
  if (s.dims.size() < 2)
    rep.verdict = "single-level";
  else if (s.growth_exponent > kBoundedExponent)
    rep.verdict = "upper-bound-diverges";
  else if (lower_exp < -kBoundedExponent)
    rep.verdict = "lower-bound-decays";
  else
    rep.verdict = "bounded-frame-bounds";
  expectation(rep, c, "bounds", rep.verdict);
  rep.tables.push_back(s.table());
  return rep;
}

inline PropertyReport parseval_report(const Resolved& r, const ExperimentConfig& c) {
  PropertyReport rep;
  rep.name = "sqrt_mapped_parseval";
  rep.anchor = "{B^(1/2) f_n} is a Parseval frame";
  ScanTable t{"parseval_scan", {"level", "dim", "residual"}, {}};
  double worst = 0.0;
  for (std::size_t level : c.dims) {
    const TruncationFrame tf = truncate(*r.seq, level);
    const double res = is_parseval(sqrt_mapped(tf, *r.op), 1.0).residual;
    worst = std::max(worst, res);
    t.rows.push_back({static_cast<double>(level), static_cast<double>(tf.dim()), res});
  }
  rep.verdict = worst <= c.tolerance ? "parseval" : "not-parseval";
  if (expectation(rep, c, "parseval", "parseval"))
    rep.checks.insert(rep.checks.begin(),
                      Check::at_most("parseval_residual", rep.anchor, worst, c.tolerance, c.seed, "max ||S - I||"));
  rep.tables.push_back(std::move(t));
  return rep;
}

inline PropertyReport rajchman_report(const ExperimentConfig& c) {
  const MeasureModel mu = build_measure(c.measure, "measure");
  const RajchmanScan s = rajchman_scan(mu, c.params["n_max"].get<std::size_t>(), c.params["witness_k"].get<std::size_t>());
  PropertyReport rep;
  rep.name = "rajchman_scan";
  rep.anchor = "Fourier coefficients of the measure tend to zero";
  rep.verdict = s.verdict;
  ScanTable profile{"decay_profile", {"index", "value"}, {}};
  for (std::size_t n = 0; n < s.profile.size(); ++n) profile.rows.push_back({static_cast<double>(n + 1), s.profile[n]});
  if (mu.kind() == MeasureModel::Kind::Cantor) {
    const double base = std::abs(cantor_coefficient(1));
    double drift = 0.0;
    for (const auto& row : s.witness.rows) drift = std::max(drift, std::abs(row[2] - base));
    rep.checks.push_back(Check::at_most("triadic_witness_constant", "|mu^(3^k)| = |mu^(1)|", drift, c.tolerance,
                                        c.seed, "max over k of ||mu^(3^k)| - |mu^(1)||"));
    const std::size_t level = c.params["cross_check_level"].get<std::size_t>();
    if (level > 0) {
      const DiscreteMeasure atoms = cantor_atoms(level);
      const MeasureModel am = MeasureModel::atomic(atoms.points, atoms.weights);
      double worst = 0.0;
      for (std::int64_t n = -100; n <= 100; ++n)
        worst = std::max(worst, std::abs(cantor_coefficient(n) - fourier_coefficient(am, n)));
      rep.checks.push_back(Check::at_most("atomic_cross_check", "infinite product agrees with atomic quadrature",
                                          worst, kQuadratureDefault, c.seed,
                                          "level " + std::to_string(level) + " atoms, |n| <= 100"));
    }
  }
  expectation(rep, c, "rajchman", rep.verdict);
  rep.tables.push_back(std::move(profile));
  rep.tables.push_back(s.windows);
  rep.tables.push_back(s.witness);
  return rep;
}

inline std::vector<ProcedureResult> run_analyze(const ExperimentConfig& c) {
  std::vector<ProcedureResult> out;
  if (c.sequence.is_null()) {
    out.push_back({"rajchman", rajchman_report(c)});
    return out;
  }
  const Resolved r = resolve(c);
  const double tol = effective_tolerance(c.tolerance);
  for (const auto& p : c.procedures) {
    PropertyReport rep;
    if (p == "bounds") {
      rep = bounds_report(*r.seq, c);
    } else if (p == "gohberg") {
      rep = gohberg_checks(*r.seq, c.dims, r.op ? &*r.op : nullptr, c.seed);
      expectation(rep, c, p, rep.verdict);
    } else if (p == "classifier") {
      rep = schauder_fr_classifier(*r.seq, c.dims, c.trials, c.seed, tol);
      expectation(rep, c, p, rep.verdict);
    } else if (p == "parseval") {
      rep = parseval_report(r, c);
    } else {
      rep = normalized_dual_check(*r.seq, *r.op, c.dims, c.trials, c.seed, tol);
      expectation(rep, c, p, rep.verdict);
    }
    out.push_back({p, std::move(rep)});
  }
  return out;
}

inline std::vector<ProcedureResult> run_reconstruct(const ExperimentConfig& c) {
  const Resolved r = resolve(c);
  const double tol = effective_tolerance(c.tolerance);
  const std::size_t top = c.dims.back();
  std::vector<ProcedureResult> out;
  for (const auto& p : c.procedures) {
    PropertyReport rep;
    if (p == "fr_scan") {
      rep = fr_report(fr_scan(*r.seq, r.factory, c.dims, c.trials, c.seed, tol), c, p);
    } else if (p == "battery") {
      rep = reconstruction_battery(*r.seq, r.at(top), top, c.trials, c.seed, tol);
      expectation(rep, c, p, rep.verdict);
    } else if (p == "certify") {
      rep = frame_certificate(*r.seq, r.factory, c.dims, c.trials, c.seed, tol);
      expectation(rep, c, p, rep.verdict);
    } else if (p == "uniqueness") {
      const double u = uniqueness_residual(*r.seq, *r.op, construct_B(*r.seq, top), top, tol, c.seed);
      rep.name = "operator_uniqueness";
      rep.anchor = "a reconstructing operator is unique";
      rep.checks.push_back(Check::at_most("declared_matches_synthesized", rep.anchor, u, c.tolerance, c.seed,
                                          "||B - V|| at the largest level"));
      rep.verdict = u <= c.tolerance ? "unique" : "distinct";
      expectation(rep, c, p, rep.verdict);
    } else {
      rep.name = "operator_synthesis";
      rep.anchor = "B synthesized from the frame operator matches the declared operator";
      ScanTable t{"synthesis_scan", {"level", "dim", "max_entry_diff"}, {}};
      double worst = 0.0;
      for (std::size_t level : c.dims) {
        const std::size_t dim = r.seq->dim_at(level);
        const double d = max_abs_diff(construct_B(*r.seq, level).matrix(dim), r.op->matrix(dim));
        worst = std::max(worst, d);
        t.rows.push_back({static_cast<double>(level), static_cast<double>(dim), d});
      }
      rep.verdict = worst <= c.tolerance ? "matches" : "differs";
      if (expectation(rep, c, p, "matches"))
        rep.checks.insert(rep.checks.begin(), Check::at_most("entrywise_difference", rep.anchor, worst, c.tolerance,
                                                             c.seed, "max entry difference over the scan"));
      rep.tables.push_back(std::move(t));
    }
    out.push_back({p, std::move(rep)});
  }
  return out;
}

inline std::vector<ProcedureResult> run_perturb(const ExperimentConfig& c) {
  const Resolved r = resolve(c);
  auto [d, t] = build_deltas(c.deltas, "deltas");
  const SequencePtr h = perturb(r.seq, std::move(d), std::move(t), "perturbed " + r.seq->name());
  const double tol = effective_tolerance(c.tolerance);
  std::vector<ProcedureResult> out;
  for (const auto& p : c.procedures) {
    PropertyReport rep;
    if (p == "budget") {
      const PerturbationBudget b = perturbation_budget(*r.seq, *r.op, *h, c.dims.back());
      rep.name = "stability_budget";
      rep.anchor = "perturbations with sum ||delta_n|| below the budget keep FR";
      const double lam = b.budget;
      const double identity = std::abs(lam * (2.0 * b.M + lam) * b.B_norm - 1.0);
      rep.checks.push_back(Check::at_most("budget_identity", "lambda (2M + lambda) ||B|| = 1", identity, c.tolerance,
                                          c.seed));
      rep.observations.push_back(Observation::make("M", b.M, Comparison::AtMost, std::numeric_limits<double>::infinity(),
                                                   "sup ||f_n||"));
      rep.observations.push_back(Observation::make("B_norm", b.B_norm, Comparison::AtMost,
                                                   std::numeric_limits<double>::infinity()));
      rep.observations.push_back(Observation::make("spent", b.spent, Comparison::AtMost, b.budget,
                                                   "l1 mass of the deltas including the declared tail"));
      rep.verdict = b.admissible() ? "admissible" : "inadmissible";
      if (expectation(rep, c, p, "admissible"))
        rep.checks.push_back(Check::holds("spent_within_budget", rep.anchor, b.admissible(), c.seed,
                                          "spent " + format_17g(b.spent) + ", budget " + format_17g(b.budget)));
      const double ms[] = {0.5, 1.0, 2.0, 4.0};
      const double bs[] = {0.5, 1.0, 2.0};
      rep.tables.push_back(budget_table(ms, bs));
    } else if (p == "fr_scan") {
      rep = fr_report(fr_scan(*h, perturbed_operator_factory(r.seq, *r.op), c.dims, c.trials, c.seed, tol), c, p);
    } else {
      const WitnessRule w =
          c.params["witness"].get<std::string>() == "harmonic" ? harmonic_witness() : last_coordinate_witness();
      const auto caps = c.params["caps"].get<std::vector<double>>();
      rep = non_frame_persistence(*r.seq, *h, w, c.dims, caps);
      expectation(rep, c, p, rep.verdict);
    }
    out.push_back({p, std::move(rep)});
  }
  return out;
}

inline std::vector<ProcedureResult> run_kaczmarz(const ExperimentConfig& c) {
  const MeasureModel mu = build_measure(c.measure, "measure");
  const auto& d = mu.discrete();
  const std::size_t steps = c.params["steps"].get<std::size_t>();
  const bool natural = c.params["sweep"].get<std::string>() == "natural";
  const auto sweep = natural ? natural_sweep(steps) : symmetric_sweep(steps);
  const Json& target = c.params["target"];
  std::vector<ComplexVector> targets;
  Rng rng = make_rng(c.seed);
  for (std::size_t t = 0; t < c.trials; ++t) {
    if (target["class"].get<std::string>() == "smooth")
      targets.push_back(smooth_random_target(d, c.seed + t, target["degree"].get<std::size_t>(),
                                             target["decay"].get<double>()));
    else
      targets.push_back(random_unit_vector(d.size(), rng));
  }

  const bool want_dual = std::find(c.procedures.begin(), c.procedures.end(), "dual_path") != c.procedures.end();
  const std::size_t dual_steps = std::min(c.params["dual_path_steps"].get<std::size_t>(), steps);
  const std::vector<std::int64_t> dual_sweep(sweep.begin(), sweep.begin() + static_cast<std::ptrdiff_t>(dual_steps));
  std::vector<ComplexVector> g;
  if (want_dual) g = kaczmarz_auxiliary(mu, dual_sweep);

  ScanTable summary{"kaczmarz_targets", {"target", "norm", "final_residual", "worst_increase", "dual_path_residual"}, {}};
  ScanTable history;
  double worst_increase = 0.0, worst_fraction = 0.0, worst_dual = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const KaczmarzRun run = kaczmarz_run(mu, targets[t], sweep);
    if (t == 0) history = run.table();
    const double inc = run.worst_increase() / run.target_norm;
    const double frac = run.residuals.back() / run.target_norm;
    double dual = std::numeric_limits<double>::quiet_NaN();
    if (want_dual) {
      const ComplexVector x = kaczmarz_run(mu, targets[t], dual_sweep).iterate;
      dual = (x - auxiliary_expansion(mu, g, dual_sweep, targets[t])).norm();
      worst_dual = std::max(worst_dual, dual);
    }
    worst_increase = std::max(worst_increase, inc);
    worst_fraction = std::max(worst_fraction, frac);
    summary.rows.push_back({static_cast<double>(t), run.target_norm, run.residuals.back(), run.worst_increase(), dual});
  }

  std::vector<ProcedureResult> out;
  for (const auto& p : c.procedures) {
    PropertyReport rep;
    if (p == "monotone") {
      rep.name = "kaczmarz_monotonicity";
      rep.anchor = "||f - x_n|| never increases";
      rep.checks.push_back(Check::at_most("monotone_every_step", rep.anchor, worst_increase, kMonotoneSlack, c.seed,
                                          "largest single-step increase relative to ||f||"));
      rep.tables.push_back(history);
    } else if (p == "convergence") {
      const double fraction = c.params["convergence_fraction"].get<double>();
      rep.name = "kaczmarz_convergence";
      rep.anchor = "x_n -> f in L2(mu)";
      rep.checks.push_back(Check::at_most("final_residual_fraction", rep.anchor, worst_fraction, fraction, c.seed,
                                          "worst ||f - x_N|| / ||f|| after " + std::to_string(steps) + " steps"));
      rep.tables.push_back(summary);
    } else {
      rep.name = "kaczmarz_dual_path";
      rep.anchor = "x_N = sum_{n<N} <f, g_n> phi_n";
      rep.checks.push_back(Check::at_most("iterate_matches_expansion", rep.anchor, worst_dual, c.tolerance, c.seed,
                                          std::to_string(dual_steps) + " steps"));
    }
    rep.verdict = rep.all_pass() ? "holds" : "violated";
    expectation(rep, c, p, "holds");
    out.push_back({p, std::move(rep)});
  }
  return out;
}

inline std::vector<ProcedureResult> run_weighted(const ExperimentConfig& c) {
  const WeightModel w = build_weight(c.weight, "weight");
  const std::size_t q = c.params["grid"].get<std::size_t>();
  const std::size_t depth = c.params["a2_depth"].get<std::size_t>();
  std::vector<ProcedureResult> out;
  for (const auto& p : c.procedures) {
    PropertyReport rep;
    if (p == "exponentials") {
      rep = exponential_fr_check(w, c.dims, c.trials, c.seed, q, effective_tolerance(c.tolerance), depth);
    } else {
      const A2Result a2 = a2_constant(w, depth, q);
      rep.name = "a2_constant";
      rep.anchor = "sup over intervals of avg(w) avg(1/w) is finite";
      rep.observations.push_back(Observation::make("a2_constant", a2.constant, Comparison::AtMost,
                                                   std::numeric_limits<double>::infinity()));
      rep.observations.push_back(Observation::make("depth_slope", a2.slope, Comparison::AtMost, kA2DivergenceSlope));
      rep.verdict = a2.divergent ? "not-A2" : "A2";
      rep.tables.push_back(a2.table());
    }
    expectation(rep, c, p, rep.verdict);
    out.push_back({p, std::move(rep)});
  }
  return out;
}

}  // namespace detail

inline std::vector<ProcedureResult> run_experiment(const ExperimentConfig& c) {
  switch (c.kind) {
    case Kind::Analyze: return detail::run_analyze(c);
    case Kind::Reconstruct: return detail::run_reconstruct(c);
    case Kind::Perturb: return detail::run_perturb(c);
    case Kind::Kaczmarz: return detail::run_kaczmarz(c);
    case Kind::WeightedFourier: return detail::run_weighted(c);
    default: throw ContractError("run_experiment: suites are expanded by run_sections");
  }
}

/// One section per experiment, in declaration order; suite members run
/// concurrently.
inline std::vector<Section> run_sections(const ExperimentConfig& c) {
  if (c.kind != Kind::Suite) return {Section{&c, run_experiment(c)}};
  std::vector<std::future<std::vector<ProcedureResult>>> futures;
  for (const auto& x : c.experiments) futures.push_back(std::async(std::launch::async, [&x] { return run_experiment(x); }));
  std::vector<Section> sections;
  for (std::size_t i = 0; i < futures.size(); ++i) sections.push_back({&c.experiments[i], futures[i].get()});
  return sections;
}

struct CsvArtifact {
  std::string file;
  const ScanTable* table = nullptr;
};

inline std::string csv_file_name(const std::string& section, const std::string& procedure, const std::string& table) {
  return section + "." + procedure + "." + table + ".csv";
}

/// The report document without wall time, plus the CSV artifacts it names.
inline Json build_report(const ExperimentConfig& c, const std::vector<Section>& sections,
                         std::vector<CsvArtifact>* csv = nullptr) {
  Json doc;
  doc["artifact"] = "frlab";
  doc["artifact_version"] = kArtifactVersion;
  doc["name"] = c.name;
  doc["kind"] = to_string(c.kind);
  doc["seed"] = c.seed;
  doc["config"] = c.echo;
  bool all = true;
  Json secs = Json::array();
  Json files = Json::array();
  for (const auto& s : sections) {
    const ExperimentConfig& x = *s.config;
    Json js;
    js["experiment"] = x.name;
    js["kind"] = to_string(x.kind);
    js["seed"] = x.seed;
    js["trials"] = x.trials;
    js["tolerance"] = x.tolerance;
    js["tolerance_source"] = x.tolerance_source;
    js["procedures"] = x.procedures;
    if (!x.dims.empty()) js["dims"] = x.dims;
    if (!x.params.empty()) js["parameters"] = x.params;
    js["all_pass"] = s.all_pass();
    all = all && s.all_pass();
    Json reports = Json::array();
    for (const auto& r : s.results) {
      Json jr;
      jr["procedure"] = r.procedure;
      const Json body = to_json(r.report);
      for (const auto& [k, v] : body.items()) jr[k] = v;
      reports.push_back(std::move(jr));
      for (const auto& t : r.report.tables) {
        const std::string section = c.kind == Kind::Suite ? c.name + "." + x.name : x.name;
        const std::string file = csv_file_name(section, r.procedure, t.name);
        files.push_back({{"file", file}, {"experiment", x.name}, {"procedure", r.procedure}, {"table", t.name},
                         {"columns", t.columns}, {"rows", t.rows.size()}});
        if (csv) csv->push_back({file, &t});
      }
    }
    js["reports"] = std::move(reports);
    secs.push_back(std::move(js));
  }
  doc["all_pass"] = all;
  doc["sections"] = std::move(secs);
  doc["csv_files"] = std::move(files);
  return doc;
}

/// Serialized form used for determinism comparisons: the document with the
/// wall-time field removed.
inline std::string canonical_dump(Json doc) {
  doc.erase("wall_time_seconds");
  return doc.dump(2);
}

struct RunOutcome {
  int exit_code = 0;
  Json report;
  std::filesystem::path report_path;
  std::vector<std::filesystem::path> csv_paths;
};

/// Directory precedence: explicit argument, then the environment variable,
/// then the config, then ./frlab-out.
inline std::filesystem::path output_directory(const ExperimentConfig& c, const std::string& explicit_dir = {}) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv(kOutputDirVariable); env && *env) return env;
  if (!c.output_dir.empty()) return c.output_dir;
  return "frlab-out";
}

inline RunOutcome run(const ExperimentConfig& c, const std::string& explicit_dir = {}) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Section> sections = run_sections(c);
  std::vector<CsvArtifact> csv;
  RunOutcome out;
  out.report = build_report(c, sections, &csv);
  out.report["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.exit_code = out.report["all_pass"].get<bool>() ? 0 : 1;

  const std::filesystem::path dir = output_directory(c, explicit_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& a : csv) {
    const auto path = dir / a.file;
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    write_csv(f, *a.table);
    out.csv_paths.push_back(path);
  }
  out.report_path = dir / (c.report_file.empty() ? c.name + ".report.json" : c.report_file);
  std::ofstream f(out.report_path);
  if (!f) throw Error("cannot write '" + out.report_path.string() + "'");
  f << out.report.dump(2) << '\n';
  return out;
}

}  // namespace frlab::cli
