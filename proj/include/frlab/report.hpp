#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace frlab {

enum class Comparison { AtMost, AtLeast };

inline bool compare(double value, Comparison cmp, double threshold) {
  if (std::isnan(value) || std::isnan(threshold)) return false;
  return cmp == Comparison::AtMost ? value <= threshold : value >= threshold;
}

inline const char* to_string(Comparison c) { return c == Comparison::AtMost ? "<=" : ">="; }

/// An assertion the theory makes at finite scale. `pass` is always
/// recomputable as compare(residual, comparison, threshold).
struct Check {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AtMost;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string note;

  static Check at_most(std::string name, std::string anchor, double residual, double threshold,
                       std::uint64_t seed = 0, std::string note = {}) {
    return {std::move(name), std::move(anchor), residual, threshold, Comparison::AtMost,
            compare(residual, Comparison::AtMost, threshold), seed, std::move(note)};
  }
  static Check at_least(std::string name, std::string anchor, double residual, double threshold,
                        std::uint64_t seed = 0, std::string note = {}) {
    return {std::move(name), std::move(anchor), residual, threshold, Comparison::AtLeast,
            compare(residual, Comparison::AtLeast, threshold), seed, std::move(note)};
  }
  /// A yes/no assertion encoded as residual 0 (true) or 1 (false) against 0.5.
  static Check holds(std::string name, std::string anchor, bool ok, std::uint64_t seed = 0,
                     std::string note = {}) {
    return at_most(std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.5, seed, std::move(note));
  }
};

/// A finite-scale proxy whose outcome is evidence, not an assertion: e.g.
/// "upper frame bound stays bounded" is expected to fail for non-Bessel
/// sequences.
struct Observation {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AtMost;
  bool holds = false;
  std::string note;

  static Observation make(std::string name, double value, Comparison cmp, double threshold,
                          std::string note = {}) {
    return {std::move(name), value, threshold, cmp, compare(value, cmp, threshold), std::move(note)};
  }
};

struct ScanTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct PropertyReport {
  std::string name;
  std::string anchor;
  std::string verdict;
  std::vector<Check> checks;
  std::vector<Observation> observations;
  std::vector<ScanTable> tables;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const Check* find_check(const std::string& n) const {
    for (const auto& c : checks)
      if (c.name == n) return &c;
    return nullptr;
  }
  const Observation* find_observation(const std::string& n) const {
    for (const auto& o : observations)
      if (o.name == n) return &o;
    return nullptr;
  }
  const ScanTable* find_table(const std::string& n) const {
    for (const auto& t : tables)
      if (t.name == n) return &t;
    return nullptr;
  }

  void absorb(const PropertyReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    observations.insert(observations.end(), other.observations.begin(), other.observations.end());
    tables.insert(tables.end(), other.tables.begin(), other.tables.end());
  }
};

using Json = nlohmann::ordered_json;

/// JSON has no infinities; they are written as strings so that every pass
/// flag stays recomputable from the document.
inline Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline double number_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return NAN;
  }
  return j.get<double>();
}

inline Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["residual"] = json_number(c.residual);
  j["comparison"] = to_string(c.comparison);
  j["threshold"] = json_number(c.threshold);
  j["pass"] = c.pass;
  j["seed"] = c.seed;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Json to_json(const Observation& o) {
  Json j;
  j["name"] = o.name;
  j["value"] = json_number(o.value);
  j["comparison"] = to_string(o.comparison);
  j["threshold"] = json_number(o.threshold);
  j["holds"] = o.holds;
  if (!o.note.empty()) j["note"] = o.note;
  return j;
}

inline Json to_json(const ScanTable& t) {
  Json j;
  j["name"] = t.name;
  j["columns"] = t.columns;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = Json::array();
    for (double v : r) row.push_back(json_number(v));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline Json to_json(const PropertyReport& r) {
  Json j;
  j["name"] = r.name;
  j["anchor"] = r.anchor;
  j["verdict"] = r.verdict;
  j["all_pass"] = r.all_pass();
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  Json obs = Json::array();
  for (const auto& o : r.observations) obs.push_back(to_json(o));
  j["observations"] = std::move(obs);
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back(to_json(t));
  j["tables"] = std::move(tables);
  return j;
}

/// Decimal rendering with 17 significant digits (round-trips a double).
inline std::string format_17g(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& out, const ScanTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_17g(r[i]);
    out << '\n';
  }
}

}  // namespace frlab
