#pragma once

// Bundled experiment configs, runnable by name.

#include <string>
#include <string_view>
#include <vector>

#include "frlab/cli/config.hpp"

namespace frlab::cli {

struct CatalogEntry {
  std::string_view name;
  std::string_view anchor;
  std::string_view config;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"growing-basis.suite", "properties forced on B by reconstruction, and frame certificates",
       R"({
  "name": "growing-basis.suite",
  "kind": "suite",
  "description": "f_n = (n+1) e_n with B = diag 1/(n+1)^2: reconstructs, yet is not a frame",
  "experiments": [
    {"name": "reconstruct", "kind": "reconstruct",
     "sequence": {"tag": "scaled_basis", "power": 1},
     "operator": {"tag": "inverse_square"},
     "dims": [4, 16, 64, 256], "trials": 100,
     "procedures": ["fr_scan", "battery", "certify"],
     "expect": {"certify": "no-frame-certificate"}},
    {"name": "bounds", "kind": "analyze",
     "sequence": {"tag": "scaled_basis", "power": 1},
     "dims": [4, 16, 64, 256],
     "expect": {"bounds": "upper-bound-diverges"}}
  ]
})"},
      {"repeated-basis.suite", "properties forced on B by reconstruction, and normalized dual frames",
       R"({
  "name": "repeated-basis.suite",
  "kind": "suite",
  "description": "e_k repeated k+1 times with B = diag 1/(k+1): B^(1/2) f_n is Parseval, normalized duals fail",
  "experiments": [
    {"name": "reconstruct", "kind": "reconstruct",
     "sequence": {"tag": "repeated_basis"},
     "operator": {"tag": "harmonic_blocks"},
     "dims": [3, 10, 20], "trials": 100,
     "procedures": ["fr_scan", "battery"]},
    {"name": "structure", "kind": "analyze",
     "sequence": {"tag": "repeated_basis"},
     "operator": {"tag": "harmonic_blocks"},
     "dims": [3, 10, 20],
     "procedures": ["bounds", "parseval", "normalized_dual"],
     "expect": {"bounds": "upper-bound-diverges", "normalized_dual": "not-dual-frames"}}
  ]
})"},
      {"frame-certificate.orthonormal", "a reconstructing sequence is a frame under any of four conditions",
       R"({
  "name": "frame-certificate.orthonormal",
  "kind": "reconstruct",
  "sequence": {"tag": "orthonormal_basis"},
  "operator": {"tag": "identity"},
  "dims": [8, 16, 32, 64],
  "procedures": ["fr_scan", "certify"],
  "expect": {"certify": "frame-certificate"}
})"},
      {"synthesized-operator.growing-basis", "B is recovered from the frame operator and is unique",
       R"({
  "name": "synthesized-operator.growing-basis",
  "kind": "reconstruct",
  "sequence": {"tag": "scaled_basis", "power": 1},
  "operator": {"tag": "inverse_square"},
  "dims": [8, 16, 32, 64],
  "procedures": ["construct", "uniqueness"]
})"},
      {"synthesized-operator.shrinking-basis", "a basis with norms tending to zero has no bounded candidate",
       R"({
  "name": "synthesized-operator.shrinking-basis",
  "kind": "reconstruct",
  "sequence": {"tag": "scaled_basis", "power": -1},
  "operator": {"tag": "synthesized"},
  "dims": [8, 16, 32, 64, 128],
  "procedures": ["fr_scan"],
  "expect": {"fr_scan": "diverging-candidate"}
})"},
      {"diagonal-classifier.suite", "an unconditional Schauder basis does FR iff its norms are bounded below",
       R"({
  "name": "diagonal-classifier.suite",
  "kind": "suite",
  "experiments": [
    {"name": "growing", "kind": "analyze", "sequence": {"tag": "scaled_basis", "power": 1},
     "dims": [8, 16, 32, 64, 128], "procedures": ["classifier"], "expect": {"classifier": "reconstructs"}},
    {"name": "orthonormal", "kind": "analyze", "sequence": {"tag": "orthonormal_basis"},
     "dims": [8, 16, 32, 64, 128], "procedures": ["classifier"], "expect": {"classifier": "reconstructs"}},
    {"name": "shrinking", "kind": "analyze", "sequence": {"tag": "scaled_basis", "power": -1},
     "dims": [8, 16, 32, 64, 128], "procedures": ["classifier"], "expect": {"classifier": "diverging-candidate"}}
  ]
})"},
      {"riesz-characterization.orthonormal", "a Riesz basis is a norm-bounded unconditional basis",
       R"({
  "name": "riesz-characterization.orthonormal",
  "kind": "analyze",
  "sequence": {"tag": "orthonormal_basis"},
  "operator": {"tag": "identity"},
  "dims": [8, 16, 32, 64],
  "procedures": ["bounds", "gohberg"],
  "expect": {"bounds": "bounded-frame-bounds", "gohberg": "riesz"}
})"},
      {"stability-budget.repeated-basis", "perturbations within the stability budget keep FR",
       R"({
  "name": "stability-budget.repeated-basis",
  "kind": "perturb",
  "sequence": {"tag": "repeated_basis"},
  "operator": {"tag": "harmonic_blocks"},
  "deltas": {"rule": "geometric", "total": 0.4, "direction": 0},
  "dims": [3, 10, 20],
  "procedures": ["budget", "fr_scan"]
})"},
      {"stability-budget.over-budget", "the stability budget lambda solves lambda (2M + lambda) ||B|| = 1",
       R"({
  "name": "stability-budget.over-budget",
  "kind": "perturb",
  "sequence": {"tag": "repeated_basis"},
  "operator": {"tag": "harmonic_blocks"},
  "deltas": {"rule": "geometric", "total": 0.5, "direction": 0},
  "dims": [3, 10, 20],
  "procedures": ["budget"],
  "expect": {"budget": "inadmissible"}
})"},
      {"non-frame-persistence.repeated-basis", "a perturbation within budget of a non-frame is not a frame",
       R"({
  "name": "non-frame-persistence.repeated-basis",
  "kind": "perturb",
  "sequence": {"tag": "repeated_basis"},
  "operator": {"tag": "harmonic_blocks"},
  "deltas": {"rule": "geometric", "total": 0.4, "direction": 0},
  "dims": [4, 8, 16, 32, 64],
  "procedures": ["persistence"],
  "witness": "harmonic"
})"},
      {"cantor.rajchman", "the Cantor measure is not Rajchman, so its exponentials cannot do FR",
       R"({
  "name": "cantor.rajchman",
  "kind": "analyze",
  "measure": {"kind": "cantor", "level": 8},
  "n_max": 2187,
  "expect": {"rajchman": "not Rajchman"}
})"},
      {"power-density.rajchman", "Fourier coefficients of an absolutely continuous measure decay",
       R"({
  "name": "power-density.rajchman",
  "kind": "analyze",
  "measure": {"kind": "density", "weight": {"rule": "power", "center": 0.5, "exponent": -0.5}, "grid": 4096},
  "n_max": 2047,
  "expect": {"rajchman": "Rajchman-consistent"}
})"},
      {"cantor.kaczmarz", "the Kaczmarz algorithm converges for exponentials in L2 of a singular measure",
       R"({
  "name": "cantor.kaczmarz",
  "kind": "kaczmarz",
  "measure": {"kind": "cantor", "level": 8},
  "steps": 2000,
  "trials": 20,
  "target": {"class": "smooth", "degree": 64, "decay": 2},
  "dual_path_steps": 500
})"},
      {"singular-weight.exponentials", "exponentials with an A2 weight unbounded above do FR but are not Riesz",
       R"({
  "name": "singular-weight.exponentials",
  "kind": "weighted-fourier",
  "weight": {"rule": "power", "center": 0.5, "exponent": -0.5},
  "dims": [4, 8, 16, 32, 64],
  "grid": 4096,
  "procedures": ["exponentials", "a2"],
  "expect": {"exponentials": "Schauder-FR-not-Riesz", "a2": "A2"}
})"},
      {"lebesgue-weight.exponentials", "for a weight bounded above and below the seven conditions all hold",
       R"({
  "name": "lebesgue-weight.exponentials",
  "kind": "weighted-fourier",
  "weight": {"rule": "constant", "value": 1},
  "dims": [4, 8, 16, 32, 64],
  "grid": 1024,
  "expect": {"exponentials": "Riesz"}
})"},
      {"flat-zero-weight.a2", "a weight vanishing to infinite order is not A2",
       R"({
  "name": "flat-zero-weight.a2",
  "kind": "weighted-fourier",
  "weight": {"rule": "flat_zero"},
  "dims": [4],
  "procedures": ["a2"],
  "expect": {"a2": "not-A2"}
})"},
  };
  return entries;
}

inline const CatalogEntry* find_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

inline ExperimentConfig catalog_config(const CatalogEntry& e) { return parse_config_text(std::string(e.config)); }

}  // namespace frlab::cli
