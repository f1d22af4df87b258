#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "frlab/cli/catalog.hpp"
#include "frlab/cli/runner.hpp"

namespace {

using namespace frlab;
using namespace frlab::cli;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

ExperimentConfig load(const std::string& target) {
  if (const CatalogEntry* e = find_entry(target)) return catalog_config(*e);
  std::ifstream in(target);
  if (!in) {
    std::string names;
    for (const auto& e : catalog()) names += "\n  " + std::string(e.name);
    throw ConfigError("<document>", "'" + target + "' is neither a readable file nor a bundled config; bundled:" + names);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void summarize(const Json& report, std::ostream& out) {
  for (const auto& section : report["sections"]) {
    for (const auto& r : section["reports"]) {
      const bool pass = r["all_pass"].get<bool>();
      out << (pass ? "PASS  " : "FAIL  ") << section["experiment"].get<std::string>() << "/"
          << r["procedure"].get<std::string>() << "  verdict: " << r["verdict"].get<std::string>() << '\n';
      if (!pass)
        for (const auto& c : r["checks"])
          if (!c["pass"].get<bool>())
            out << "      " << c["name"].get<std::string>() << ": " << c["residual"].dump() << " "
                << c["comparison"].get<std::string>() << " " << c["threshold"].dump() << " does not hold\n";
    }
  }
}

int run_command(const std::string& target, const std::string& output_dir, const std::optional<std::uint64_t>& seed,
                bool quiet) {
  try {
    ExperimentConfig config = load(target);
    if (seed) override_seed(config, *seed);
    const RunOutcome outcome = run(config, output_dir);
    if (!quiet) {
      summarize(outcome.report, std::cout);
      std::cout << "report: " << outcome.report_path.string() << '\n';
    }
    return outcome.exit_code == 0 ? kExitPass : kExitCheckFailure;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "contract error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for frame reconstruction in Hilbert spaces"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a config file or a bundled config by name");
  std::string target, output_dir;
  std::uint64_t seed_value = 0;
  bool quiet = false;
  run_cmd->add_option("config", target, "Path to a JSON config or the name of a bundled config")->required();
  run_cmd->add_option("-o,--output-dir", output_dir,
                      std::string("Output directory (overrides ") + kOutputDirVariable + " and the config)");
  auto* seed_opt = run_cmd->add_option("-s,--seed", seed_value, "Override the seed of every experiment");
  run_cmd->add_flag("-q,--quiet", quiet, "Print nothing on success");

  auto* list_cmd = app.add_subcommand("list", "List the bundled configs");
  bool verbose = false;
  list_cmd->add_flag("-v,--verbose", verbose, "Print each config document");

  app.add_subcommand("version", "Print the artifact version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  if (*run_cmd) {
    std::optional<std::uint64_t> seed;
    if (*seed_opt) seed = seed_value;
    return run_command(target, output_dir, seed, quiet);
  }
  if (*list_cmd) {
    for (const auto& e : catalog()) {
      const ExperimentConfig c = catalog_config(e);
      std::cout << e.name << "  [" << to_string(c.kind) << "]  " << e.anchor << '\n';
      if (verbose) std::cout << e.config << "\n\n";
    }
    return 0;
  }
  std::cout << "frlab " << kArtifactVersion << '\n';
  return 0;
}
