#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "phs/serialization.hpp"
#include "phs/workbench.hpp"

namespace {

struct SharedFlags {
  std::string config_path;
  std::string model_name;
  std::string out_dir;
  std::string scheme;
  int grid_n = 0;
  unsigned seed = 0;
  bool have_seed = false;
};

void add_shared(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--config", flags.config_path, "run configuration (JSON)");
  cmd->add_option("--model", flags.model_name,
                  "model name when no config is given (see `phs models`)");
  cmd->add_option("--out-dir", flags.out_dir, "output directory");
  cmd->add_option("--grid-n", flags.grid_n, "grid cells for discretization");
  cmd->add_option("--scheme", flags.scheme, "central_staggered or upwind");
  cmd->add_option("--seed", flags.seed, "seed for randomized checks")
      ->each([&flags](const std::string&) { flags.have_seed = true; });
}

int run_stage(const SharedFlags& flags, const std::string& stage) {
  nlohmann::json j;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << flags.config_path << "\n";
      return 2;
    }
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  } else if (!flags.model_name.empty()) {
    j["model"] = {{"name", flags.model_name}};
  } else {
    std::cerr << "error: pass --config or --model\n";
    return 2;
  }
  j["pipeline"] = {stage};
  if (!flags.out_dir.empty()) j["out_dir"] = flags.out_dir;
  if (flags.grid_n > 0) j["grid_n"] = flags.grid_n;
  if (!flags.scheme.empty()) j["scheme"] = flags.scheme;
  if (flags.have_seed) j["seed"] = flags.seed;

  try {
    const phs::workbench::RunConfig config = phs::workbench::parse_config(j);
    const phs::workbench::RunManifest manifest = phs::workbench::run(config);
    for (const auto& s : manifest.stages) {
      std::cout << s.name << ": " << (s.ok ? (s.verdict ? "pass" : "fail") : "error")
                << (s.error.empty() ? "" : "  (" + s.error + ")") << "\n";
    }
    std::cout << "artifacts in " << config.out_dir << " (digest "
              << manifest.config_digest << ")\n";
    return manifest.all_verdicts_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"port-Hamiltonian observability workbench"};
  app.require_subcommand(1);

  SharedFlags flags;
  const char* stages[] = {"simulate", "observability", "hautus",
                          "fundamental", "theorem2"};
  const char* descriptions[] = {
      "time integration with energy accounting",
      "Gramian / Lyapunov certificate",
      "Hautus-test scan over a left half-plane region",
      "fundamental solution samples and growth bounds",
      "full approximate-observability certificate pipeline"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* cmd = app.add_subcommand(stages[i], descriptions[i]);
    add_shared(cmd, flags);
  }
  CLI::App* models_cmd = app.add_subcommand("models", "list the model zoo");

  CLI11_PARSE(app, argc, argv);

  if (models_cmd->parsed()) {
    for (const auto& name : phs::models::model_names()) {
      std::printf("%-22s %s\n", name.c_str(), phs::models::describe(name).c_str());
    }
    return 0;
  }
  for (int i = 0; i < 5; ++i) {
    if (app.get_subcommand(stages[i])->parsed()) {
      const std::string stage =
          std::string(stages[i]) == "hautus" ? "hautus-scan" : stages[i];
      return run_stage(flags, stage);
    }
  }
  return 2;
}
