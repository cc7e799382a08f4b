#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phs/models.hpp"

namespace phs::workbench {

/// Parsed and validated run configuration. Unknown pipeline stages and
/// malformed values are rejected at parse time with the offending key path.
struct RunConfig {
  nlohmann::json raw;
  models::ModelSpec model;
  int grid_n = 40;
  Scheme scheme = Scheme::central_staggered;
  unsigned seed = 42;
  std::string out_dir = "phs-out";
  std::vector<std::string> pipeline;
  Tolerances tolerances;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

struct StageStatus {
  std::string name;
  bool ok = false;       // stage ran to completion
  bool verdict = false;  // stage-specific pass flag
  std::string error;
};

/// Record of one reproducible run: the configuration digest, versions,
/// tolerances and every emitted artifact path.
struct RunManifest {
  std::string config_digest;
  std::string version;
  std::vector<std::string> artifacts;
  std::vector<StageStatus> stages;

  bool all_verdicts_pass() const {
    for (const auto& s : stages) {
      if (!s.ok || !s.verdict) return false;
    }
    return !stages.empty();
  }
};

/// Executes the configured pipeline. Stage errors are recorded in the
/// manifest without aborting later independent stages. The manifest itself
/// is written to <out_dir>/manifest.json.
RunManifest run(const RunConfig& config);

inline RunManifest run(const std::string& config_path) {
  return run(load_config(config_path));
}

/// FNV-1a 64-bit digest of the canonical configuration dump.
std::string config_digest(const nlohmann::json& j);

nlohmann::json manifest_to_json(const RunManifest& manifest);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace phs::workbench
