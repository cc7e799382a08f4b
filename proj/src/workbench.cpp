#include "phs/workbench.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "phs/serialization.hpp"

namespace phs::workbench {
namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw ValidationError("config." + path + ": " + what);
}

Scheme parse_scheme(const std::string& name) {
  if (name == "central_staggered") return Scheme::central_staggered;
  if (name == "upwind") return Scheme::upwind;
  config_error("scheme", "unknown scheme '" + name + "'");
}

HautusRegion parse_region(const nlohmann::json& j, const std::string& path) {
  HautusRegion region;
  region.re_min = j.value("re_min", region.re_min);
  region.re_max = j.value("re_max", region.re_max);
  region.im_max = j.value("im_max", region.im_max);
  region.re_points = j.value("re_points", region.re_points);
  region.im_points = j.value("im_points", region.im_points);
  region.geometric_re = j.value("geometric", region.geometric_re);
  if (region.re_max >= 0) config_error(path + ".re_max", "must be negative");
  if (region.re_min > region.re_max) config_error(path + ".re_min", "exceeds re_max");
  if (region.re_points < 1 || region.im_points < 1) {
    config_error(path + ".re_points", "resolution must be positive");
  }
  return region;
}

Vector initial_state(const DiscretizedSystem& dsys, const nlohmann::json& spec) {
  const Grid& grid = dsys.grid;
  const Eigen::Index n = dsys.parent.n;
  Vector full = Vector::Zero(n * grid.nodes());
  const std::string shape = spec.value("shape", "bump");
  const auto channel = spec.value("channel", 0);
  if (channel < 0 || channel >= n) config_error("simulate.initial.channel", "out of range");
  if (shape == "bump") {
    const double center = spec.value("center", 0.5);
    const double width = spec.value("width", 0.4);
    for (int k = 0; k < grid.nodes(); ++k) {
      const double d = (grid.node(k) - center) / (0.5 * width);
      if (std::abs(d) < 1.0) {
        const double c = std::cos(0.5 * M_PI * d);
        full(k * n + channel) = c * c;
      }
    }
  } else if (shape == "sine") {
    const double waves = spec.value("waves", 1.0);
    for (int k = 0; k < grid.nodes(); ++k) {
      full(k * n + channel) = std::sin(waves * M_PI * grid.node(k));
    }
  } else {
    config_error("simulate.initial.shape", "unknown shape '" + shape + "'");
  }
  return dsys.restrict(full);
}

struct StageContext {
  const RunConfig& config;
  RunManifest& manifest;
  std::filesystem::path out;
  // lazily discretized PDE model, shared across stages
  std::optional<DiscretizedSystem> dsys;

  const DiscretizedSystem& discretized() {
    if (!config.model.is_pde()) {
      throw ValidationError("stage needs a PDE model, got a finite-dimensional triple");
    }
    if (!dsys) {
      dsys = discretize(*config.model.system, config.grid_n, config.scheme,
                        config.tolerances);
    }
    return *dsys;
  }

  std::string artifact(const std::string& name) {
    const std::string path = (out / name).string();
    manifest.artifacts.push_back(path);
    return path;
  }
};

bool stage_simulate(StageContext& ctx) {
  const auto& opts = ctx.config.raw.value("simulate", nlohmann::json::object());
  const DiscretizedSystem& dsys = ctx.discretized();
  const double dt = opts.value("dt", default_time_step(dsys, ctx.config.tolerances));
  const double t_final = opts.value("t_final", 1.0);
  const std::string integ = opts.value("integrator", "trapezoidal");
  const Integrator integrator = integ == "explicit_rk4" ? Integrator::explicit_rk4
                                                        : Integrator::trapezoidal;
  const Vector x0 =
      initial_state(dsys, opts.value("initial", nlohmann::json::object()));
  const Trajectory traj = simulate(dsys, x0, t_final, dt, integrator);
  write_trajectory_csv(traj, ctx.artifact("trajectory.csv"));
  const EnergyBalanceResidual residual = energy_balance_residual(traj, dsys);
  nlohmann::json summary;
  summary["t_final"] = t_final;
  summary["dt"] = dt;
  summary["integrator"] = integ;
  summary["energy_initial"] = traj.energies.front();
  summary["energy_final"] = traj.energies.back();
  summary["max_energy_balance_residual"] = residual.max_residual;
  summary["residual_step"] = residual.at_step;
  write_json(summary, ctx.artifact("simulate.json"));
  return true;
}

bool stage_observability(StageContext& ctx) {
  const auto& opts = ctx.config.raw.value("observability", nlohmann::json::object());
  Matrix a, c, m;
  nlohmann::json extra;
  if (ctx.config.model.is_pde()) {
    const DiscretizedSystem& dsys = ctx.discretized();
    a = dsys.A;
    c = dsys.C;
    m = dsys.M;
  } else {
    const auto& triple = *ctx.config.model.triple;
    a = triple.A;
    c = triple.C;
    m = triple.M;
    const KalmanRank plain = kalman_rank(triple.A, triple.C);
    const KalmanRank perturbed = kalman_rank(triple.A + triple.G0, triple.C);
    extra["kalman_rank"] = {{"A", plain.rank},
                            {"A_plus_G0", perturbed.rank},
                            {"A_observable", plain.observable},
                            {"A_plus_G0_observable", perturbed.observable}};
  }
  ObservabilityReport report;
  bool verdict = false;
  const auto horizon = opts.value("horizon", nlohmann::json("infinite"));
  if (horizon.is_string()) {
    report = gramian_infinite(a, c, m, ctx.config.tolerances);
    verdict = approx_observability_verdict(report, ctx.config.tolerances);
  } else {
    const double t0 = horizon.get<double>();
    const int steps = opts.value("steps", 400);
    report = gramian_finite(a, c, m, t0, steps, ctx.config.tolerances);
    verdict = report.exact_observable;
  }
  nlohmann::json j = observability_to_json(report, opts.value("embed_gramian", false));
  if (!extra.empty()) j.update(extra);
  write_json(j, ctx.artifact("observability.json"));
  return verdict;
}

bool stage_hautus(StageContext& ctx) {
  const auto& opts = ctx.config.raw.value("hautus", nlohmann::json::object());
  const HautusRegion region = parse_region(opts, "hautus");
  Matrix a, c, m;
  if (ctx.config.model.is_pde()) {
    const DiscretizedSystem& dsys = ctx.discretized();
    a = dsys.A;
    c = dsys.C;
    m = dsys.M;
  } else {
    const auto& triple = *ctx.config.model.triple;
    a = opts.value("perturbed", false) ? Matrix(triple.A + triple.G0) : triple.A;
    c = triple.C;
    m = triple.M;
  }
  const HautusScan scan = hautus_scan(a, c, m, region, ctx.config.tolerances);
  write_scan_csv(scan, ctx.artifact("hautus_scan.csv"));
  write_json(scan_to_json(scan), ctx.artifact("hautus_scan.json"));
  return scan.pass;
}

bool stage_fundamental(StageContext& ctx) {
  const auto& opts = ctx.config.raw.value("fundamental", nlohmann::json::object());
  if (!ctx.config.model.is_pde()) {
    throw ValidationError("fundamental stage needs a PDE model");
  }
  const PortHamiltonianSystem& sys = *ctx.config.model.system;
  const int cells = opts.value("grid_n", std::min(ctx.config.grid_n, 32));
  const Grid grid(cells);
  Complex s(-1.0, 0.0);
  if (opts.contains("s")) {
    const auto& sj = opts.at("s");
    s = Complex(sj.at(0).get<double>(), sj.at(1).get<double>());
  }
  Diagonalization diag = smooth_diagonalization(sys, grid, ctx.config.tolerances);
  compute_q(diag, sys);
  const GrowthConstants gc = growth_constants(diag);

  FundamentalSolution fs = fundamental_solution(sys, s, grid, ctx.config.tolerances);
  const GrowthBoundFit fit =
      verify_growth_bounds(fs, gc.c0, ctx.config.seed);
  write_fundamental_csv(fs, ctx.artifact("fundamental.csv"));
  nlohmann::json j = bounds_to_json(fit, s);
  j["c1"] = gc.c1;
  if (opts.contains("omegas")) {
    nlohmann::json sweep = nlohmann::json::array();
    for (const auto& w : opts.at("omegas")) {
      const Complex sw(s.real(), w.get<double>());
      FundamentalSolution fsw =
          fundamental_solution(sys, sw, grid, ctx.config.tolerances);
      const GrowthBoundFit fw = verify_growth_bounds(fsw, gc.c0, ctx.config.seed);
      sweep.push_back({{"omega", w.get<double>()}, {"M", fw.upper_m}});
    }
    j["omega_sweep"] = std::move(sweep);
  }
  write_json(j, ctx.artifact("fundamental.json"));
  return fit.violations == 0;
}

bool stage_theorem2(StageContext& ctx) {
  const auto& opts = ctx.config.raw.value("theorem2", nlohmann::json::object());
  if (!ctx.config.model.is_pde()) {
    throw ValidationError("theorem2 stage needs a PDE model");
  }
  const HautusRegion region = parse_region(opts, "theorem2");
  const Theorem2Report report =
      theorem2_pipeline(*ctx.config.model.system, ctx.config.grid_n, region,
                        ctx.config.scheme, ctx.config.tolerances);
  if (report.far_scan) write_scan_csv(*report.far_scan, ctx.artifact("theorem2_far.csv"));
  if (report.near_scan) write_scan_csv(*report.near_scan, ctx.artifact("theorem2_near.csv"));
  write_json(theorem2_to_json(report), ctx.artifact("theorem2.json"));
  return report.all_stages_pass();
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig config;
  config.raw = j;
  if (j.contains("system_file")) {
    config.model.name = "file:" + j.at("system_file").get<std::string>();
    config.model.system = load_system(j.at("system_file").get<std::string>());
  } else if (j.contains("model")) {
    const auto& mj = j.at("model");
    if (!mj.contains("name")) config_error("model.name", "missing");
    config.model = models::model(mj.at("name").get<std::string>(),
                                 mj.value("params", nlohmann::json::object()));
  } else {
    config_error("model", "either 'model' or 'system_file' is required");
  }
  config.grid_n = j.value("grid_n", config.grid_n);
  if (config.grid_n < 4) config_error("grid_n", "must be at least 4");
  config.scheme = parse_scheme(j.value("scheme", "central_staggered"));
  config.seed = j.value("seed", config.seed);
  config.out_dir = j.value("out_dir", config.out_dir);

  if (!j.contains("pipeline") || !j.at("pipeline").is_array() ||
      j.at("pipeline").empty()) {
    config_error("pipeline", "a non-empty list of stages is required");
  }
  for (const auto& stage : j.at("pipeline")) {
    const std::string name = stage.get<std::string>();
    if (name != "simulate" && name != "observability" && name != "hautus-scan" &&
        name != "hautus" && name != "fundamental" && name != "theorem2") {
      config_error("pipeline", "unknown stage '" + name + "'");
    }
    config.pipeline.push_back(name == "hautus" ? "hautus-scan" : name);
  }

  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    config.tolerances.eps_inv = t.value("eps_inv", config.tolerances.eps_inv);
    config.tolerances.tol_herm = t.value("tol_herm", config.tolerances.tol_herm);
    config.tolerances.eps_hamiltonian =
        t.value("eps_hamiltonian", config.tolerances.eps_hamiltonian);
    config.tolerances.tol_diag = t.value("tol_diag", config.tolerances.tol_diag);
    config.tolerances.eps_delta = t.value("eps_delta", config.tolerances.eps_delta);
    config.tolerances.eps_stab = t.value("eps_stab", config.tolerances.eps_stab);
    config.tolerances.eps_obs_rel = t.value("eps_obs_rel", config.tolerances.eps_obs_rel);
    config.tolerances.eps_approx = t.value("eps_approx", config.tolerances.eps_approx);
    config.tolerances.eps_ht = t.value("eps_ht", config.tolerances.eps_ht);
    config.tolerances.tol_ode = t.value("tol_ode", config.tolerances.tol_ode);
    config.tolerances.eig_cap = t.value("eig_cap", config.tolerances.eig_cap);
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

std::string config_digest(const nlohmann::json& j) {
  const std::string canonical = j.dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

nlohmann::json manifest_to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["config_digest"] = manifest.config_digest;
  j["version"] = manifest.version;
  j["artifacts"] = manifest.artifacts;
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : manifest.stages) {
    nlohmann::json stage;
    stage["name"] = s.name;
    stage["ok"] = s.ok;
    stage["verdict"] = s.verdict;
    if (!s.error.empty()) stage["error"] = s.error;
    stages.push_back(std::move(stage));
  }
  j["stages"] = std::move(stages);
  j["all_verdicts_pass"] = manifest.all_verdicts_pass();
  return j;
}

RunManifest run(const RunConfig& config) {
  RunManifest manifest;
  manifest.config_digest = config_digest(config.raw);
  manifest.version = kVersion;

  StageContext ctx{config, manifest, std::filesystem::path(config.out_dir), {}};
  std::filesystem::create_directories(ctx.out);

  for (const std::string& name : config.pipeline) {
    StageStatus status;
    status.name = name;
    try {
      if (name == "simulate") {
        status.verdict = stage_simulate(ctx);
      } else if (name == "observability") {
        status.verdict = stage_observability(ctx);
      } else if (name == "hautus-scan") {
        status.verdict = stage_hautus(ctx);
      } else if (name == "fundamental") {
        status.verdict = stage_fundamental(ctx);
      } else if (name == "theorem2") {
        status.verdict = stage_theorem2(ctx);
      }
      status.ok = true;
    } catch (const std::exception& e) {
      status.ok = false;
      status.error = e.what();
    }
    manifest.stages.push_back(std::move(status));
  }

  write_json(manifest_to_json(manifest), (ctx.out / "manifest.json").string());
  manifest.artifacts.push_back((ctx.out / "manifest.json").string());
  return manifest;
}

}  // namespace phs::workbench
