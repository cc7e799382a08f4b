#include "phs/serialization.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace phs {
namespace {

void csv_number(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  line += buf;
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix document must be a non-empty array");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix document has ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& entry = row.at(k);
      if (entry.is_number()) {
        m(i, k) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2) {
        m(i, k) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
      } else {
        throw ValidationError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

nlohmann::json system_to_json(const PortHamiltonianSystem& sys) {
  nlohmann::json j;
  j["n"] = sys.n;
  j["P1"] = matrix_to_json(sys.P1);
  j["G0"] = matrix_to_json(sys.G0);
  nlohmann::json h = nlohmann::json::array();
  for (const auto& coeff : sys.H.coefficients()) h.push_back(matrix_to_json(coeff));
  j["H"] = std::move(h);
  j["WB"] = matrix_to_json(sys.WB);
  j["WC"] = matrix_to_json(sys.WC);
  return j;
}

PortHamiltonianSystem system_from_json(const nlohmann::json& j) {
  PortHamiltonianSystem sys;
  for (const char* key : {"n", "P1", "G0", "H", "WB", "WC"}) {
    if (!j.contains(key)) {
      throw ValidationError(std::string("system document is missing key '") + key + "'");
    }
  }
  sys.n = j.at("n").get<Eigen::Index>();
  sys.P1 = matrix_from_json(j.at("P1"));
  sys.G0 = matrix_from_json(j.at("G0"));
  std::vector<Matrix> coeffs;
  for (const auto& c : j.at("H")) coeffs.push_back(matrix_from_json(c));
  sys.H = MatrixField(std::move(coeffs));
  sys.WB = matrix_from_json(j.at("WB"));
  sys.WC = matrix_from_json(j.at("WC"));
  return sys;
}

void save_system(const PortHamiltonianSystem& sys, const std::string& path) {
  write_json(system_to_json(sys), path);
}

PortHamiltonianSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open system file: " + path);
  nlohmann::json j;
  in >> j;
  return system_from_json(j);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  const Eigen::Index p = traj.outputs.empty() ? 0 : traj.outputs.front().size();
  out << "t,E";
  for (Eigen::Index i = 0; i < p; ++i) out << ",re_y" << i << ",im_y" << i;
  out << "\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::string line;
    csv_number(line, traj.times[k]);
    line += ',';
    csv_number(line, traj.energies[k]);
    for (Eigen::Index i = 0; i < p; ++i) {
      line += ',';
      csv_number(line, traj.outputs[k](i).real());
      line += ',';
      csv_number(line, traj.outputs[k](i).imag());
    }
    out << line << "\n";
  }
}

void write_scan_csv(const HautusScan& scan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << "re_s,im_s,m\n";
  for (std::size_t k = 0; k < scan.points.size(); ++k) {
    std::string line;
    csv_number(line, scan.points[k].real());
    line += ',';
    csv_number(line, scan.points[k].imag());
    line += ',';
    csv_number(line, scan.values[k]);
    out << line << "\n";
  }
}

void write_fundamental_csv(const FundamentalSolution& fs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  const Eigen::Index n = fs.at(0, 0).rows();
  out << "zeta,tau";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out << ",re_psi_" << i << j << ",im_psi_" << i << j;
    }
  }
  out << "\n";
  for (int i = 0; i < fs.grid().nodes(); ++i) {
    for (int j = i; j < fs.grid().nodes(); ++j) {
      std::string line;
      csv_number(line, fs.grid().node(j));
      line += ',';
      csv_number(line, fs.grid().node(i));
      const Matrix& psi = fs.at(j, i);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          line += ',';
          csv_number(line, psi(r, c).real());
          line += ',';
          csv_number(line, psi(r, c).imag());
        }
      }
      out << line << "\n";
    }
  }
}

nlohmann::json observability_to_json(const ObservabilityReport& report,
                                     bool embed_gramian) {
  nlohmann::json j;
  j["horizon"] = std::isinf(report.horizon) ? nlohmann::json("infinite")
                                            : nlohmann::json(report.horizon);
  j["delta"] = report.delta;
  j["adm_m"] = report.adm_m;
  if (std::isnan(report.lyapunov_residual)) {
    j["lyapunov_residual"] = nullptr;
  } else {
    j["lyapunov_residual"] = report.lyapunov_residual;
  }
  j["exact_observable"] = report.exact_observable;
  j["approx_observable"] = report.approx_observable;
  if (!report.note.empty()) j["note"] = report.note;
  if (embed_gramian) j["gramian"] = matrix_to_json(report.gramian);
  return j;
}

nlohmann::json scan_to_json(const HautusScan& scan) {
  nlohmann::json j;
  j["mesh_infimum"] = scan.mesh_infimum;
  j["argmin"] = {scan.argmin.real(), scan.argmin.imag()};
  j["pass"] = scan.pass;
  j["points"] = scan.points.size();
  j["re_points"] = scan.re_points;
  j["im_points"] = scan.im_points;
  if (scan.alpha) j["alpha"] = *scan.alpha;
  j["semantics"] = "mesh infimum: supports or falsifies (HT) at the scanned points only";
  return j;
}

nlohmann::json theorem2_to_json(const Theorem2Report& report) {
  nlohmann::json j;
  j["wbc_invertible"] = report.wbc_invertible;
  j["norm_P"] = report.norm_P;
  j["a_stable"] = report.a_stable;
  j["abscissa_a"] = report.abscissa_a;
  j["comparison_stable"] = report.comparison_stable;
  j["abscissa_comparison"] = report.abscissa_comparison;
  j["gramian_ok"] = report.gramian_ok;
  j["delta"] = report.delta;
  j["gramian_norm"] = report.gramian_norm;
  j["lyapunov_residual"] = report.lyapunov_residual;
  j["alpha"] = report.alpha;
  j["perturbation_norm"] = report.perturbation_norm;
  j["m_star"] = report.m_star;
  j["hautus_pass"] = report.hautus_pass;
  j["approx_observable_gramian"] = report.approx_observable_gramian;
  if (report.far_scan) j["far_scan"] = scan_to_json(*report.far_scan);
  if (report.near_scan) j["near_scan"] = scan_to_json(*report.near_scan);
  j["warnings"] = report.warnings;
  j["all_stages_pass"] = report.all_stages_pass();
  return j;
}

nlohmann::json bounds_to_json(const GrowthBoundFit& fit, Complex s) {
  nlohmann::json j;
  j["s"] = {s.real(), s.imag()};
  j["M"] = fit.upper_m;
  j["M_tilde"] = fit.lower_m;
  j["c0"] = fit.c0;
  j["c0_tilde"] = fit.c0_tilde;
  j["violations"] = fit.violations;
  return j;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace phs
