#include "phs/models.hpp"

#include <cmath>

namespace phs::models {
namespace {

double param(const nlohmann::json& p, const std::string& key, double fallback) {
  if (!p.contains(key)) return fallback;
  return p.at(key).get<double>();
}

std::vector<Matrix> scalar_poly(const nlohmann::json& coeffs) {
  std::vector<Matrix> out;
  for (const auto& c : coeffs) {
    Matrix m(1, 1);
    m(0, 0) = c.get<double>();
    out.push_back(m);
  }
  return out;
}

MatrixField diag_field(const std::vector<Matrix>& first,
                       const std::vector<Matrix>& second) {
  const std::size_t deg = std::max(first.size(), second.size());
  std::vector<Matrix> coeffs(deg, Matrix::Zero(2, 2));
  for (std::size_t k = 0; k < first.size(); ++k) coeffs[k](0, 0) = first[k](0, 0);
  for (std::size_t k = 0; k < second.size(); ++k) coeffs[k](1, 1) = second[k](0, 0);
  return MatrixField(coeffs);
}

ModelSpec transport_model(const nlohmann::json& params) {
  ModelSpec spec{"transport", params, PortHamiltonianSystem{}, std::nullopt};
  PortHamiltonianSystem& sys = *spec.system;
  sys.n = 1;
  sys.P1 = Matrix::Identity(1, 1);
  sys.G0 = Matrix::Constant(1, 1, param(params, "g0", 0.0));
  sys.H = MatrixField::identity(1);
  sys.WB = Matrix(1, 2);
  sys.WB << 1, 0;  // inflow trace w(1) = 0
  sys.WC = Matrix(1, 2);
  sys.WC << 0, 1;  // observe the outflow w(0)
  return spec;
}

ModelSpec wave_model(const nlohmann::json& params) {
  const double rho = param(params, "rho", 1.0);
  const double tension = param(params, "tension", 1.0);
  if (rho <= 0 || tension <= 0) {
    throw ValidationError("wave model needs rho > 0 and tension > 0");
  }
  ModelSpec spec{"wave", params, PortHamiltonianSystem{}, std::nullopt};
  PortHamiltonianSystem& sys = *spec.system;
  sys.n = 2;
  sys.P1 = Matrix(2, 2);
  sys.P1 << 0, 1, 1, 0;
  sys.G0 = param(params, "g0_scale", 0.0) * Matrix::Identity(2, 2);

  if (params.contains("h11_poly") || params.contains("h22_poly")) {
    std::vector<Matrix> h11 =
        params.contains("h11_poly")
            ? scalar_poly(params.at("h11_poly"))
            : std::vector<Matrix>{Matrix::Constant(1, 1, 1.0 / rho)};
    std::vector<Matrix> h22 =
        params.contains("h22_poly")
            ? scalar_poly(params.at("h22_poly"))
            : std::vector<Matrix>{Matrix::Constant(1, 1, tension)};
    sys.H = diag_field(h11, h22);
  } else {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 1.0 / rho;   // velocity channel
    h(1, 1) = tension;     // stress channel
    sys.H = MatrixField::constant(h);
  }

  // trace ordering: [v(1), sigma(1), v(0), sigma(0)] with v = (Hx)_1,
  // sigma = (Hx)_2
  const std::string bc = params.value("bc", "conservative");
  sys.WB = Matrix::Zero(2, 4);
  sys.WC = Matrix::Zero(2, 4);
  if (bc == "conservative") {
    sys.WB(0, 0) = 1;  // v(1) = 0
    sys.WB(1, 2) = 1;  // v(0) = 0
    sys.WC(0, 1) = 1;  // y = [sigma(1); sigma(0)]
    sys.WC(1, 3) = 1;
  } else if (bc == "boundary_damped") {
    const double k = param(params, "damping", 1.0);
    if (k <= 0) throw ValidationError("wave model needs damping > 0");
    sys.WB(0, 0) = k;  // sigma(1) + k v(1) = 0: absorbing end
    sys.WB(0, 1) = 1;
    sys.WB(1, 2) = 1;  // v(0) = 0: fixed end
    sys.WC(0, 0) = 1;  // y = [v(1); sigma(0)]
    sys.WC(1, 3) = 1;
  } else {
    throw ValidationError("unknown wave boundary-condition preset: " + bc);
  }
  return spec;
}

ModelSpec timoshenko_model(const nlohmann::json& params) {
  const double shear = param(params, "shear", 1.0);
  const double rho = param(params, "rho", 1.0);
  const double bending = param(params, "bending", 1.0);
  const double inertia = param(params, "inertia", 1.0);
  if (shear <= 0 || rho <= 0 || bending <= 0 || inertia <= 0) {
    throw ValidationError("timoshenko model needs positive physical parameters");
  }
  ModelSpec spec{"timoshenko", params, PortHamiltonianSystem{}, std::nullopt};
  PortHamiltonianSystem& sys = *spec.system;
  sys.n = 4;
  sys.P1 = Matrix::Zero(4, 4);
  sys.P1(0, 1) = sys.P1(1, 0) = 1;
  sys.P1(2, 3) = sys.P1(3, 2) = 1;
  sys.G0 = Matrix::Zero(4, 4);
  sys.G0(0, 3) = -1;
  sys.G0(3, 0) = 1;
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = shear;
  h(1, 1) = 1.0 / rho;
  h(2, 2) = bending;
  h(3, 3) = 1.0 / inertia;
  sys.H = MatrixField::constant(h);

  // effort trace e = Hx: [e(1); e(0)], channels (shear force, velocity,
  // moment, angular velocity). Clamped at 0, free at 1.
  sys.WB = Matrix::Zero(4, 8);
  sys.WB(0, 0) = 1;  // shear force(1) = 0
  sys.WB(1, 2) = 1;  // moment(1) = 0
  sys.WB(2, 5) = 1;  // velocity(0) = 0
  sys.WB(3, 7) = 1;  // angular velocity(0) = 0
  sys.WC = Matrix::Zero(4, 8);
  sys.WC(0, 1) = 1;  // velocity(1)
  sys.WC(1, 3) = 1;  // angular velocity(1)
  sys.WC(2, 4) = 1;  // shear force(0)
  sys.WC(3, 6) = 1;  // moment(0)
  return spec;
}

ModelSpec counterexample_model(const nlohmann::json& params) {
  ModelSpec spec{"paper_counterexample", params, std::nullopt, FiniteTriple{}};
  FiniteTriple& t = *spec.triple;
  t.A = Matrix(2, 2);
  t.A << -1, 1, -1, 0;
  t.C = Matrix(1, 2);
  t.C << std::sqrt(2.0), 0;
  t.G0 = Matrix(2, 2);
  t.G0 << -1, -1, -1, -1;
  t.M = Matrix::Identity(2, 2);
  return spec;
}

}  // namespace

ModelSpec model(const std::string& name, const nlohmann::json& params) {
  if (name == "transport") return transport_model(params);
  if (name == "wave") return wave_model(params);
  if (name == "timoshenko") return timoshenko_model(params);
  if (name == "paper_counterexample") return counterexample_model(params);
  throw ValidationError("unknown model: " + name);
}

std::vector<std::string> model_names() {
  return {"transport", "wave", "timoshenko", "paper_counterexample"};
}

std::string describe(const std::string& name) {
  if (name == "transport") {
    return "scalar transport with outflow observation; g0 sets internal dissipation";
  }
  if (name == "wave") {
    return "1-d wave in first-order form; conservative or boundary_damped presets";
  }
  if (name == "timoshenko") {
    return "Timoshenko beam, clamped-free, illustrative parameters";
  }
  if (name == "paper_counterexample") {
    return "2x2 triple with A+A* = -C*C; G0 destroys observability but not the scan floor";
  }
  throw ValidationError("unknown model: " + name);
}

}  // namespace phs::models
