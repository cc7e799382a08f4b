#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phs/system.hpp"

namespace phs::models {

/// Finite-dimensional observation triple (no spatial structure); M is the
/// inner-product weight, identity unless stated otherwise.
struct FiniteTriple {
  Matrix A;
  Matrix C;
  Matrix G0;
  Matrix M;
};

/// Resolved model: either a PDE system or a finite-dimensional triple.
/// Resolution is deterministic in (name, parameters).
struct ModelSpec {
  std::string name;
  nlohmann::json parameters;
  std::optional<PortHamiltonianSystem> system;
  std::optional<FiniteTriple> triple;

  bool is_pde() const { return system.has_value(); }
};

/// Known names: transport, wave, timoshenko, paper_counterexample.
///
/// transport:   n=1, P1=1, H=1, G0=g ("g0", default 0), WB=[1 0], WC=[0 1].
/// wave:        n=2, P1=[[0,1],[1,0]], H=diag(1/rho, tension); "bc" is
///              "conservative" (default) or "boundary_damped" with gain
///              "damping"; "g0_scale" adds g*I internal dissipation;
///              "h11_poly"/"h22_poly" override the H diagonal with
///              polynomial coefficients.
/// timoshenko:  n=4 first-order beam form with parameters "shear", "rho",
///              "bending", "inertia" (defaults 1; illustrative values, not
///              tied to any reference data); clamped at 0, free at 1.
/// paper_counterexample: the 2x2 triple A=[[-1,1],[-1,0]], C=[sqrt2, 0],
///              G0 = [[-1,-1],[-1,-1]], M = I.
ModelSpec model(const std::string& name, const nlohmann::json& params = {});

std::vector<std::string> model_names();

/// One-line description per model for CLI listings.
std::string describe(const std::string& name);

}  // namespace phs::models
