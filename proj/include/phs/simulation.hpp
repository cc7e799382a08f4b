#pragma once

#include <vector>

#include "phs/discretization.hpp"

namespace phs {

enum class Integrator { trapezoidal, explicit_rk4 };

/// Time history of a discretized run: states, outputs y(t_k) = C_h x(t_k)
/// and energies E(t_k) = <x, M_h x>. Immutable once returned.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<Vector> outputs;
  std::vector<double> energies;

  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

/// Integrates z' = A_h z from x0. The trapezoidal rule (implicit midpoint on
/// a linear system) reproduces the discrete energy identity exactly for skew
/// parts; explicit RK4 is the nonstiff alternative.
Trajectory simulate(const DiscretizedSystem& dsys, const Vector& x0,
                    double t_final, double dt,
                    Integrator integrator = Integrator::trapezoidal);

/// CFL-like default step: dz / (2 max |Delta|).
double default_time_step(const DiscretizedSystem& dsys,
                         const Tolerances& tol = default_tolerances());

struct EnergyBalanceResidual {
  double max_residual = 0.0;
  std::size_t at_step = 0;
};

/// Max over steps of |dE/dt - (boundary + dissipation)| with both power
/// balance terms evaluated at the midpoint states (x_k + x_{k+1})/2.
EnergyBalanceResidual energy_balance_residual(const Trajectory& traj,
                                              const DiscretizedSystem& dsys);

enum class StabilityClass { exponentially_stable, marginally_stable, unstable };

struct StabilityVerdict {
  StabilityClass verdict = StabilityClass::marginally_stable;
  double abscissa = 0.0;
  /// Decay rate omega_hat = -abscissa, meaningful for the stable verdict.
  double omega_hat = 0.0;
};

/// Spectral abscissa of A in the M inner product (similarity through the
/// Cholesky factor), full dense spectrum. The discrete abscissa is a proxy
/// for the semigroup growth bound.
StabilityVerdict stability_classify(const Matrix& a, const Matrix& m,
                                    const Tolerances& tol = default_tolerances());

inline StabilityVerdict stability_classify(const DiscretizedSystem& dsys,
                                           const Tolerances& tol = default_tolerances()) {
  return stability_classify(dsys.A, dsys.M, tol);
}

}  // namespace phs
