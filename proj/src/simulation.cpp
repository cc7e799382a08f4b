#include "phs/simulation.hpp"

#include <cmath>
#include <sstream>

namespace phs {

Trajectory simulate(const DiscretizedSystem& dsys, const Vector& x0,
                    double t_final, double dt, Integrator integrator) {
  if (dt <= 0) throw ValidationError("time step must be positive");
  if (t_final < dt) throw ValidationError("t_final must be at least one step");
  if (x0.size() != dsys.dim()) throw ValidationError("initial state has wrong dimension");

  const Eigen::Index m = dsys.dim();
  const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));

  Trajectory traj;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.outputs.reserve(n_steps + 1);
  traj.energies.reserve(n_steps + 1);

  auto record = [&](double t, const Vector& z) {
    traj.times.push_back(t);
    traj.states.push_back(z);
    traj.outputs.push_back(dsys.C * z);
    traj.energies.push_back(dsys.energy(z));
  };

  Vector z = x0;
  record(0.0, z);

  if (integrator == Integrator::trapezoidal) {
    const Matrix lhs = Matrix::Identity(m, m) - 0.5 * dt * dsys.A;
    const Matrix rhs = Matrix::Identity(m, m) + 0.5 * dt * dsys.A;
    Eigen::PartialPivLU<Matrix> lu(lhs);
    if (lu.rcond() < 1e-14) {
      std::ostringstream msg;
      msg << "trapezoidal step matrix I - dt/2 A is numerically singular at dt="
          << dt << "; reduce the step size";
      throw NumericsError(msg.str());
    }
    for (std::size_t k = 1; k <= n_steps; ++k) {
      z = lu.solve(rhs * z);
      record(k * dt, z);
    }
  } else {
    for (std::size_t k = 1; k <= n_steps; ++k) {
      const Vector k1 = dsys.A * z;
      const Vector k2 = dsys.A * (z + 0.5 * dt * k1);
      const Vector k3 = dsys.A * (z + 0.5 * dt * k2);
      const Vector k4 = dsys.A * (z + dt * k3);
      z = z + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      record(k * dt, z);
    }
  }
  return traj;
}

double default_time_step(const DiscretizedSystem& dsys, const Tolerances& tol) {
  const Diagonalization diag =
      smooth_diagonalization(dsys.parent, dsys.grid, tol);
  double max_speed = 0.0;
  for (const auto& d : diag.delta) {
    max_speed = std::max(max_speed, d.cwiseAbs().maxCoeff());
  }
  return dsys.grid.spacing() / (2.0 * max_speed);
}

EnergyBalanceResidual energy_balance_residual(const Trajectory& traj,
                                              const DiscretizedSystem& dsys) {
  EnergyBalanceResidual result;
  if (traj.times.size() < 2) return result;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    const Vector mid = 0.5 * (traj.states[k] + traj.states[k + 1]);
    const GridFunction state = dsys.to_grid_function(mid);
    const Vector tau = dsys.traces(mid);
    const Eigen::Index n = dsys.parent.n;
    const PowerBalanceTerms terms = power_balance_terms(
        dsys.parent, state, tau.head(n), tau.tail(n));
    const double rate = (traj.energies[k + 1] - traj.energies[k]) / dt;
    const double residual = std::abs(rate - terms.total());
    if (residual > result.max_residual) {
      result.max_residual = residual;
      result.at_step = k;
    }
  }
  return result;
}

StabilityVerdict stability_classify(const Matrix& a, const Matrix& m,
                                    const Tolerances& tol) {
  if (a.rows() > tol.eig_cap) {
    throw ValidationError("system dimension exceeds the dense eigenproblem cap");
  }
  StandardCoordinates coords(m);
  StabilityVerdict v;
  v.abscissa = spectral_abscissa(coords.to_standard(a));
  if (v.abscissa <= -tol.eps_stab) {
    v.verdict = StabilityClass::exponentially_stable;
    v.omega_hat = -v.abscissa;
  } else if (v.abscissa < tol.eps_stab) {
    v.verdict = StabilityClass::marginally_stable;
  } else {
    v.verdict = StabilityClass::unstable;
  }
  return v;
}

}  // namespace phs
