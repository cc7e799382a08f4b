#include "phs/observability.hpp"

#include <sstream>

namespace phs {
namespace {

void finish_report(ObservabilityReport& report, const StandardCoordinates& coords,
                   const Matrix& lbar, const Tolerances& tol) {
  report.gramian_std = hermitize(lbar);
  report.gramian = coords.operator_from_standard(report.gramian_std);
  Eigen::SelfAdjointEigenSolver<Matrix> es(report.gramian_std, Eigen::EigenvaluesOnly);
  report.delta = es.eigenvalues()(0);
  report.adm_m = es.eigenvalues()(es.eigenvalues().size() - 1);
  report.exact_observable = report.delta >= tol.eps_obs_rel * report.adm_m &&
                            report.adm_m > 0.0;
  report.approx_observable = report.delta > tol.eps_approx * report.adm_m &&
                             report.adm_m > 0.0;
}

}  // namespace

ObservabilityReport gramian_infinite(const Matrix& a, const Matrix& c,
                                     const Matrix& m, const Tolerances& tol) {
  StandardCoordinates coords(m);
  const Matrix abar = coords.to_standard(a);
  const Matrix cbar = coords.observation_to_standard(c);
  const double abscissa = spectral_abscissa(abar);
  if (abscissa > -tol.eps_stab) {
    std::ostringstream msg;
    msg << "infinite-time Gramian undefined: spectral abscissa " << abscissa
        << " is not below -" << tol.eps_stab;
    throw NumericsError(msg.str());
  }
  const Matrix w = cbar.adjoint() * cbar;
  const Matrix lbar = solve_lyapunov(abar, w);
  ObservabilityReport report;
  const double wn = w.norm();
  report.lyapunov_residual =
      wn > 0 ? (abar.adjoint() * lbar + lbar * abar + w).norm() / wn : 0.0;
  report.horizon = std::numeric_limits<double>::infinity();
  report.note =
      "discretized verdict: Hurwitz spectral abscissa stands in for strong "
      "stability of the semigroup";
  finish_report(report, coords, lbar, tol);
  return report;
}

ObservabilityReport gramian_finite(const Matrix& a, const Matrix& c,
                                   const Matrix& m, double t0, int steps,
                                   const Tolerances& tol) {
  if (t0 <= 0) throw ValidationError("finite-horizon Gramian needs t0 > 0");
  if (steps < 1) throw ValidationError("finite-horizon Gramian needs steps >= 1");
  StandardCoordinates coords(m);
  const Matrix abar = coords.to_standard(a);
  const Matrix cbar = coords.observation_to_standard(c);
  const double h = t0 / steps;
  const Matrix propagator = matrix_exponential(abar * h);
  Matrix snapshot = cbar;  // C e^(A t_k)
  Matrix lbar = 0.5 * (snapshot.adjoint() * snapshot);
  for (int k = 1; k <= steps; ++k) {
    snapshot = snapshot * propagator;
    const double weight = (k == steps) ? 0.5 : 1.0;
    lbar.noalias() += weight * (snapshot.adjoint() * snapshot);
  }
  lbar *= h;
  ObservabilityReport report;
  report.horizon = t0;
  report.lyapunov_residual = std::numeric_limits<double>::quiet_NaN();
  finish_report(report, coords, lbar, tol);
  return report;
}

LyapunovVerification lyapunov_verify(const Matrix& l, const Matrix& a,
                                     const Matrix& c, const Matrix& m,
                                     LyapunovMode mode, double delta,
                                     double slack_tol) {
  if (!is_hermitian(hermitize(m) * l, 1e-8 * (1.0 + l.cwiseAbs().maxCoeff()))) {
    throw ValidationError("certificate L is not self-adjoint in the M metric");
  }
  StandardCoordinates coords(m);
  const Matrix abar = coords.to_standard(a);
  const Matrix cbar = coords.observation_to_standard(c);
  const Matrix lbar = hermitize(coords.to_standard(l));
  const Matrix w = cbar.adjoint() * cbar;
  const Matrix closure = abar.adjoint() * lbar + lbar * abar + w;

  LyapunovVerification v;
  const double wn = w.norm();
  v.equation_residual = wn > 0 ? closure.norm() / wn : closure.norm();
  v.inequality_slack = smallest_eigenvalue(hermitize(closure));
  v.coercivity = smallest_eigenvalue(lbar);
  if (mode == LyapunovMode::equation) {
    v.passed = v.equation_residual <= slack_tol * 1e2 || closure.norm() <= slack_tol;
  } else {
    v.passed = v.inequality_slack >= -slack_tol;
  }
  v.passed = v.passed && v.coercivity >= delta - slack_tol;
  return v;
}

KalmanRank kalman_rank(const Matrix& a, const Matrix& c, double rel_threshold) {
  const Eigen::Index m = a.rows();
  const Eigen::Index p = c.rows();
  Matrix stack(m * p, m);
  Matrix block = c;
  for (Eigen::Index k = 0; k < m; ++k) {
    stack.middleRows(k * p, p) = block;
    if (k + 1 < m) block = block * a;
  }
  Eigen::JacobiSVD<Matrix> svd(stack);
  const auto& sv = svd.singularValues();
  KalmanRank result;
  if (sv.size() == 0 || sv(0) == 0.0) return result;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_threshold * sv(0)) ++result.rank;
  }
  result.observable = result.rank == m;
  return result;
}

bool approx_observability_verdict(const ObservabilityReport& report,
                                  const Tolerances& tol) {
  if (!std::isinf(report.horizon)) {
    throw ValidationError("approximate-observability verdict needs an infinite-horizon report");
  }
  return report.adm_m > 0.0 && report.delta > tol.eps_approx * report.adm_m;
}

}  // namespace phs
