#pragma once

#include <string>

#include "phs/linalg.hpp"

namespace phs {

/// Gramian/Lyapunov certificate of a finite-dimensional observation pair in
/// the M inner product. `gramian` is the operator L in original coordinates
/// (so <x, L x>_M is its quadratic form), `gramian_std` the same Hermitian
/// matrix in standard coordinates; delta and adm_m are its extreme
/// eigenvalues, i.e. the observability and infinite-time admissibility
/// constants.
struct ObservabilityReport {
  Matrix gramian;
  Matrix gramian_std;
  double delta = 0.0;
  double adm_m = 0.0;
  double lyapunov_residual = 0.0;
  double horizon = std::numeric_limits<double>::infinity();
  bool exact_observable = false;
  bool approx_observable = false;
  std::string note;  // discrete-proxy caveats
};

/// Solves A^* L + L A = -C^* C in the M inner product (Cholesky change of
/// coordinates, dense Bartels-Stewart) and reads off delta = lambda_min,
/// adm_m = lambda_max. Requires A exponentially stable in the M metric;
/// throws NumericsError("infinite-time Gramian undefined...") otherwise.
ObservabilityReport gramian_infinite(const Matrix& a, const Matrix& c,
                                     const Matrix& m,
                                     const Tolerances& tol = default_tolerances());

/// Finite-horizon Gramian L_t0 = int_0^t0 e^(A^* t) C^* C e^(A t) dt via a
/// trapezoidal sum over semigroup snapshots at step granularity, the
/// propagator computed once by scaling and squaring.
ObservabilityReport gramian_finite(const Matrix& a, const Matrix& c,
                                   const Matrix& m, double t0, int steps,
                                   const Tolerances& tol = default_tolerances());

enum class LyapunovMode { equation, inequality };

struct LyapunovVerification {
  double equation_residual = 0.0;   // |A^*L + LA + C^*C| / |C^*C|
  double inequality_slack = 0.0;    // lambda_min( -(A^*L+LA) - C^*C ) ... >= -tol passes
  double coercivity = 0.0;          // lambda_min of L in the M metric
  bool passed = false;
};

/// Checks a candidate certificate L (given as an operator in original
/// coordinates) against the Lyapunov equation or inequality, plus the
/// coercivity bound lambda_min >= delta.
LyapunovVerification lyapunov_verify(const Matrix& l, const Matrix& a,
                                     const Matrix& c, const Matrix& m,
                                     LyapunovMode mode, double delta = 0.0,
                                     double slack_tol = 1e-10);

struct KalmanRank {
  Eigen::Index rank = 0;
  bool observable = false;
};

/// Rank of [C; CA; ...; CA^(m-1)] by SVD with a relative threshold.
KalmanRank kalman_rank(const Matrix& a, const Matrix& c,
                       double rel_threshold = 1e-10);

/// True iff delta > eps_approx * adm_m for an infinite-horizon report.
bool approx_observability_verdict(const ObservabilityReport& report,
                                  const Tolerances& tol = default_tolerances());

}  // namespace phs
