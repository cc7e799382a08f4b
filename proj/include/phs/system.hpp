#pragma once

#include <utility>

#include "phs/grid.hpp"
#include "phs/matrix_field.hpp"

namespace phs {

/// Continuous model data of a linear first-order port-Hamiltonian system
///
///   dx/dt = (P1 d/dzeta + G0) (H(zeta) x),    zeta in [0,1],
///   0     = WB [ (Hx)(1); (Hx)(0) ],
///   y     = WC [ (Hx)(1); (Hx)(0) ].
///
/// WB and WC rows act on the stacked boundary trace [(Hx)(1); (Hx)(0)].
struct PortHamiltonianSystem {
  Eigen::Index n = 0;
  Matrix P1;       // n x n, Hermitian, invertible
  Matrix G0;       // n x n
  MatrixField H;   // hamiltonian field
  Matrix WB;       // n x 2n, full row rank
  Matrix WC;       // n x 2n, full row rank

  /// Checks every structural invariant; throws ValidationError naming the
  /// first violated one. `h_samples` controls the positivity sampling of H.
  void validate(int h_samples = 64,
                const Tolerances& tol = default_tolerances()) const;
};

/// R0 = (1/sqrt 2) [[P1, -P1], [I, I]]; satisfies R0^* Sigma R0 = diag(P1, -P1)
/// with Sigma = [[0, I], [I, 0]].
Matrix build_r0(const Matrix& p1, const Tolerances& tol = default_tolerances());

inline Matrix sigma_swap(Eigen::Index n) {
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  s.topRightCorner(n, n) = Matrix::Identity(n, n);
  s.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return s;
}

/// Boundary effort/flow pair: e = (trace1 + trace0)/sqrt2,
/// f = P1 (trace1 - trace0)/sqrt2, so that [f; e] = R0 [trace1; trace0].
std::pair<Vector, Vector> boundary_effort_flow(const Vector& trace1,
                                               const Vector& trace0,
                                               const Matrix& p1);

/// Exact boundary algebra derived from (WB, WC): the stacked matrix WBC,
/// the quadratic-form matrix P = WBC^-* R0^* Sigma R0 WBC^-1 and its norm.
struct BoundaryAlgebra {
  Matrix R0;      // 2n x 2n
  Matrix Sigma;   // [[0, I], [I, 0]]
  Matrix WBC;     // [[WB], [WC]]
  Matrix P;       // Hermitian
  double norm_P = 0.0;
};

/// Fails with "boundary matrices not complementary" when WBC is singular
/// (the invertibility hypothesis on WBC is violated).
BoundaryAlgebra build_boundary_algebra(const PortHamiltonianSystem& sys,
                                       const Tolerances& tol = default_tolerances());

/// Both sides of the continuous power balance: for a classical state,
///   <Ax,x>_X + <x,Ax>_X = boundary_term + dissipation_term,
/// with boundary_term = (w1^* P1 w1 - w0^* P1 w0)/2 on the traces w = Hx and
/// dissipation_term = Re int_0^1 (Hx)^* G0 (Hx) dzeta by composite Simpson
/// quadrature. The energy inner product carries the factor 1/2.
struct PowerBalanceTerms {
  double boundary = 0.0;
  double dissipation = 0.0;
  double total() const { return boundary + dissipation; }
};

PowerBalanceTerms power_balance_terms(const PortHamiltonianSystem& sys,
                                      const GridFunction& state,
                                      const Vector& trace1, const Vector& trace0);

/// G0 = skew + re with skew^* = -skew and re^* = re (re = (G0+G0^*)/2).
struct G0Split {
  Matrix skew_part;
  Matrix re_part;
};

G0Split split_g0(const Matrix& g0);
inline G0Split split_g0(const PortHamiltonianSystem& sys) { return split_g0(sys.G0); }

}  // namespace phs
