#include "phs/system.hpp"

#include <cmath>
#include <sstream>

namespace phs {

void PortHamiltonianSystem::validate(int h_samples, const Tolerances& tol) const {
  if (n <= 0) throw ValidationError("state dimension must be positive");
  if (P1.rows() != n || P1.cols() != n) throw ValidationError("P1 must be n x n");
  if (G0.rows() != n || G0.cols() != n) throw ValidationError("G0 must be n x n");
  if (H.dim() != n) throw ValidationError("H must be an n x n field");
  if (!is_hermitian(P1, tol.tol_herm)) throw ValidationError("P1 is not Hermitian");
  if (relative_min_singular_value(P1) < tol.eps_inv) {
    throw ValidationError("P1 is singular");
  }
  if (WB.rows() != n || WB.cols() != 2 * n) throw ValidationError("WB must be n x 2n");
  if (WC.rows() != n || WC.cols() != 2 * n) throw ValidationError("WC must be n x 2n");
  Eigen::ColPivHouseholderQR<Matrix> qr_b(WB.adjoint());
  if (qr_b.rank() < n) throw ValidationError("WB does not have full row rank");
  Eigen::ColPivHouseholderQR<Matrix> qr_c(WC.adjoint());
  if (qr_c.rank() < n) throw ValidationError("WC does not have full row rank");
  H.certify_hamiltonian(h_samples, tol);
}

Matrix build_r0(const Matrix& p1, const Tolerances& tol) {
  const Eigen::Index n = p1.rows();
  if (p1.cols() != n) throw ValidationError("P1 must be square");
  if (!is_hermitian(p1, tol.tol_herm)) throw ValidationError("P1 is not Hermitian");
  if (relative_min_singular_value(p1) < tol.eps_inv) {
    throw ValidationError("P1 is singular");
  }
  Matrix r0(2 * n, 2 * n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  r0.topLeftCorner(n, n) = p1;
  r0.topRightCorner(n, n) = -p1;
  r0.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  r0.bottomRightCorner(n, n) = Matrix::Identity(n, n);
  return inv_sqrt2 * r0;
}

std::pair<Vector, Vector> boundary_effort_flow(const Vector& trace1,
                                               const Vector& trace0,
                                               const Matrix& p1) {
  const Eigen::Index n = p1.rows();
  if (trace1.size() != n || trace0.size() != n) {
    throw ValidationError("boundary traces must have length n");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector flow = inv_sqrt2 * (p1 * trace1 - p1 * trace0);
  Vector effort = inv_sqrt2 * (trace1 + trace0);
  return {std::move(flow), std::move(effort)};
}

BoundaryAlgebra build_boundary_algebra(const PortHamiltonianSystem& sys,
                                       const Tolerances& tol) {
  BoundaryAlgebra alg;
  alg.R0 = build_r0(sys.P1, tol);
  alg.Sigma = sigma_swap(sys.n);
  alg.WBC = Matrix(2 * sys.n, 2 * sys.n);
  alg.WBC.topRows(sys.n) = sys.WB;
  alg.WBC.bottomRows(sys.n) = sys.WC;
  if (relative_min_singular_value(alg.WBC) < tol.eps_inv) {
    throw ValidationError(
        "boundary matrices not complementary: WBC = [WB; WC] is singular");
  }
  const Matrix wbc_inv = alg.WBC.inverse();
  alg.P = hermitize(wbc_inv.adjoint() * alg.R0.adjoint() * alg.Sigma * alg.R0 * wbc_inv);
  alg.norm_P = spectral_norm(alg.P);
  return alg;
}

PowerBalanceTerms power_balance_terms(const PortHamiltonianSystem& sys,
                                      const GridFunction& state,
                                      const Vector& trace1, const Vector& trace0) {
  if (state.dim() != sys.n) throw ValidationError("state dimension mismatch");
  if (trace1.size() != sys.n || trace0.size() != sys.n) {
    throw ValidationError("trace dimension mismatch");
  }
  PowerBalanceTerms terms;
  terms.boundary = 0.5 * ((trace1.adjoint() * sys.P1 * trace1).value().real() -
                          (trace0.adjoint() * sys.P1 * trace0).value().real());
  const RealVector w = simpson_weights(state.grid);
  double diss = 0.0;
  for (int k = 0; k < state.grid.nodes(); ++k) {
    const Vector hx = sys.H(state.grid.node(k)) * state.at(k);
    diss += w(k) * (hx.adjoint() * sys.G0 * hx).value().real();
  }
  terms.dissipation = diss;
  return terms;
}

G0Split split_g0(const Matrix& g0) {
  G0Split s;
  s.re_part = 0.5 * (g0 + g0.adjoint());
  s.skew_part = 0.5 * (g0 - g0.adjoint());
  return s;
}

}  // namespace phs
