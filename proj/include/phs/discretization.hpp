#pragma once

#include <vector>

#include "phs/linalg.hpp"
#include "phs/system.hpp"

namespace phs {

enum class Scheme { central_staggered, upwind };

/// Pointwise diagonalization P1 H(zeta) = S^-1(zeta) Delta(zeta) S(zeta) on
/// the grid nodes, with eigenvalues sorted ascending and eigenvector phases
/// aligned node-to-node so that S varies continuously along the grid.
struct Diagonalization {
  Grid grid{4};
  std::vector<Matrix> S;
  std::vector<Matrix> S_inv;
  std::vector<RealVector> delta;   // eigenvalues of P1 H per node, ascending
  std::vector<RealVector> alpha;   // diagonal of Delta^-1 per node
  std::vector<Matrix> q;           // filled by compute_q
  double reconstruction_error = 0.0;  // max over nodes of |P1 H - S^-1 Delta S|
  double continuity_bound = 0.0;      // reported L_S with |S(k+1)-S(k)| <= L_S dz

  Matrix delta_matrix(int k) const {
    return delta[k].cast<Complex>().asDiagonal();
  }
};

/// Throws ValidationError("non-smooth diagonalization ...") when two
/// eigenvalues of P1 H collide within eps_delta at some node.
Diagonalization smooth_diagonalization(const PortHamiltonianSystem& sys,
                                       const Grid& grid,
                                       const Tolerances& tol = default_tolerances());

/// Q(zeta) = -Delta^-1 S^-* H G0 S^* + (S^-*)' S^*, sampled at the nodes;
/// the derivative uses centered differences on the aligned samples
/// (one-sided at the endpoints). The samples are also stored in diag.q.
const std::vector<Matrix>& compute_q(Diagonalization& diag,
                                     const PortHamiltonianSystem& sys);

/// c0 = 2 max |Delta^-1|, c1 = 2 max |Q|; then
/// 2 max_z |r Delta^-1(z) + Q_w(z)| <= |r| c0 + c1 for all real r, w.
struct GrowthConstants {
  double c0 = 0.0;
  double c1 = 0.0;
};

GrowthConstants growth_constants(const Diagonalization& diag);

/// Energy-consistent finite-dimensional realization on a grid. The reduced
/// state z stacks the interior nodal values and the kept boundary traces;
/// `embed` maps z to the full nodal vector, `trace_map` to the stacked
/// boundary trace [w(1); w(0)] of w = Hx.
struct DiscretizedSystem {
  PortHamiltonianSystem parent;
  Grid grid{4};
  Scheme scheme = Scheme::central_staggered;
  Matrix A;          // m x m
  Matrix C;          // n x m
  Matrix M;          // m x m Hermitian positive definite
  Matrix embed;      // n(N+1) x m
  Matrix trace_map;  // 2n x m
  std::vector<Eigen::Index> kept_trace_indices;

  Eigen::Index dim() const { return A.rows(); }

  /// Full nodal grid function from a reduced state.
  GridFunction to_grid_function(const Vector& z) const;
  /// Reduced state from a full nodal vector (exact when the nodal vector
  /// satisfies the boundary constraint).
  Vector restrict(const Vector& full) const;
  /// Stacked boundary trace [ (Hx)(1); (Hx)(0) ] of a reduced state.
  Vector traces(const Vector& z) const { return trace_map * z; }
  double energy(const Vector& z) const {
    return (z.adjoint() * M * z).value().real();
  }
};

/// Discretizes (P1 d/dzeta + G0) H with the boundary rows eliminated through
/// the n constraints WB [w(1); w(0)] = 0. The central scheme pairs the
/// second-order summation-by-parts derivative with the trapezoid mass so the
/// discrete power balance holds exactly; upwind splits the characteristics
/// of P1 H and differences each one against its inflow side.
DiscretizedSystem discretize(const PortHamiltonianSystem& sys, int cells,
                             Scheme scheme = Scheme::central_staggered,
                             const Tolerances& tol = default_tolerances());

}  // namespace phs
