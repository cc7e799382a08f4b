#include "phs/discretization.hpp"

#include <cmath>
#include <sstream>

namespace phs {
namespace {

Matrix matrix_sqrt_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h));
  return es.eigenvectors() *
         es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Fixes the phase of each column so its largest-modulus entry is real
// positive; deterministic gauge for the first node.
void gauge_columns(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    Eigen::Index imax = 0;
    v.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = v(imax, j);
    if (std::abs(pivot) > 0) v.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
}

// Aligns the phase of each column of `v` with the matching column of `prev`.
void align_phases(const Matrix& prev, Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const Complex overlap = prev.col(j).dot(v.col(j));
    if (std::abs(overlap) > 1e-12) {
      v.col(j) *= std::conj(overlap) / std::abs(overlap);
    }
  }
}

// First-order difference matrices on N+1 nodes; forward rows fall back to
// backward at the last node and vice versa.
Eigen::MatrixXd forward_diff(int cells) {
  const double h = 1.0 / cells;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(cells + 1, cells + 1);
  for (int k = 0; k < cells; ++k) {
    d(k, k) = -1.0 / h;
    d(k, k + 1) = 1.0 / h;
  }
  d(cells, cells - 1) = -1.0 / h;
  d(cells, cells) = 1.0 / h;
  return d;
}

Eigen::MatrixXd backward_diff(int cells) {
  const double h = 1.0 / cells;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(cells + 1, cells + 1);
  for (int k = 1; k <= cells; ++k) {
    d(k, k - 1) = -1.0 / h;
    d(k, k) = 1.0 / h;
  }
  d(0, 0) = -1.0 / h;
  d(0, 1) = 1.0 / h;
  return d;
}

// Second-order summation-by-parts first derivative: centered in the
// interior, one-sided at the ends; together with the trapezoid weights it
// satisfies w^T(HD + D^T H)w = w_N^2 - w_0^2.
Eigen::MatrixXd sbp_diff(int cells) {
  const double h = 1.0 / cells;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(cells + 1, cells + 1);
  d(0, 0) = -1.0 / h;
  d(0, 1) = 1.0 / h;
  d(cells, cells - 1) = -1.0 / h;
  d(cells, cells) = 1.0 / h;
  for (int k = 1; k < cells; ++k) {
    d(k, k - 1) = -0.5 / h;
    d(k, k + 1) = 0.5 / h;
  }
  return d;
}

struct TraceElimination {
  Matrix T;  // 2n x n, tau = T tau_keep, WB T = 0
  std::vector<Eigen::Index> kept;  // indices of tau components kept as unknowns
};

// Column-pivoted elimination of the n constraints WB tau = 0: the n best
// pivoted trace components are expressed through the remaining n.
TraceElimination eliminate_traces(const Matrix& wb, const Tolerances& tol) {
  const Eigen::Index n = wb.rows();
  Eigen::ColPivHouseholderQR<Matrix> qr(wb);
  if (qr.rank() < n) {
    throw ValidationError("W_B does not determine inflow traces");
  }
  const Matrix r = qr.matrixR().template triangularView<Eigen::Upper>();
  const Matrix r11 = r.topLeftCorner(n, n);
  const Matrix r12 = r.topRightCorner(n, n);
  if (relative_min_singular_value(r11) < tol.eps_inv) {
    throw ValidationError("W_B does not determine inflow traces");
  }
  Matrix t_perm(2 * n, n);
  t_perm.topRows(n) = -r11.triangularView<Eigen::Upper>().solve(r12);
  t_perm.bottomRows(n) = Matrix::Identity(n, n);
  TraceElimination elim;
  elim.T = qr.colsPermutation() * t_perm;
  const auto& perm = qr.colsPermutation().indices();
  elim.kept.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) elim.kept[i] = perm(n + i);
  return elim;
}

}  // namespace

Diagonalization smooth_diagonalization(const PortHamiltonianSystem& sys,
                                       const Grid& grid, const Tolerances& tol) {
  Diagonalization diag;
  diag.grid = grid;
  const int nodes = grid.nodes();
  diag.S.resize(nodes);
  diag.S_inv.resize(nodes);
  diag.delta.resize(nodes);
  diag.alpha.resize(nodes);

  for (int k = 0; k < nodes; ++k) {
    const Matrix h = sys.H(grid.node(k));
    const Matrix h_half = matrix_sqrt_hermitian(h);
    // H^1/2 P1 H^1/2 is Hermitian and similar to P1 H, so the eigenvalues
    // are real; eigenvectors of P1 H are H^-1/2 times the orthonormal ones.
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(h_half * sys.P1 * h_half));
    if (es.info() != Eigen::Success) {
      throw NumericsError("eigenvalue solver did not converge in diagonalization");
    }
    const RealVector lambda = es.eigenvalues();  // ascending
    for (Eigen::Index i = 0; i + 1 < lambda.size(); ++i) {
      if (lambda(i + 1) - lambda(i) < tol.eps_delta) {
        std::ostringstream msg;
        msg << "non-smooth diagonalization: eigenvalues of P1*H collide at zeta="
            << grid.node(k);
        throw ValidationError(msg.str());
      }
    }
    if (lambda.cwiseAbs().minCoeff() < tol.eps_delta) {
      throw ValidationError("non-smooth diagonalization: P1*H numerically singular");
    }
    Matrix vectors = h_half.inverse() * es.eigenvectors();  // columns of S^-1
    if (k == 0) {
      gauge_columns(vectors);
    } else {
      align_phases(diag.S_inv[k - 1], vectors);
    }
    diag.delta[k] = lambda;
    diag.alpha[k] = lambda.cwiseInverse();
    diag.S_inv[k] = vectors;
    diag.S[k] = vectors.inverse();
  }

  double recon = 0.0;
  double lip = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const Matrix b = sys.P1 * sys.H(grid.node(k));
    recon = std::max(recon, (b - diag.S_inv[k] * diag.delta_matrix(k) * diag.S[k])
                                .cwiseAbs()
                                .maxCoeff());
    if (k > 0) {
      lip = std::max(lip, spectral_norm(diag.S[k] - diag.S[k - 1]) / grid.spacing());
    }
  }
  diag.reconstruction_error = recon;
  diag.continuity_bound = lip;
  if (recon > tol.tol_diag) {
    std::ostringstream msg;
    msg << "diagonalization reconstruction error " << recon << " exceeds "
        << tol.tol_diag;
    throw NumericsError(msg.str());
  }
  return diag;
}

const std::vector<Matrix>& compute_q(Diagonalization& diag,
                                     const PortHamiltonianSystem& sys) {
  const Grid& grid = diag.grid;
  const int nodes = grid.nodes();
  const double h = grid.spacing();
  std::vector<Matrix> s_adj_inv(nodes);
  for (int k = 0; k < nodes; ++k) s_adj_inv[k] = diag.S_inv[k].adjoint();
  diag.q.resize(nodes);
  for (int k = 0; k < nodes; ++k) {
    Matrix ds;  // (S^-*)'(zeta_k)
    if (k == 0) {
      ds = (s_adj_inv[1] - s_adj_inv[0]) / h;
    } else if (k == nodes - 1) {
      ds = (s_adj_inv[k] - s_adj_inv[k - 1]) / h;
    } else {
      ds = (s_adj_inv[k + 1] - s_adj_inv[k - 1]) / (2 * h);
    }
    const Matrix s_adj = diag.S[k].adjoint();
    const Matrix delta_inv =
        diag.alpha[k].cast<Complex>().asDiagonal().toDenseMatrix();
    diag.q[k] = -delta_inv * s_adj_inv[k] * sys.H(grid.node(k)) * sys.G0 * s_adj +
                ds * s_adj;
  }
  return diag.q;
}

GrowthConstants growth_constants(const Diagonalization& diag) {
  if (diag.q.empty()) {
    throw ValidationError("growth_constants needs compute_q to have run");
  }
  GrowthConstants gc;
  for (std::size_t k = 0; k < diag.q.size(); ++k) {
    gc.c0 = std::max(gc.c0, 2.0 * diag.alpha[k].cwiseAbs().maxCoeff());
    gc.c1 = std::max(gc.c1, 2.0 * spectral_norm(diag.q[k]));
  }
  return gc;
}

GridFunction DiscretizedSystem::to_grid_function(const Vector& z) const {
  const Vector full = embed * z;
  Matrix values(parent.n, grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    values.col(k) = full.segment(k * parent.n, parent.n);
  }
  return GridFunction(grid, std::move(values));
}

Vector DiscretizedSystem::restrict(const Vector& full) const {
  const Eigen::Index n = parent.n;
  const int cells = grid.cells();
  Vector z(dim());
  z.head(n * (cells - 1)) = full.segment(n, n * (cells - 1));
  // stacked trace [w(1); w(0)] of the full vector
  Vector tau(2 * n);
  tau.head(n) = parent.H(1.0) * full.tail(n);
  tau.tail(n) = parent.H(0.0) * full.head(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(n * (cells - 1) + i) = tau(kept_trace_indices[i]);
  }
  return z;
}

DiscretizedSystem discretize(const PortHamiltonianSystem& sys, int cells,
                             Scheme scheme, const Tolerances& tol) {
  sys.validate(std::max(cells, 8), tol);
  DiscretizedSystem dsys;
  dsys.parent = sys;
  dsys.grid = Grid(cells);
  dsys.scheme = scheme;
  const Grid& grid = dsys.grid;
  const Eigen::Index n = sys.n;
  const int nodes = grid.nodes();
  const Eigen::Index m_full = n * nodes;

  std::vector<Matrix> h_at(nodes);
  for (int k = 0; k < nodes; ++k) h_at[k] = sys.H(grid.node(k));

  // Full nodal operator acting on x: A x = P1 (D w) + G0 w with w_k = H_k x_k.
  Matrix w_of_x = Matrix::Zero(m_full, m_full);
  for (int k = 0; k < nodes; ++k) {
    w_of_x.block(k * n, k * n, n, n) = h_at[k];
  }

  Matrix a_full(m_full, m_full);
  if (scheme == Scheme::central_staggered) {
    const Eigen::MatrixXd d = sbp_diff(cells);
    Matrix dn = Matrix::Zero(m_full, m_full);
    for (int i = 0; i < nodes; ++i) {
      for (int j = 0; j < nodes; ++j) {
        if (d(i, j) != 0.0) {
          dn.block(i * n, j * n, n, n) =
              d(i, j) * Matrix::Identity(n, n).eval();
        }
      }
    }
    Matrix p1_blocks = Matrix::Zero(m_full, m_full);
    Matrix g0_blocks = Matrix::Zero(m_full, m_full);
    for (int k = 0; k < nodes; ++k) {
      p1_blocks.block(k * n, k * n, n, n) = sys.P1;
      g0_blocks.block(k * n, k * n, n, n) = sys.G0;
    }
    a_full = (p1_blocks * dn + g0_blocks) * w_of_x;
  } else {
    // Characteristic flux splitting: P1 H x' = S^-1 Delta S x'; the positive
    // part of Delta differences (Sx) forward (inflow from the right), the
    // negative part backward. Zeroth-order corrections restore consistency
    // with P1 (Hx)' when S or H vary.
    Diagonalization diag = smooth_diagonalization(sys, grid, tol);
    const Eigen::MatrixXd df = forward_diff(cells);
    const Eigen::MatrixXd db = backward_diff(cells);
    const MatrixField h_prime = sys.H.derivative();
    Matrix s_stack = Matrix::Zero(m_full, m_full);
    for (int k = 0; k < nodes; ++k) s_stack.block(k * n, k * n, n, n) = diag.S[k];
    Matrix split = Matrix::Zero(m_full, m_full);
    for (int i = 0; i < nodes; ++i) {
      RealVector plus = diag.delta[i].cwiseMax(0.0);
      RealVector minus = diag.delta[i].cwiseMin(0.0);
      for (int j = 0; j < nodes; ++j) {
        Matrix blk = Matrix::Zero(n, n);
        if (df(i, j) != 0.0) blk += df(i, j) * plus.cast<Complex>().asDiagonal().toDenseMatrix();
        if (db(i, j) != 0.0) blk += db(i, j) * minus.cast<Complex>().asDiagonal().toDenseMatrix();
        if (blk.cwiseAbs().maxCoeff() != 0.0) {
          split.block(i * n, j * n, n, n) = diag.S_inv[i] * blk;
        }
      }
    }
    a_full = split * s_stack;
    for (int k = 0; k < nodes; ++k) {
      Matrix s_prime;
      if (k == 0) {
        s_prime = (diag.S[1] - diag.S[0]) / grid.spacing();
      } else if (k == nodes - 1) {
        s_prime = (diag.S[k] - diag.S[k - 1]) / grid.spacing();
      } else {
        s_prime = (diag.S[k + 1] - diag.S[k - 1]) / (2 * grid.spacing());
      }
      const Matrix correction =
          -diag.S_inv[k] * diag.delta_matrix(k) * s_prime +
          sys.P1 * h_prime(grid.node(k)) + sys.G0 * h_at[k];
      a_full.block(k * n, k * n, n, n) += correction;
    }
  }

  // Mass: M = 1/2 * trapezoid weights (x) H(zeta_k); encodes <.,.>_X.
  const RealVector tw = trapezoid_weights(grid);
  Matrix m_mass = Matrix::Zero(m_full, m_full);
  for (int k = 0; k < nodes; ++k) {
    m_mass.block(k * n, k * n, n, n) = 0.5 * tw(k) * h_at[k];
  }

  // Boundary elimination: tau = [w(1); w(0)] = Hb [x_N; x_0]; WB tau = 0.
  const TraceElimination elim = eliminate_traces(sys.WB, tol);
  Matrix hb = Matrix::Zero(2 * n, 2 * n);
  hb.topLeftCorner(n, n) = h_at[nodes - 1];
  hb.bottomRightCorner(n, n) = h_at[0];
  const Matrix boundary_of_keep = hb.partialPivLu().solve(elim.T);  // [x_N; x_0]

  const Eigen::Index m = n * cells;
  Matrix embed = Matrix::Zero(m_full, m);
  embed.block(n, 0, n * (cells - 1), n * (cells - 1)) =
      Matrix::Identity(n * (cells - 1), n * (cells - 1));
  embed.block(n * cells, m - n, n, n) = boundary_of_keep.topRows(n);  // x_N
  embed.block(0, m - n, n, n) = boundary_of_keep.bottomRows(n);       // x_0

  // Galerkin reduction on the constraint subspace keeps the power balance
  // exact: M_V z' = E^* M A E z.
  const Matrix m_reduced = hermitize(embed.adjoint() * m_mass * embed);
  Eigen::LLT<Matrix> llt(m_reduced);
  if (llt.info() != Eigen::Success) {
    throw NumericsError("reduced mass matrix is not positive definite");
  }
  dsys.A = llt.solve(embed.adjoint() * (m_mass * (a_full * embed)));
  dsys.M = m_reduced;
  dsys.embed = embed;

  dsys.trace_map = Matrix::Zero(2 * n, m);
  dsys.trace_map.rightCols(n) = elim.T;
  dsys.C = sys.WC * dsys.trace_map;
  dsys.kept_trace_indices = elim.kept;
  return dsys;
}

}  // namespace phs
