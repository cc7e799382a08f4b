#include "phs/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace phs {

StandardCoordinates::StandardCoordinates(const Matrix& mass) {
  if (!is_hermitian(mass, 1e-10 * (1.0 + mass.cwiseAbs().maxCoeff()))) {
    throw ValidationError("mass matrix is not Hermitian");
  }
  Eigen::LLT<Matrix> llt(hermitize(mass));
  if (llt.info() != Eigen::Success) {
    throw ValidationError("mass matrix is not positive definite");
  }
  r_ = llt.matrixU();
  r_inv_ = r_.triangularView<Eigen::Upper>().solve(
      Matrix::Identity(r_.rows(), r_.cols()));
}

Matrix StandardCoordinates::to_standard(const Matrix& op) const {
  return r_ * op * r_inv_;
}

Matrix StandardCoordinates::observation_to_standard(const Matrix& c) const {
  return c * r_inv_;
}

Matrix StandardCoordinates::form_to_standard(const Matrix& l) const {
  return r_inv_.adjoint() * l * r_inv_;
}

Matrix StandardCoordinates::operator_from_standard(const Matrix& lbar) const {
  return r_inv_ * lbar * r_;
}

double spectral_abscissa(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericsError("eigenvalue solver did not converge");
  }
  return es.eigenvalues().real().maxCoeff();
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& w) {
  const Eigen::Index m = a.rows();
  if (a.cols() != m || w.rows() != m || w.cols() != m) {
    throw ValidationError("lyapunov solve needs square matrices of equal size");
  }
  Eigen::ComplexSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw NumericsError("Schur decomposition did not converge");
  }
  const Matrix& u = schur.matrixU();
  const Matrix& t = schur.matrixT();  // upper triangular
  const Matrix v = u.adjoint() * w * u;

  // T^* Y + Y T = -V, column by column: (T^* + T_jj I) y_j = -v_j - Y_(:,<j) T_(<j,j)
  Matrix y = Matrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Vector rhs = -v.col(j);
    if (j > 0) rhs.noalias() -= y.leftCols(j) * t.block(0, j, j, 1);
    Matrix lower = t.adjoint();
    lower.diagonal().array() += t(j, j);
    y.col(j) = lower.triangularView<Eigen::Lower>().solve(rhs);
  }
  return hermitize(u * y * u.adjoint());
}

Matrix matrix_exponential(const Matrix& a) { return a.exp(); }

}  // namespace phs
