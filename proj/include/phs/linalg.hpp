#pragma once

#include "phs/common.hpp"

namespace phs {

/// Change of coordinates induced by a Hermitian positive-definite mass
/// matrix M = R^* R (R the upper Cholesky factor). In x_bar = R x the M
/// inner product becomes the standard one; operators map as
/// A_bar = R A R^-1, observation as C_bar = C R^-1.
class StandardCoordinates {
 public:
  explicit StandardCoordinates(const Matrix& mass);

  const Matrix& factor() const { return r_; }
  Matrix to_standard(const Matrix& op) const;            // R op R^-1
  Matrix observation_to_standard(const Matrix& c) const; // C R^-1
  Matrix form_to_standard(const Matrix& l) const;        // R^-* L_form R^-1
  /// Operator representation in original coordinates of a Hermitian matrix
  /// given in standard coordinates: R^-1 L_bar R.
  Matrix operator_from_standard(const Matrix& lbar) const;

 private:
  Matrix r_;       // upper triangular, M = r^* r
  Matrix r_inv_;
};

/// Largest real part of the spectrum. Throws NumericsError when the
/// eigensolver does not converge.
double spectral_abscissa(const Matrix& a);

/// Solves A^* X + X A = -W for Hermitian W by complex Bartels-Stewart
/// (Schur reduction, forward column substitution). Requires that no two
/// eigenvalues satisfy conj(lambda_i) + lambda_j = 0; in particular any
/// Hurwitz A is fine. The result is Hermitized.
Matrix solve_lyapunov(const Matrix& a, const Matrix& w);

/// e^(A h) via scaling and squaring (Pade), Eigen MatrixFunctions.
Matrix matrix_exponential(const Matrix& a);

}  // namespace phs
