#pragma once

#include <vector>

#include "phs/common.hpp"

namespace phs {

/// Matrix-valued function of zeta in [0,1] with polynomial entries, stored as
/// coefficient matrices in ascending degree. A degree-0 field is a constant
/// matrix. When constructed with `hamiltonian = true` the field is certified
/// Hermitian and uniformly positive definite on a sample grid (grid nodes
/// plus midpoints), witnessing H, H^-1 in L^inf.
class MatrixField {
 public:
  MatrixField() = default;

  explicit MatrixField(std::vector<Matrix> coefficients);

  static MatrixField constant(const Matrix& value) {
    return MatrixField({value});
  }
  static MatrixField identity(Eigen::Index n) {
    return MatrixField({Matrix::Identity(n, n)});
  }

  Eigen::Index dim() const { return n_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Matrix>& coefficients() const { return coeffs_; }

  /// Horner evaluation at zeta.
  Matrix operator()(double zeta) const;

  /// Exact derivative field (one degree lower; constant fields give 0).
  MatrixField derivative() const;

  bool is_constant() const;

  /// Certifies Hermitian positive definiteness on `samples` grid points plus
  /// midpoints: every evaluation Hermitian within tol_herm and smallest
  /// eigenvalue >= eps_hamiltonian. Throws ValidationError otherwise.
  /// Returns the infimum of the sampled smallest eigenvalues.
  double certify_hamiltonian(int samples,
                             const Tolerances& tol = default_tolerances()) const;

 private:
  Eigen::Index n_ = 0;
  std::vector<Matrix> coeffs_;
};

}  // namespace phs
