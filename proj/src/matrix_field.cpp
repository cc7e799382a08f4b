#include "phs/matrix_field.hpp"

#include <sstream>

namespace phs {

MatrixField::MatrixField(std::vector<Matrix> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw ValidationError("matrix field needs at least one coefficient");
  n_ = coeffs_.front().rows();
  for (const auto& c : coeffs_) {
    if (c.rows() != n_ || c.cols() != n_) {
      throw ValidationError("matrix field coefficients must be square and of equal size");
    }
  }
}

Matrix MatrixField::operator()(double zeta) const {
  Matrix value = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    value = zeta * value + *it;
  }
  return value;
}

MatrixField MatrixField::derivative() const {
  if (coeffs_.size() == 1) {
    return MatrixField({Matrix::Zero(n_, n_)});
  }
  std::vector<Matrix> d;
  d.reserve(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d.push_back(static_cast<double>(k) * coeffs_[k]);
  }
  return MatrixField(std::move(d));
}

bool MatrixField::is_constant() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (coeffs_[k].cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

double MatrixField::certify_hamiltonian(int samples, const Tolerances& tol) const {
  if (samples < 2) samples = 2;
  double inf_eig = std::numeric_limits<double>::infinity();
  // grid nodes plus midpoints
  const int pts = 2 * samples + 1;
  for (int i = 0; i < pts; ++i) {
    const double zeta = static_cast<double>(i) / (pts - 1);
    const Matrix h = (*this)(zeta);
    if (!is_hermitian(h, tol.tol_herm)) {
      std::ostringstream msg;
      msg << "hamiltonian field not Hermitian at zeta=" << zeta;
      throw ValidationError(msg.str());
    }
    inf_eig = std::min(inf_eig, smallest_eigenvalue(h));
  }
  if (inf_eig < tol.eps_hamiltonian) {
    std::ostringstream msg;
    msg << "hamiltonian field not uniformly positive definite: sampled min eigenvalue "
        << inf_eig << " < " << tol.eps_hamiltonian;
    throw ValidationError(msg.str());
  }
  return inf_eig;
}

}  // namespace phs
