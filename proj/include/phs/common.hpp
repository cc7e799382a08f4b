#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when a constructed object violates one of its documented
/// invariants. The message names the violated invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a numerical routine cannot proceed (solver breakdown,
/// step-size underflow, non-convergence).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// Global tolerance knobs. Defaults are double-precision desk-scale values;
/// every entry can be overridden from a run configuration.
struct Tolerances {
  double eps_inv = 1e-10;     // relative smallest singular value for invertibility
  double tol_herm = 1e-12;    // Hermitian deviation
  double eps_hamiltonian = 1e-8;  // smallest eigenvalue of H(zeta) on the sample grid
  double tol_diag = 1e-9;     // reconstruction error of S^-1 Delta S
  double eps_delta = 1e-8;    // eigenvalue-collision threshold for Delta
  double eps_stab = 1e-8;     // spectral-abscissa margin separating marginal from stable
  double eps_obs_rel = 1e-6;  // exact-observability threshold, relative to adm_m
  double eps_approx = 1e-9;   // approximate-observability threshold, relative to adm_m
  double eps_ht = 1e-8;       // Hautus scan pass threshold on the mesh infimum
  double tol_ode = 1e-8;      // adaptive integrator local error tolerance
  int eig_cap = 4000;         // largest dimension for dense eigen decompositions
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

inline bool is_hermitian(const Matrix& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

/// Relative smallest singular value; 0 for the zero matrix.
inline double relative_min_singular_value(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

inline double smallest_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double largest_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(hermitian),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

inline double spectral_norm(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace phs
