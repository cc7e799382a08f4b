#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phs/discretization.hpp"
#include "phs/observability.hpp"

namespace phs {

/// Rectangular scan region in the open left half-plane.
struct HautusRegion {
  double re_min = -3.0;
  double re_max = -0.05;   // must stay < 0
  double im_max = 4.0;     // Im in [-im_max, im_max]
  int re_points = 60;
  int im_points = 120;
  /// Geometric spacing of Re toward 0^- (where the test is hardest);
  /// uniform spacing when false.
  bool geometric_re = true;
};

/// Mesh of Hautus-test values m(s). The infimum is a mesh infimum: it
/// supports or falsifies (HT) at the scanned points, it does not decide the
/// infimum over the continuum.
struct HautusScan {
  std::vector<Complex> points;
  std::vector<double> values;
  double mesh_infimum = std::numeric_limits<double>::infinity();
  Complex argmin{0, 0};
  std::optional<double> alpha;  // half-plane threshold, when a pipeline provides one
  bool pass = false;            // mesh_infimum >= eps_ht
  int re_points = 0;
  int im_points = 0;
};

/// Best constant at a single point of the open left half-plane:
///   m(s) = lambda_min( (conj(s) I - A^*)(s I - A) + |Re s| C^* C ) / (Re s)^2
/// in standard coordinates of the M inner product.
double hautus_value(Complex s, const Matrix& a, const Matrix& c, const Matrix& m);

/// Same, with the standard-coordinate operators prepared once.
double hautus_value_std(Complex s, const Matrix& a_std, const Matrix& cc_std);

HautusScan hautus_scan(const Matrix& a, const Matrix& c, const Matrix& m,
                       const HautusRegion& region,
                       const Tolerances& tol = default_tolerances());

/// alpha = sqrt(2 |L| / delta) |G| with spectral norms taken in the M inner
/// product; for Re s < -alpha the perturbed pair (A+G, C) keeps a positive
/// Hautus constant (about delta/4 of the unperturbed certificate).
double shifted_halfplane_bound(const Matrix& l, double delta, const Matrix& g,
                               const Matrix& m);

/// Composite certificate run backing the approximate-observability theorem
/// on a discretized instance: stability of A, stability of the comparison
/// system with G0 replaced by its skew part, its infinite-time Gramian, the
/// half-plane threshold alpha, and scans of the far half-plane plus the near
/// strip. Hypothesis failures are recorded per stage; later independent
/// stages still run.
struct Theorem2Report {
  bool wbc_invertible = false;
  double norm_P = 0.0;
  bool a_stable = false;
  double abscissa_a = 0.0;
  bool comparison_stable = false;
  double abscissa_comparison = 0.0;
  bool gramian_ok = false;
  double delta = 0.0;
  double gramian_norm = 0.0;
  double lyapunov_residual = 0.0;
  double alpha = 0.0;
  double perturbation_norm = 0.0;
  std::optional<HautusScan> far_scan;
  std::optional<HautusScan> near_scan;
  double m_star = std::numeric_limits<double>::infinity();
  bool hautus_pass = false;
  bool approx_observable_gramian = false;
  std::vector<std::string> warnings;

  bool all_stages_pass() const {
    return wbc_invertible && a_stable && comparison_stable && gramian_ok &&
           hautus_pass;
  }
};

Theorem2Report theorem2_pipeline(const PortHamiltonianSystem& sys, int cells,
                                 const HautusRegion& region,
                                 Scheme scheme = Scheme::central_staggered,
                                 const Tolerances& tol = default_tolerances());

}  // namespace phs
