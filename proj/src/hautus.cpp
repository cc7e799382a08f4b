#include "phs/hautus.hpp"

#include <cmath>
#include <sstream>

namespace phs {
namespace {

std::vector<double> re_samples(const HautusRegion& region) {
  if (region.re_max >= 0) throw ValidationError("Hautus region must satisfy Re s < 0");
  if (region.re_min > region.re_max) throw ValidationError("Hautus region is empty");
  if (region.re_points < 1 || region.im_points < 1) {
    throw ValidationError("Hautus region is empty");
  }
  std::vector<double> re(region.re_points);
  if (region.re_points == 1) {
    re[0] = region.re_min;
    return re;
  }
  if (region.geometric_re) {
    // geometric refinement toward Re -> 0^-: log-spaced magnitudes
    const double la = std::log(-region.re_min);
    const double lb = std::log(-region.re_max);
    for (int i = 0; i < region.re_points; ++i) {
      const double t = static_cast<double>(i) / (region.re_points - 1);
      re[i] = -std::exp(la + t * (lb - la));
    }
  } else {
    for (int i = 0; i < region.re_points; ++i) {
      const double t = static_cast<double>(i) / (region.re_points - 1);
      re[i] = region.re_min + t * (region.re_max - region.re_min);
    }
  }
  return re;
}

}  // namespace

double hautus_value_std(Complex s, const Matrix& a_std, const Matrix& cc_std) {
  if (s.real() >= 0) {
    throw ValidationError("Hautus value is defined on the open left half-plane");
  }
  const Eigen::Index m = a_std.rows();
  const Matrix shifted = s * Matrix::Identity(m, m) - a_std;
  const Matrix form =
      shifted.adjoint() * shifted + std::abs(s.real()) * cc_std;
  const double lambda = smallest_eigenvalue(form);
  const double value = lambda / (s.real() * s.real());
  return value > 0 ? value : 0.0;
}

double hautus_value(Complex s, const Matrix& a, const Matrix& c, const Matrix& m) {
  StandardCoordinates coords(m);
  const Matrix abar = coords.to_standard(a);
  const Matrix cbar = coords.observation_to_standard(c);
  return hautus_value_std(s, abar, cbar.adjoint() * cbar);
}

HautusScan hautus_scan(const Matrix& a, const Matrix& c, const Matrix& m,
                       const HautusRegion& region, const Tolerances& tol) {
  StandardCoordinates coords(m);
  const Matrix abar = coords.to_standard(a);
  const Matrix cbar = coords.observation_to_standard(c);
  const Matrix cc = cbar.adjoint() * cbar;

  const std::vector<double> re = re_samples(region);
  HautusScan scan;
  scan.re_points = region.re_points;
  scan.im_points = region.im_points;
  scan.points.reserve(re.size() * region.im_points);
  scan.values.reserve(re.size() * region.im_points);
  for (double r : re) {
    for (int j = 0; j < region.im_points; ++j) {
      const double t = region.im_points == 1
                           ? 0.5
                           : static_cast<double>(j) / (region.im_points - 1);
      const double w = -region.im_max + t * 2 * region.im_max;
      const Complex s(r, w);
      const double value = hautus_value_std(s, abar, cc);
      scan.points.push_back(s);
      scan.values.push_back(value);
      if (value < scan.mesh_infimum) {
        scan.mesh_infimum = value;
        scan.argmin = s;
      }
    }
  }
  scan.pass = scan.mesh_infimum >= tol.eps_ht;
  return scan;
}

double shifted_halfplane_bound(const Matrix& l, double delta, const Matrix& g,
                               const Matrix& m) {
  if (delta <= 0) {
    throw ValidationError("shifted half-plane bound needs a coercive certificate (delta > 0)");
  }
  StandardCoordinates coords(m);
  const double norm_l = spectral_norm(hermitize(coords.to_standard(l)));
  const double norm_g = spectral_norm(coords.to_standard(g));
  return std::sqrt(2.0 * norm_l / delta) * norm_g;
}

Theorem2Report theorem2_pipeline(const PortHamiltonianSystem& sys, int cells,
                                 const HautusRegion& region, Scheme scheme,
                                 const Tolerances& tol) {
  Theorem2Report report;

  try {
    build_boundary_algebra(sys, tol);
    report.wbc_invertible = true;
    report.norm_P = build_boundary_algebra(sys, tol).norm_P;
  } catch (const ValidationError& e) {
    report.warnings.emplace_back(std::string("stage 0: ") + e.what());
  }

  const DiscretizedSystem dsys = discretize(sys, cells, scheme, tol);
  StandardCoordinates coords(dsys.M);
  const Matrix abar = coords.to_standard(dsys.A);
  report.abscissa_a = spectral_abscissa(abar);
  report.a_stable = report.abscissa_a <= -tol.eps_stab;
  if (!report.a_stable) {
    report.warnings.emplace_back("stage 1: discretized A is not exponentially stable");
  }

  // Comparison system: G0 replaced by its skew part.
  PortHamiltonianSystem comparison = sys;
  comparison.G0 = split_g0(sys.G0).skew_part;
  const DiscretizedSystem dcomp = discretize(comparison, cells, scheme, tol);
  report.abscissa_comparison =
      spectral_abscissa(StandardCoordinates(dcomp.M).to_standard(dcomp.A));
  report.comparison_stable = report.abscissa_comparison <= -tol.eps_stab;
  if (!report.comparison_stable) {
    report.warnings.emplace_back(
        "stage 2: comparison system (skew G0) is not exponentially stable");
  }

  Matrix certificate;
  if (report.comparison_stable) {
    try {
      const ObservabilityReport gram =
          gramian_infinite(dcomp.A, dcomp.C, dcomp.M, tol);
      report.delta = gram.delta;
      report.gramian_norm = gram.adm_m;
      report.lyapunov_residual = gram.lyapunov_residual;
      report.gramian_ok = gram.delta > 0;
      certificate = gram.gramian;
      if (!report.gramian_ok) {
        report.warnings.emplace_back("stage 3: comparison Gramian is not coercive");
      }
    } catch (const std::exception& e) {
      report.warnings.emplace_back(std::string("stage 3: ") + e.what());
    }
  } else {
    report.warnings.emplace_back("stage 3 skipped: comparison system unstable");
  }

  // Perturbation G = (Re G0) H as a multiplication operator, reduced the same
  // way as A so norms live in the same metric.
  const Matrix re_g0 = split_g0(sys.G0).re_part;
  {
    const Eigen::Index n = sys.n;
    const int nodes = dsys.grid.nodes();
    Matrix g_full = Matrix::Zero(n * nodes, n * nodes);
    Matrix m_full = Matrix::Zero(n * nodes, n * nodes);
    const RealVector tw = trapezoid_weights(dsys.grid);
    for (int k = 0; k < nodes; ++k) {
      const Matrix h = sys.H(dsys.grid.node(k));
      g_full.block(k * n, k * n, n, n) = re_g0 * h;
      m_full.block(k * n, k * n, n, n) = 0.5 * tw(k) * h;
    }
    const Matrix g_reduced =
        dsys.M.llt().solve(dsys.embed.adjoint() * (m_full * (g_full * dsys.embed)));
    report.perturbation_norm = spectral_norm(coords.to_standard(g_reduced));
    if (report.gramian_ok && report.delta > 0) {
      report.alpha = shifted_halfplane_bound(certificate, report.delta, g_reduced,
                                             dsys.M);
    }
  }

  // Scans of the perturbed (original) pair: far half-plane Re s < -alpha and
  // the near strip [-alpha, 0).
  const double cut = -report.alpha;
  if (region.re_min < cut) {
    HautusRegion far = region;
    far.re_max = std::min(region.re_max, cut - 1e-9);
    report.far_scan = hautus_scan(dsys.A, dsys.C, dsys.M, far, tol);
    report.m_star = std::min(report.m_star, report.far_scan->mesh_infimum);
    report.far_scan->alpha = report.alpha;
  }
  if (report.alpha > 0 && region.re_max > cut) {
    HautusRegion near = region;
    near.re_min = std::max(region.re_min, cut);
    report.near_scan = hautus_scan(dsys.A, dsys.C, dsys.M, near, tol);
    report.m_star = std::min(report.m_star, report.near_scan->mesh_infimum);
    report.near_scan->alpha = report.alpha;
  }
  if (!report.far_scan && !report.near_scan) {
    report.warnings.emplace_back("stage 5: scan region is empty");
    report.m_star = 0.0;
  }
  report.hautus_pass = report.m_star >= tol.eps_ht;

  // Cross-check: the Gramian verdict of the perturbed pair itself.
  if (report.a_stable) {
    try {
      const ObservabilityReport gram = gramian_infinite(dsys.A, dsys.C, dsys.M, tol);
      report.approx_observable_gramian = approx_observability_verdict(gram, tol);
    } catch (const std::exception& e) {
      report.warnings.emplace_back(std::string("stage 6: ") + e.what());
    }
  }
  return report;
}

}  // namespace phs
