#include "phs/resolvent.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace phs {
namespace {

class WOde {
 public:
  WOde(const PortHamiltonianSystem& sys, Complex s)
      : sys_(sys), s_(s), p1_lu_(sys.P1) {}

  // F(zeta) with w' = F w
  Matrix coefficient(double zeta) const {
    const Matrix h_inv = sys_.H(zeta).partialPivLu().solve(
        Matrix::Identity(sys_.n, sys_.n));
    return p1_lu_.solve(s_ * h_inv - sys_.G0);
  }

  Matrix rhs(double zeta, const Matrix& w) const { return coefficient(zeta) * w; }

 private:
  const PortHamiltonianSystem& sys_;
  Complex s_;
  Eigen::PartialPivLU<Matrix> p1_lu_;
};

Matrix rk4_step(const WOde& ode, double zeta, double h, const Matrix& w) {
  const Matrix k1 = ode.rhs(zeta, w);
  const Matrix k2 = ode.rhs(zeta + 0.5 * h, w + 0.5 * h * k1);
  const Matrix k3 = ode.rhs(zeta + 0.5 * h, w + 0.5 * h * k2);
  const Matrix k4 = ode.rhs(zeta + h, w + h * k3);
  return w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Adaptive RK4 by step doubling from `from` to `to`; overwrites w.
void integrate_segment(const WOde& ode, double from, double to, Matrix& w,
                       double tol_ode) {
  constexpr double kMinStep = 1e-13;
  double zeta = from;
  double h = (to - from) / 4.0;
  while (zeta < to) {
    h = std::min(h, to - zeta);
    if (h < kMinStep) {
      throw NumericsError(
          "step-size underflow integrating the fundamental solution; "
          "refine the grid or reduce |s|");
    }
    const Matrix coarse = rk4_step(ode, zeta, h, w);
    const Matrix half = rk4_step(ode, zeta, 0.5 * h, w);
    const Matrix fine = rk4_step(ode, zeta + 0.5 * h, 0.5 * h, half);
    const double err = (coarse - fine).cwiseAbs().maxCoeff() / 15.0;
    const double scale = tol_ode * (1.0 + w.cwiseAbs().maxCoeff());
    if (err <= scale) {
      w = fine;
      zeta += h;
    }
    const double ratio = err > 0 ? std::pow(scale / err, 0.2) : 2.0;
    h *= std::clamp(0.9 * ratio, 0.2, 2.0);
  }
}

RealVector segment_quadrature(int cells, double h) {
  if (cells == 0) return RealVector::Zero(1);
  return simpson_weights(cells, h);
}

}  // namespace

FundamentalSolution fundamental_solution(const PortHamiltonianSystem& sys,
                                         Complex s, const Grid& grid,
                                         const Tolerances& tol) {
  const Eigen::Index n = sys.n;
  const int nodes = grid.nodes();
  const WOde ode(sys, s);

  std::vector<Matrix> h_at(nodes), h_inv_at(nodes);
  for (int k = 0; k < nodes; ++k) {
    h_at[k] = sys.H(grid.node(k));
    h_inv_at[k] = h_at[k].partialPivLu().solve(Matrix::Identity(n, n));
  }

  std::vector<std::vector<Matrix>> columns(nodes);
  for (int i = 0; i < nodes; ++i) {
    columns[i].reserve(nodes - i);
    Matrix w = Matrix::Identity(n, n);  // w-propagator from zeta_i
    columns[i].push_back(Matrix::Identity(n, n));
    for (int j = i + 1; j < nodes; ++j) {
      integrate_segment(ode, grid.node(j - 1), grid.node(j), w, tol.tol_ode);
      columns[i].push_back(h_inv_at[j] * w * h_at[i]);
    }
  }
  return FundamentalSolution(s, grid, std::move(columns));
}

GridFunction solve_inhomogeneous(const PortHamiltonianSystem& sys,
                                 const FundamentalSolution& fs,
                                 const Vector& x_at_0, const GridFunction& f) {
  if (f.dim() != sys.n) throw ValidationError("forcing has wrong dimension");
  if (x_at_0.size() != sys.n) throw ValidationError("x(0) has wrong dimension");
  const Grid& grid = f.grid;
  if (grid.nodes() != fs.grid().nodes()) {
    throw ValidationError("forcing grid does not match the fundamental solution grid");
  }
  const Eigen::Index n = sys.n;
  const Eigen::PartialPivLU<Matrix> p1_lu(sys.P1);

  std::vector<Vector> kernel(grid.nodes());  // H^-1(tau) P1^-1 f(tau)
  for (int i = 0; i < grid.nodes(); ++i) {
    kernel[i] = sys.H(grid.node(i)).partialPivLu().solve(p1_lu.solve(f.at(i)));
  }

  GridFunction x(grid, n);
  x.values.col(0) = x_at_0;
  for (int j = 1; j < grid.nodes(); ++j) {
    Vector value = fs.at(j, 0) * x_at_0;
    const RealVector w = segment_quadrature(j, grid.spacing());
    for (int i = 0; i <= j; ++i) {
      value.noalias() -= w(i) * (fs.at(j, i) * kernel[i]);
    }
    x.values.col(j) = value;
  }
  return x;
}

double ode_residual(const PortHamiltonianSystem& sys, Complex s,
                    const GridFunction& x, const GridFunction& f) {
  const Grid& grid = x.grid;
  const double h = grid.spacing();
  double worst = 0.0;
  for (int k = 1; k + 1 < grid.nodes(); ++k) {
    const Vector w_prev = sys.H(grid.node(k - 1)) * x.at(k - 1);
    const Vector w_next = sys.H(grid.node(k + 1)) * x.at(k + 1);
    const Vector w_here = sys.H(grid.node(k)) * x.at(k);
    const Vector residual = s * x.at(k) -
                            (sys.P1 * (w_next - w_prev) / (2 * h) +
                             sys.G0 * w_here + f.at(k));
    worst = std::max(worst, residual.cwiseAbs().maxCoeff());
  }
  return worst;
}

ResolventSolution resolvent_solve(const PortHamiltonianSystem& sys, Complex s,
                                  const GridFunction& f, const Tolerances& tol) {
  const Grid& grid = f.grid;
  const Eigen::Index n = sys.n;
  const FundamentalSolution fs = fundamental_solution(sys, s, grid, tol);

  // particular part at zeta = 1 (x(0) = 0)
  const GridFunction particular =
      solve_inhomogeneous(sys, fs, Vector::Zero(n), f);
  const Vector q1 = particular.at(grid.cells());

  const Matrix wb1 = sys.WB.leftCols(n);
  const Matrix wb0 = sys.WB.rightCols(n);
  const Matrix h1 = sys.H(1.0);
  const Matrix h0 = sys.H(0.0);
  const Matrix closure = wb1 * h1 * fs.at(grid.cells(), 0) + wb0 * h0;
  if (relative_min_singular_value(closure) < tol.eps_inv) {
    std::ostringstream msg;
    msg << "s = (" << s.real() << ", " << s.imag()
        << ") is a discrete eigenvalue: boundary closure is singular";
    throw NumericsError(msg.str());
  }
  const Vector x0 = closure.partialPivLu().solve(Vector(-wb1 * h1 * q1));

  ResolventSolution sol{solve_inhomogeneous(sys, fs, x0, f), Vector(), 0.0};
  Vector tau(2 * n);
  tau.head(n) = h1 * sol.x.at(grid.cells());
  tau.tail(n) = h0 * sol.x.at(0);
  sol.y = sys.WC * tau;

  // cross-check against the discretized operator on the same grid
  const DiscretizedSystem dsys = discretize(sys, grid.cells(),
                                            Scheme::central_staggered, tol);
  Vector x_flat(n * grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) x_flat.segment(k * n, n) = sol.x.at(k);
  Vector f_flat(n * grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) f_flat.segment(k * n, n) = f.at(k);
  const Vector z = dsys.restrict(x_flat);
  // Galerkin projection of f onto the reduced space
  const RealVector tw = trapezoid_weights(grid);
  Matrix m_full = Matrix::Zero(n * grid.nodes(), n * grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    m_full.block(k * n, k * n, n, n) = 0.5 * tw(k) * sys.H(grid.node(k));
  }
  const Vector fz = dsys.M.llt().solve(dsys.embed.adjoint() * (m_full * f_flat));
  const Vector defect = s * z - dsys.A * z - fz;
  const double fnorm = std::sqrt(std::abs((fz.adjoint() * dsys.M * fz).value().real()));
  const double dnorm = std::sqrt(std::abs((defect.adjoint() * dsys.M * defect).value().real()));
  sol.discrete_residual = fnorm > 0 ? dnorm / fnorm : dnorm;
  return sol;
}

std::vector<Matrix> phi_omega(const Diagonalization& diag, double omega) {
  const Grid& grid = diag.grid;
  const Eigen::Index n = diag.alpha.front().size();
  std::vector<Matrix> phi(grid.nodes());
  RealVector integral = RealVector::Zero(n);
  phi[0] = Matrix::Identity(n, n);
  for (int k = 1; k < grid.nodes(); ++k) {
    integral += 0.5 * grid.spacing() * (diag.alpha[k - 1] + diag.alpha[k]);
    Vector d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i) = std::exp(Complex(0, -omega * integral(i)));
    }
    phi[k] = d.asDiagonal();
  }
  return phi;
}

GrowthBoundFit verify_growth_bounds(FundamentalSolution& fs, double c0,
                                    unsigned seed, int random_vectors) {
  const Grid& grid = fs.grid();
  const double r = std::abs(fs.s().real());
  GrowthBoundFit fit;
  fit.c0 = c0;
  fit.c0_tilde = c0;
  double upper = 0.0;
  double lower = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.nodes(); ++i) {
    for (int j = i; j < grid.nodes(); ++j) {
      const double d = grid.node(j) - grid.node(i);
      Eigen::JacobiSVD<Matrix> svd(fs.at(j, i));
      const auto& sv = svd.singularValues();
      upper = std::max(upper, sv(0) / std::exp(r * c0 * d));
      lower = std::min(lower, sv(sv.size() - 1) / std::exp(-r * c0 * d));
    }
  }
  fit.upper_m = upper;
  fit.lower_m = lower;

  // spot check: random unit vectors must respect the fitted sandwich
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index n = fs.at(0, 0).rows();
  for (int trial = 0; trial < random_vectors; ++trial) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    for (int i = 0; i < grid.nodes(); i += std::max(1, grid.nodes() / 8)) {
      for (int j = i; j < grid.nodes(); j += std::max(1, grid.nodes() / 8)) {
        const double d = grid.node(j) - grid.node(i);
        const double norm = (fs.at(j, i) * v).norm();
        const double hi = fit.upper_m * std::exp(r * c0 * d) * (1 + 1e-12);
        const double lo = fit.lower_m * std::exp(-r * c0 * d) * (1 - 1e-12);
        if (norm > hi || norm < lo) ++fit.violations;
      }
    }
  }
  fs.bounds = fit;
  return fit;
}

}  // namespace phs
