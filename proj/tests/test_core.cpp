#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "phs/system.hpp"

namespace phs {
namespace {

Matrix random_hermitian_invertible(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Matrix h = hermitize(a);
  // push eigenvalues away from zero, keeping both signs possible
  h += 0.5 * Matrix::Identity(n, n);
  while (relative_min_singular_value(h) < 1e-6) {
    h += 0.5 * Matrix::Identity(n, n);
  }
  return h;
}

PortHamiltonianSystem transport_like() {
  PortHamiltonianSystem sys;
  sys.n = 1;
  sys.P1 = Matrix::Identity(1, 1);
  sys.G0 = Matrix::Zero(1, 1);
  sys.H = MatrixField::identity(1);
  sys.WB = Matrix(1, 2);
  sys.WB << 1, 0;
  sys.WC = Matrix(1, 2);
  sys.WC << 0, 1;
  return sys;
}

TEST(BuildR0, ScalarExamples) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix r0 = build_r0(Matrix::Identity(1, 1));
  EXPECT_NEAR(std::abs(r0(0, 0) - Complex(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r0(0, 1) + Complex(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r0(1, 0) - Complex(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r0(1, 1) - Complex(s)), 0.0, 1e-15);

  Matrix p1 = 2.0 * Matrix::Identity(1, 1);
  Matrix r0b = build_r0(p1);
  EXPECT_NEAR(std::abs(r0b(0, 0) - Complex(2 * s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r0b(0, 1) + Complex(2 * s)), 0.0, 1e-15);
}

TEST(BuildR0, SignatureIdentityScalar) {
  Matrix r0 = build_r0(Matrix::Identity(1, 1));
  Matrix product = r0.adjoint() * sigma_swap(1) * r0;
  Matrix expected(2, 2);
  expected << 1, 0, 0, -1;
  EXPECT_LT((product - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BuildR0, SignatureIdentityRandomized) {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Matrix p1 = random_hermitian_invertible(rng, n);
    const Matrix r0 = build_r0(p1);
    Matrix expected = Matrix::Zero(2 * n, 2 * n);
    expected.topLeftCorner(n, n) = p1;
    expected.bottomRightCorner(n, n) = -p1;
    const Matrix product = r0.adjoint() * sigma_swap(n) * r0;
    EXPECT_LT((product - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BuildR0, RejectsBadInput) {
  Matrix nonherm(2, 2);
  nonherm << 0, 1, 0, 0;
  EXPECT_THROW(build_r0(nonherm), ValidationError);
  EXPECT_THROW(build_r0(Matrix::Zero(2, 2)), ValidationError);
}

TEST(BoundaryEffortFlow, ScalarExamples) {
  const Matrix p1 = Matrix::Identity(1, 1);
  const double s = 1.0 / std::sqrt(2.0);
  auto [flow, effort] = boundary_effort_flow(Vector::Ones(1), Vector::Zero(1), p1);
  EXPECT_NEAR(std::abs(flow(0) - Complex(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(effort(0) - Complex(s)), 0.0, 1e-15);

  // symmetric traces carry no flow
  Vector tr = Vector::Constant(1, Complex(0.7, -0.2));
  auto [flow2, effort2] = boundary_effort_flow(tr, tr, p1);
  EXPECT_NEAR(std::abs(flow2(0)), 0.0, 1e-15);

  const Matrix p2 = 2.0 * Matrix::Identity(1, 1);
  auto [flow3, effort3] =
      boundary_effort_flow(Vector::Ones(1), -Vector::Ones(1), p2);
  EXPECT_NEAR(flow3(0).real(), 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(effort3(0)), 0.0, 1e-15);
}

TEST(BoundaryEffortFlow, AgreesWithR0Product) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const Matrix p1 = random_hermitian_invertible(rng, n);
    Vector t1(n), t0(n);
    for (int i = 0; i < n; ++i) {
      t1(i) = Complex(gauss(rng), gauss(rng));
      t0(i) = Complex(gauss(rng), gauss(rng));
    }
    auto [flow, effort] = boundary_effort_flow(t1, t0, p1);
    Vector stacked(2 * n);
    stacked << t1, t0;
    const Vector expected = build_r0(p1) * stacked;
    EXPECT_LT((expected.head(n) - flow).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((expected.tail(n) - effort).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(BoundaryAlgebra, R0SplitGivesSigma) {
  PortHamiltonianSystem sys = transport_like();
  const Matrix r0 = build_r0(sys.P1);
  sys.WB = r0.topRows(1);
  sys.WC = r0.bottomRows(1);
  const BoundaryAlgebra alg = build_boundary_algebra(sys);
  EXPECT_LT((alg.P - sigma_swap(1)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(BoundaryAlgebra, TransportModel) {
  const BoundaryAlgebra alg = build_boundary_algebra(transport_like());
  EXPECT_LT((alg.WBC - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  Matrix expected(2, 2);
  expected << 1, 0, 0, -1;
  EXPECT_LT((alg.P - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(alg.norm_P, 1.0, 1e-12);
}

TEST(BoundaryAlgebra, RejectsNonComplementary) {
  PortHamiltonianSystem sys = transport_like();
  sys.WC = sys.WB;
  EXPECT_THROW(build_boundary_algebra(sys), ValidationError);
}

TEST(BoundaryAlgebra, PHermitianRandomized) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int accepted = 0;
  while (accepted < 30) {
    const int n = 1 + static_cast<int>(rng() % 3);
    PortHamiltonianSystem sys;
    sys.n = n;
    sys.P1 = random_hermitian_invertible(rng, n);
    sys.G0 = Matrix::Zero(n, n);
    sys.H = MatrixField::identity(n);
    Matrix wbc(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = 0; j < 2 * n; ++j) wbc(i, j) = Complex(gauss(rng), gauss(rng));
    }
    if (relative_min_singular_value(wbc) < 1e-3) continue;
    sys.WB = wbc.topRows(n);
    sys.WC = wbc.bottomRows(n);
    const BoundaryAlgebra alg = build_boundary_algebra(sys);
    EXPECT_LT((alg.P - alg.P.adjoint()).cwiseAbs().maxCoeff(),
              1e-12 * (1 + alg.norm_P));
    ++accepted;
  }
}

TEST(PowerBalance, SkewG0HasNoDissipation) {
  PortHamiltonianSystem sys = transport_like();
  sys.n = 2;
  sys.P1 = Matrix(2, 2);
  sys.P1 << 0, 1, 1, 0;
  sys.G0 = Matrix(2, 2);
  sys.G0 << 0, 1, -1, 0;
  sys.H = MatrixField::identity(2);
  sys.WB = Matrix::Zero(2, 4);
  sys.WB(0, 0) = 1;
  sys.WB(1, 2) = 1;
  sys.WC = Matrix::Zero(2, 4);
  sys.WC(0, 1) = 1;
  sys.WC(1, 3) = 1;

  Grid grid(16);
  GridFunction state(grid, 2);
  for (int k = 0; k < grid.nodes(); ++k) {
    state.values(0, k) = Complex(std::sin(grid.node(k)), 0.3);
    state.values(1, k) = Complex(grid.node(k), -0.5);
  }
  const auto terms = power_balance_terms(sys, state, Vector::Zero(2), Vector::Zero(2));
  EXPECT_NEAR(terms.dissipation, 0.0, 1e-14);
}

TEST(PowerBalance, ConstantStateClosedForm) {
  PortHamiltonianSystem sys = transport_like();
  sys.G0 = -Matrix::Identity(1, 1);
  Grid grid(20);
  GridFunction state(grid, 1);
  const Complex c(1.25, -0.5);
  state.values.setConstant(c);
  const auto terms = power_balance_terms(sys, state, Vector::Zero(1), Vector::Zero(1));
  EXPECT_NEAR(terms.boundary, 0.0, 1e-15);
  EXPECT_NEAR(terms.dissipation, -std::norm(c), 1e-12);
}

TEST(PowerBalance, BoundaryTermExample) {
  PortHamiltonianSystem sys = transport_like();
  Grid grid(8);
  GridFunction state(grid, 1);
  Vector t1 = Vector::Constant(1, Complex(2.0, 0.0));
  const auto terms = power_balance_terms(sys, state, t1, Vector::Zero(1));
  EXPECT_NEAR(terms.boundary, 2.0, 1e-15);
  EXPECT_NEAR(terms.dissipation, 0.0, 1e-15);
}

TEST(SplitG0, Examples) {
  Matrix g0(2, 2);
  g0 << -1, -1, -1, -1;  // already Hermitian
  auto split = split_g0(g0);
  EXPECT_LT((split.re_part - g0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(split.skew_part.cwiseAbs().maxCoeff(), 1e-15);

  Matrix skew(2, 2);
  skew << 0, 1, -1, 0;
  split = split_g0(skew);
  EXPECT_LT(split.re_part.cwiseAbs().maxCoeff(), 1e-15);

  Matrix g(2, 2);
  g << 1, 2, 0, 1;
  split = split_g0(g);
  Matrix re(2, 2), sk(2, 2);
  re << 1, 1, 1, 1;
  sk << 0, 1, -1, 0;
  EXPECT_LT((split.re_part - re).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((split.skew_part - sk).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SplitG0, ReconstructionProperty) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    }
    auto split = split_g0(g);
    EXPECT_LT((split.skew_part + split.skew_part.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((split.re_part - split.re_part.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((split.skew_part + split.re_part - g).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(MatrixFieldChecks, HamiltonianCertification) {
  // constant SPD field passes
  Matrix h(2, 2);
  h << 2, 0, 0, 0.5;
  EXPECT_NO_THROW(MatrixField::constant(h).certify_hamiltonian(16));

  // indefinite at some zeta fails
  std::vector<Matrix> coeffs = {Matrix::Identity(1, 1), -2.0 * Matrix::Identity(1, 1)};
  EXPECT_THROW(MatrixField(coeffs).certify_hamiltonian(16), ValidationError);

  // non-Hermitian fails
  Matrix bad(2, 2);
  bad << 1, 1, 0, 1;
  EXPECT_THROW(MatrixField::constant(bad).certify_hamiltonian(4), ValidationError);
}

TEST(SystemValidation, NamesViolatedInvariant) {
  PortHamiltonianSystem sys = transport_like();
  sys.P1 = Matrix::Zero(1, 1);
  try {
    sys.validate();
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("P1"), std::string::npos);
  }
}

}  // namespace
}  // namespace phs
