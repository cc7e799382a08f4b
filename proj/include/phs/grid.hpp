#pragma once

#include <vector>

#include "phs/common.hpp"

namespace phs {

/// Uniform grid on [0,1] with N cells, N+1 nodes.
struct Grid {
  explicit Grid(int cells);

  int cells() const { return n_cells_; }
  int nodes() const { return n_cells_ + 1; }
  double spacing() const { return 1.0 / n_cells_; }
  double node(int k) const { return static_cast<double>(k) / n_cells_; }

 private:
  int n_cells_ = 0;
};

/// Trapezoid weights over the grid nodes; exact for piecewise-linear data.
RealVector trapezoid_weights(const Grid& grid);

/// Composite Simpson weights (Simpson + 3/8 tail when the cell count is odd,
/// plain trapezoid for a single cell). Fourth-order for smooth integrands.
RealVector simpson_weights(int cells, double spacing);
inline RealVector simpson_weights(const Grid& grid) {
  return simpson_weights(grid.cells(), grid.spacing());
}

/// Vector-valued grid function: column k holds the value at node k.
struct GridFunction {
  Grid grid;
  Matrix values;  // n x (N+1)

  GridFunction(const Grid& g, Eigen::Index n)
      : grid(g), values(Matrix::Zero(n, g.nodes())) {}
  GridFunction(const Grid& g, Matrix v) : grid(g), values(std::move(v)) {
    if (values.cols() != grid.nodes()) {
      throw ValidationError("grid function has wrong number of columns");
    }
  }

  Eigen::Index dim() const { return values.rows(); }
  Vector at(int k) const { return values.col(k); }
};

}  // namespace phs
