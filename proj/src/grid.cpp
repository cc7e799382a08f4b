#include "phs/grid.hpp"

namespace phs {

Grid::Grid(int cells) : n_cells_(cells) {
  if (cells < 4) throw ValidationError("grid needs at least 4 cells");
}

RealVector trapezoid_weights(const Grid& grid) {
  RealVector w = RealVector::Constant(grid.nodes(), grid.spacing());
  w(0) *= 0.5;
  w(grid.nodes() - 1) *= 0.5;
  return w;
}

RealVector simpson_weights(int cells, double h) {
  RealVector w = RealVector::Zero(cells + 1);
  if (cells == 1) {
    w(0) = w(1) = h / 2;
    return w;
  }
  int even_part = cells;
  if (cells % 2 != 0) even_part = cells - 3;  // 3/8 rule on the last three cells
  if (even_part < 0) even_part = 0;           // cells == 2 handled below, cells == 3 pure 3/8
  for (int j = 0; j + 2 <= even_part; j += 2) {
    w(j) += h / 3;
    w(j + 1) += 4 * h / 3;
    w(j + 2) += h / 3;
  }
  if (cells % 2 != 0 && cells >= 3) {
    const int j = even_part;
    w(j) += 3 * h / 8;
    w(j + 1) += 9 * h / 8;
    w(j + 2) += 9 * h / 8;
    w(j + 3) += 3 * h / 8;
  }
  return w;
}

}  // namespace phs
