#pragma once

#include <vector>

#include "prh/grid.hpp"

namespace prh {

/// Real scalar function sampled on a Grid. Values are stored row-major
/// with the x index outermost: values[(i*n + j)*n + k].
struct Field {
  Grid grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}

  double& operator()(int i, int j, int k) {
    return values[grid.index(i, j, k)];
  }
  double operator()(int i, int j, int k) const {
    return values[grid.index(i, j, k)];
  }
};

/// Quadrature mass h^3 * sum u^2 (pairwise summation).
double mass(const Field& u);

/// Quadrature inner product h^3 * sum f*g. Throws on grid mismatch.
double inner(const Field& f, const Field& g);

/// L2 norm sqrt(<f, f>).
double l2_norm(const Field& f);

double max_abs(const Field& f);
double min_value(const Field& f);

/// Throws std::invalid_argument if any value is not finite.
void check_finite(const Field& f);

/// max |f| over the outer boundary layer divided by max |f| overall
/// (0 when f vanishes). Used as the domain-truncation diagnostic.
double boundary_contamination(const Field& f);

/// Rescales u in place to unit quadrature mass. Throws if mass < 1e-300.
void normalize(Field& u);

/// Samples g(x) on the grid.
template <class G>
Field sample(const Grid& grid, G&& g) {
  Field f(grid);
  const int n = grid.n;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.coord(i);
    for (int j = 0; j < n; ++j) {
      const double y = grid.coord(j);
      for (int k = 0; k < n; ++k, ++idx) {
        f.values[idx] = g(x, y, grid.coord(k));
      }
    }
  }
  return f;
}

}  // namespace prh
