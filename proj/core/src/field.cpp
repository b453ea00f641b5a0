#include "prh/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prh/reductions.hpp"

namespace prh {

namespace {
void require_same_grid(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) {
    throw std::invalid_argument("fields live on different grids");
  }
}
}  // namespace

double mass(const Field& u) {
  const double h = u.grid.spacing();
  return h * h * h *
         pairwise_sum(std::size_t{0}, u.values.size(), [&](std::size_t i) {
           return u.values[i] * u.values[i];
         });
}

double inner(const Field& f, const Field& g) {
  require_same_grid(f, g);
  const double h = f.grid.spacing();
  return h * h * h *
         pairwise_sum(std::size_t{0}, f.values.size(), [&](std::size_t i) {
           return f.values[i] * g.values[i];
         });
}

double l2_norm(const Field& f) { return std::sqrt(mass(f)); }

double max_abs(const Field& f) {
  double m = 0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double min_value(const Field& f) {
  double m = f.values.empty() ? 0.0 : f.values.front();
  for (double v : f.values) m = std::min(m, v);
  return m;
}

void check_finite(const Field& f) {
  for (double v : f.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("field contains non-finite values");
    }
  }
}

double boundary_contamination(const Field& f) {
  const int n = f.grid.n;
  double peak = max_abs(f);
  if (peak == 0) return 0;
  double edge = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      edge = std::max(edge, std::abs(f(0, i, j)));
      edge = std::max(edge, std::abs(f(i, 0, j)));
      edge = std::max(edge, std::abs(f(i, j, 0)));
    }
  }
  return edge / peak;
}

void normalize(Field& u) {
  const double m = mass(u);
  if (!(m > 1e-300)) {
    throw std::invalid_argument("cannot normalize a zero field");
  }
  const double s = 1.0 / std::sqrt(m);
  for (double& v : u.values) v *= s;
}

}  // namespace prh
