#pragma once

#include <vector>

#include "prh/field.hpp"
#include "prh/grid.hpp"

namespace prh {

/// Trap potential V(x) = prod_i |x - x_i|^{p_i} with distinct wells x_i and
/// exponents p_i > 0. The derived quantities classify the wells: p is the
/// largest exponent; the flatness coefficient of well i is
/// lim_{x->x_i} V(x)/|x - x_i|^p, which is prod_{j != i} |x_i - x_j|^{p_j}
/// when p_i = p and +infinity when p_i < p. The flattest wells (minimal
/// finite coefficient) are where near-critical minimizers concentrate.
struct PotentialSpec {
  std::vector<Vec3> points;
  std::vector<double> exponents;

  // derived
  double max_exponent = 0;            ///< p = max p_i
  std::vector<double> flatness;       ///< kappa_i, +inf when p_i < p
  double kappa = 0;                   ///< min kappa_i
  std::vector<int> flattest;          ///< indices attaining kappa

  std::size_t count() const { return points.size(); }
};

/// Validates (distinct points, positive exponents) and computes the derived
/// classification. Throws std::invalid_argument.
PotentialSpec make_potential(std::vector<Vec3> points,
                             std::vector<double> exponents);

double potential_value(const PotentialSpec& spec, const Vec3& x);

/// Samples V on the grid. Requires every trap point inside the box with
/// margin >= L/4 (throws std::invalid_argument otherwise). Sampling is
/// pointwise; on-grid trap points give exact zeros.
Field potential_eval(const PotentialSpec& spec, const Grid& grid);

}  // namespace prh
