#include "prh/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace prh {

namespace {
double dist(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}
}  // namespace

PotentialSpec make_potential(std::vector<Vec3> points,
                             std::vector<double> exponents) {
  if (points.empty() || points.size() != exponents.size()) {
    throw std::invalid_argument(
        "potential: need matching nonempty point/exponent lists");
  }
  for (double p : exponents) {
    if (!(p > 0)) {
      throw std::invalid_argument("potential: exponents must be positive");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (dist(points[i], points[j]) == 0) {
        throw std::invalid_argument("potential: trap points must be distinct");
      }
    }
  }

  PotentialSpec spec;
  spec.points = std::move(points);
  spec.exponents = std::move(exponents);
  spec.max_exponent = 0;
  for (double p : spec.exponents) spec.max_exponent = std::max(spec.max_exponent, p);

  const double inf = std::numeric_limits<double>::infinity();
  spec.flatness.resize(spec.points.size());
  spec.kappa = inf;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    if (spec.exponents[i] < spec.max_exponent) {
      // V/|x-x_i|^p blows up at a shallower well: the limit is infinite.
      spec.flatness[i] = inf;
      continue;
    }
    double prod = 1;
    for (std::size_t j = 0; j < spec.points.size(); ++j) {
      if (j == i) continue;
      prod *= std::pow(dist(spec.points[i], spec.points[j]),
                       spec.exponents[j]);
    }
    spec.flatness[i] = prod;
    spec.kappa = std::min(spec.kappa, prod);
  }
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    if (spec.flatness[i] == spec.kappa) {
      spec.flattest.push_back(static_cast<int>(i));
    }
  }
  return spec;
}

double potential_value(const PotentialSpec& spec, const Vec3& x) {
  double v = 1;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    v *= std::pow(dist(x, spec.points[i]), spec.exponents[i]);
  }
  return v;
}

Field potential_eval(const PotentialSpec& spec, const Grid& grid) {
  const double margin = grid.L / 4;
  for (const auto& p : spec.points) {
    for (double c : p) {
      if (std::abs(c) > grid.L - margin) {
        throw std::invalid_argument(
            "potential: trap point outside box margin L/4");
      }
    }
  }
  return sample(grid, [&](double x, double y, double z) {
    return potential_value(spec, Vec3{x, y, z});
  });
}

}  // namespace prh
