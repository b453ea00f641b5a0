#include "prh/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "prh/reductions.hpp"

namespace prh {

std::vector<double> symbol_array(
    const Grid& g, const std::function<double(double)>& sigma_of_xi2) {
  const auto xi = frequency_axis(g);
  std::vector<double> sigma(g.size());
  std::size_t idx = 0;
  for (int a = 0; a < g.n; ++a) {
    const double xa2 = xi[a] * xi[a];
    for (int b = 0; b < g.n; ++b) {
      const double xab2 = xa2 + xi[b] * xi[b];
      for (int c = 0; c < g.n; ++c, ++idx) {
        sigma[idx] = sigma_of_xi2(xab2 + xi[c] * xi[c]);
      }
    }
  }
  return sigma;
}

Field apply_multiplier(const Field& u, std::span<const double> sigma) {
  if (sigma.size() != u.grid.size()) {
    throw std::invalid_argument("multiplier table does not match grid");
  }
  std::vector<std::complex<double>> work;
  detail::dft_forward(u, work);
  for (std::size_t i = 0; i < work.size(); ++i) work[i] *= sigma[i];
  Field out;
  detail::dft_inverse(u.grid, work, out);
  return out;
}

double multiplier_form(const Field& u, std::span<const double> sigma) {
  if (sigma.size() != u.grid.size()) {
    throw std::invalid_argument("multiplier table does not match grid");
  }
  std::vector<std::complex<double>> work;
  detail::dft_forward(u, work);
  // (h^3/n^3) sum sigma |U|^2 == sum sigma |u_hat|^2 / (2L)^3.
  const double h = u.grid.spacing();
  const double w = h * h * h / static_cast<double>(u.grid.size());
  return w * pairwise_sum(std::size_t{0}, work.size(), [&](std::size_t i) {
           return sigma[i] * std::norm(work[i]);
         });
}

double kinetic_form(const Field& u, double m) {
  const double m2 = m * m;
  return multiplier_form(
      u, symbol_array(u.grid,
                      [m2](double xi2) { return std::sqrt(xi2 + m2); }));
}

double riesz_form(const Field& u, double s) {
  if (s == 0.5) {
    return multiplier_form(
        u, symbol_array(u.grid, [](double xi2) { return std::sqrt(xi2); }));
  }
  if (s == -0.5) {
    return multiplier_form(u, symbol_array(u.grid, [](double xi2) {
                             return xi2 == 0 ? 0.0 : 1.0 / std::sqrt(xi2);
                           }));
  }
  throw std::invalid_argument("riesz_form: exponent must be +1/2 or -1/2");
}

Field kinetic_apply(const Field& u, double m) {
  const double m2 = m * m;
  return apply_multiplier(
      u, symbol_array(u.grid,
                      [m2](double xi2) { return std::sqrt(xi2 + m2); }));
}

Field sqrt_lap_apply(const Field& u) { return kinetic_apply(u, 0.0); }

Field resolvent_apply(const Field& u) {
  return apply_multiplier(u, symbol_array(u.grid, [](double xi2) {
                            return 1.0 / (std::sqrt(xi2) + 1.0);
                          }));
}

Field commutator_apply(const Field& u, const Field& phi) {
  if (!(u.grid == phi.grid)) {
    throw std::invalid_argument("commutator_apply: grid mismatch");
  }
  Field pu = u;
  for (std::size_t i = 0; i < pu.values.size(); ++i) {
    pu.values[i] *= phi.values[i];
  }
  Field lhs = sqrt_lap_apply(pu);
  Field su = sqrt_lap_apply(u);
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    lhs.values[i] -= phi.values[i] * su.values[i];
  }
  return lhs;
}

}  // namespace prh
