#include "prh/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "prh/coulomb.hpp"
#include "prh/reductions.hpp"
#include "prh/spectral_ops.hpp"

namespace prh {

double hartree_term(const Field& u) {
  Field rho(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    rho.values[i] = u.values[i] * u.values[i];
  }
  const Field pot = coulomb_convolve(rho);
  return inner(pot, rho);
}

EnergyBreakdown total_energy(const Field& u, double coupling, double m,
                             const PotentialSpec& spec, bool constrained) {
  if (constrained) {
    const double mu = mass(u);
    if (std::abs(mu - 1.0) > 1e-10) {
      throw std::invalid_argument(
          "total_energy: constrained evaluation requires unit mass "
          "(got " + std::to_string(mu) + "); renormalize first");
    }
  }
  EnergyBreakdown b;
  b.coupling = coupling;
  b.mass_param = m;
  b.kinetic = kinetic_form(u, m);
  const Field V = potential_eval(spec, u.grid);
  const double h = u.grid.spacing();
  b.potential = h * h * h *
                pairwise_sum(std::size_t{0}, u.values.size(),
                             [&](std::size_t i) {
                               return V.values[i] * u.values[i] * u.values[i];
                             });
  b.hartree = hartree_term(u);
  b.total = b.kinetic + b.potential - 0.5 * coupling * b.hartree;
  return b;
}

double weinstein(const Field& u) {
  const double hart = hartree_term(u);
  if (hart <= 0) {
    throw std::invalid_argument("weinstein: hartree term vanishes (u == 0?)");
  }
  return kinetic_form(u, 0.0) * mass(u) / hart;
}

}  // namespace prh
