#pragma once

#include "prh/field.hpp"
#include "prh/potential.hpp"

namespace prh {

/// Parts of E_a(u) = <u, sqrt(-Lap + m^2) u> + <V u, u>
///                   - (a/2) <(1/|x|) * u^2, u^2>.
struct EnergyBreakdown {
  double kinetic = 0;
  double potential = 0;
  double hartree = 0;
  double total = 0;  ///< kinetic + potential - (coupling/2) * hartree
  double coupling = 0;
  double mass_param = 0;
};

/// Nonlocal self-interaction <(1/|x|) * u^2, u^2>. Nonnegative and
/// homogeneous of degree 4 in u.
double hartree_term(const Field& u);

/// Full energy of u. When constrained is true (the default), requires
/// mass(u) = 1 within 1e-10 and throws std::invalid_argument otherwise;
/// renormalization is the caller's job.
EnergyBreakdown total_energy(const Field& u, double coupling, double m,
                             const PotentialSpec& spec,
                             bool constrained = true);

/// Scale-invariant quotient kinetic_form(u, 0) * mass(u) / hartree_term(u).
/// Its infimum over nonzero u is half the squared norm of the massless
/// ground state. Throws std::invalid_argument when u is identically zero.
double weinstein(const Field& u);

}  // namespace prh
