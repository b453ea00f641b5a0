#pragma once

#include <functional>
#include <span>
#include <vector>

#include "prh/fft.hpp"
#include "prh/field.hpp"

namespace prh {

/// Tabulates sigma(|xi|^2) over the full frequency lattice in FFT bin
/// order. Solvers cache the returned array; one-shot callers use the
/// convenience wrappers below.
std::vector<double> symbol_array(
    const Grid& g, const std::function<double(double)>& sigma_of_xi2);

/// Applies the Fourier multiplier tabulated in sigma to u.
Field apply_multiplier(const Field& u, std::span<const double> sigma);

/// Quadratic form sum sigma(xi) |u_hat(xi)|^2 / (2L)^3 (pairwise, so the
/// result is bit-reproducible).
double multiplier_form(const Field& u, std::span<const double> sigma);

/// <u, sqrt(-Lap + m^2) u>: the relativistic kinetic form. Nonnegative;
/// equals mass(u)*|m| for constant u.
double kinetic_form(const Field& u, double m);

/// sum |xi|^(2s) |u_hat|^2 weight for s = +1/2 or -1/2. For s = -1/2 the
/// xi = 0 coefficient is excluded (its contribution is defined as 0).
/// Throws std::invalid_argument for any other exponent.
double riesz_form(const Field& u, double s);

Field kinetic_apply(const Field& u, double m);
Field sqrt_lap_apply(const Field& u);

/// (sqrt(-Lap) + 1)^{-1} u via the multiplier 1/(|xi| + 1).
Field resolvent_apply(const Field& u);

/// [sqrt(-Lap), phi] u = sqrt(-Lap)(phi u) - phi sqrt(-Lap) u.
/// Identically zero for constant phi. Throws on grid mismatch.
Field commutator_apply(const Field& u, const Field& phi);

}  // namespace prh
