#pragma once

// Brute-force reference implementations for small grids. Everything here
// is written independently of the FFT-based production path: transforms
// are O(n^6) direct Fourier sums and the convolution is the literal double
// sum over lattice pairs. Intended for 8^3-ish grids only.

#include <complex>
#include <functional>
#include <vector>

#include "prh/field.hpp"

namespace prh::testing {

/// Direct quadrature Fourier sum c(m) = h^3 sum_x u(x) exp(-i xi(m).x).
std::vector<std::complex<double>> dense_forward(const Field& u);

/// Applies sigma(|xi|^2) through the direct sums (forward, multiply,
/// inverse).
Field dense_apply_symbol(const Field& u,
                         const std::function<double(double)>& sigma_of_xi2);

/// Quadratic form sum sigma |c|^2 / (2L)^3 through the direct sums.
double dense_symbol_form(const Field& u,
                         const std::function<double(double)>& sigma_of_xi2);

/// Literal double sum g(x) = h^3 sum_y K(x - y) f(y) with the truncated
/// free-space kernel (same zero-offset cell average as production).
Field dense_coulomb(const Field& f);

/// Closed form of the integral of 1/|y| over the box [0,a]x[0,b]x[0,c]
/// (corner singularity); used to validate the adaptive cell-average
/// quadrature.
double corner_box_coulomb_integral(double a, double b, double c);

}  // namespace prh::testing
