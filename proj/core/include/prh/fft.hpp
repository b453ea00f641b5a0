#pragma once

#include <complex>
#include <vector>

#include "prh/field.hpp"

namespace prh {

/// Discrete Fourier coefficients of a Field, stored in FFT bin order and
/// normalized as the quadrature approximation of the continuum transform:
///   c(m) = h^3 * sum_x u(x) exp(-i xi(m).x).
/// With this normalization the discrete Plancherel identity
///   mass(u) = sum |c|^2 / (2L)^3
/// holds exactly, and real input gives Hermitian-symmetric coefficients.
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> coeffs;
};

SpectralField forward_transform(const Field& u);
Field inverse_transform(const SpectralField& s);

/// Plancherel mass sum |c|^2 / (2L)^3 (pairwise).
double spectral_mass(const SpectralField& s);

namespace detail {

/// Unnormalized plain DFT of u into out (FFT bin order), via cached plans.
void dft_forward(const Field& u, std::vector<std::complex<double>>& out);

/// Inverse of dft_forward including the 1/n^3 factor; real part into out.
void dft_inverse(const Grid& g, std::vector<std::complex<double>>& work,
                 Field& out);

}  // namespace detail

}  // namespace prh
