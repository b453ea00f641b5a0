#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace prh {

using Vec3 = std::array<double, 3>;

/// Periodic cubic box [-L, L)^3 sampled with n points per axis.
///
/// The frequency lattice carries xi_j = (pi/L) * j for integer
/// j in [-n/2, n/2); the single Nyquist index j = -n/2 appears once.
struct Grid {
  int n = 0;     ///< points per axis (even)
  double L = 0;  ///< box half-length

  double spacing() const { return 2.0 * L / n; }
  std::size_t size() const {
    return static_cast<std::size_t>(n) * n * n;
  }

  /// Physical coordinate of sample index i in [0, n): x_i = -L + i*h.
  double coord(int i) const { return -L + i * spacing(); }

  /// Signed frequency index of FFT bin m in [0, n): j in [-n/2, n/2).
  int freq_index(int m) const { return m < n / 2 ? m : m - n; }

  /// Frequency value of FFT bin m.
  double freq(int m) const;

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }

  bool operator==(const Grid&) const = default;
};

/// Builds a grid, validating n (even, >= 8) and L > 0.
Grid make_grid(int n, double L);

/// Per-axis frequency values in FFT bin order (length n).
std::vector<double> frequency_axis(const Grid& g);

}  // namespace prh
