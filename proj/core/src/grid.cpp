#include "prh/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace prh {

double Grid::freq(int m) const {
  return std::numbers::pi / L * freq_index(m);
}

Grid make_grid(int n, double L) {
  if (n % 2 != 0) {
    throw std::invalid_argument("grid: n must be even, got " +
                                std::to_string(n));
  }
  if (n < 8) {
    throw std::invalid_argument("grid: n must be >= 8, got " +
                                std::to_string(n));
  }
  if (!(L > 0)) {
    throw std::invalid_argument("grid: L must be positive, got " +
                                std::to_string(L));
  }
  return Grid{n, L};
}

std::vector<double> frequency_axis(const Grid& g) {
  std::vector<double> xi(g.n);
  for (int m = 0; m < g.n; ++m) xi[m] = g.freq(m);
  return xi;
}

}  // namespace prh
