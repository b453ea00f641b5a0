#pragma once

#include <cstdint>
#include <random>

#include "prh/field.hpp"

namespace prh::testing {

/// Seeded uniform generator built on mt19937_64's standard-pinned output,
/// so generated test data is identical on every platform.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 eng_;
};

/// Smooth decaying field: a few Gaussian bumps with centers and widths kept
/// away from the boundary. sign_mixed controls whether amplitudes may be
/// negative.
inline Field random_smooth_field(const Grid& grid, std::uint64_t seed,
                                 bool sign_mixed = true, int bumps = 5) {
  TestRng rng(seed);
  struct Bump {
    double a, cx, cy, cz, inv2w2;
  };
  std::vector<Bump> bs;
  for (int b = 0; b < bumps; ++b) {
    const double amp = sign_mixed ? rng.uniform(-1.0, 1.0)
                                  : rng.uniform(0.2, 1.0);
    const double c = grid.L / 3.5;
    const double w = grid.L * rng.uniform(0.06, 0.1);
    bs.push_back({amp, rng.uniform(-c, c), rng.uniform(-c, c),
                  rng.uniform(-c, c), 1.0 / (2.0 * w * w)});
  }
  return sample(grid, [&](double x, double y, double z) {
    double v = 0;
    for (const auto& b : bs) {
      const double dx = x - b.cx, dy = y - b.cy, dz = z - b.cz;
      v += b.a * std::exp(-(dx * dx + dy * dy + dz * dz) * b.inv2w2);
    }
    return v;
  });
}

}  // namespace prh::testing
