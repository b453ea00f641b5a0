#include "prh/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prh/resample.hpp"

namespace prh {

RadialProfile::RadialProfile(std::vector<double> r, std::vector<double> v)
    : r_(std::move(r)), v_(std::move(v)) {
  const std::size_t n = r_.size();
  if (n < 3 || v_.size() != n) {
    throw std::invalid_argument("radial profile needs >= 3 samples");
  }
  // Fritsch-Carlson monotone cubic slopes: no overshoot, so positive
  // monotone data stays positive and monotone between samples.
  slope_.assign(n, 0.0);
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = (v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i]);
  }
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0) {
      slope_[i] = 0;
    } else {
      const double w1 = 2 * (r_[i + 1] - r_[i]) + (r_[i] - r_[i - 1]);
      const double w2 = (r_[i + 1] - r_[i]) + 2 * (r_[i] - r_[i - 1]);
      slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
}

double RadialProfile::operator()(double r) const {
  r = std::abs(r);
  if (r >= r_.back()) {
    // |x|^{-4} continuation beyond the sampled range
    const double ratio = r_.back() / r;
    return v_.back() * ratio * ratio * ratio * ratio;
  }
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  const std::size_t hi = std::max<std::size_t>(1, it - r_.begin());
  const std::size_t lo = hi - 1;
  const double w = r_[hi] - r_[lo];
  const double t = (r - r_[lo]) / w;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * v_[lo] + h10 * w * slope_[lo] + h01 * v_[hi] +
         h11 * w * slope_[hi];
}

RadialProfile extract_radial_profile(const Field& f) {
  const double h = f.grid.spacing();
  const double r_max = f.grid.L - h;
  const double dr = h / 4;
  std::vector<double> ts;
  for (double r = 0; r <= r_max; r += dr) ts.push_back(r);
  auto vals = spectral_ray(f, Vec3{0, 0, 0}, Vec3{1, 0, 0}, ts);
  return RadialProfile(std::move(ts), std::move(vals));
}

}  // namespace prh
