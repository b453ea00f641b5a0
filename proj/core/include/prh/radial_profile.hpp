#pragma once

#include <vector>

#include "prh/field.hpp"

namespace prh {

/// Monotone-cubic (Fritsch-Carlson) interpolant of a radially symmetric
/// field, built from a spectrally interpolated ray through the center.
/// Beyond the last sample the profile is extended by the |x|^{-4} decay
/// law; this keeps trial-state construction meaningful past the box.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(std::vector<double> r, std::vector<double> v);

  double operator()(double r) const;
  double r_max() const { return r_.empty() ? 0.0 : r_.back(); }
  const std::vector<double>& radii() const { return r_; }
  const std::vector<double>& samples() const { return v_; }

 private:
  std::vector<double> r_, v_, slope_;
};

/// Extracts the radial profile of a (radially symmetric) field about the
/// box center, sampling at spacing h/4 out to r = L - h.
RadialProfile extract_radial_profile(const Field& f);

}  // namespace prh
