#pragma once

#include <vector>

#include "prh/field.hpp"

namespace prh {

/// Trigonometric (spectral) interpolation of u at the tensor-product set
/// xs x ys x zs of physical coordinates, returned row-major (x outermost).
/// The Nyquist mode is evaluated as a cosine so real input stays real.
/// Points must lie inside [-L, L); the interpolant is the periodic one.
std::vector<double> spectral_resample(const Field& u,
                                      const std::vector<double>& xs,
                                      const std::vector<double>& ys,
                                      const std::vector<double>& zs);

/// Samples u along the ray (x0 + t*dir) for the given t values.
std::vector<double> spectral_ray(const Field& u, const Vec3& x0,
                                 const Vec3& dir,
                                 const std::vector<double>& ts);

}  // namespace prh
