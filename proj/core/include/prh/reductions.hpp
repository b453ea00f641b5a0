#pragma once

#include <cstddef>
#include <span>

namespace prh {

/// Pairwise (cascade) summation over [lo, hi) of f(i). Deterministic for a
/// fixed index range regardless of chunking elsewhere; used for every
/// lattice reduction so energies are bit-reproducible.
template <class F>
double pairwise_sum(std::size_t lo, std::size_t hi, F&& f) {
  const std::size_t len = hi - lo;
  if (len <= 64) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = lo + len / 2;
  return pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, f);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(std::size_t{0}, v.size(),
                      [&](std::size_t i) { return v[i]; });
}

}  // namespace prh
