#pragma once

#include "prh/field.hpp"

namespace prh {

/// Free-space Newtonian convolution g = (1/|x|) * f on the grid of f,
/// computed on a zero-padded doubled grid so periodic images do not
/// contribute. The kernel sample at zero offset is replaced by the exact
/// average of 1/|x| over one grid cell. g >= 0 whenever f >= 0.
///
/// f is expected to have decayed at the box boundary; if the boundary
/// amplitude exceeds 1e-8 of max|f| a diagnostic warning is emitted once
/// per grid. Callers that need the number use boundary_contamination().
Field coulomb_convolve(const Field& f);

/// Average of 1/|y| over the unit cube centered at the origin, evaluated
/// once by adaptive quadrature to 1e-10 and cached. The zero-offset kernel
/// sample is this constant divided by the grid spacing.
double coulomb_cell_constant();

}  // namespace prh
