#pragma once

#include <vector>

#include "core/grid_set.hpp"

namespace vpmcf {

// Multi-direction cut stencil for the discrete perimeter.  The perimeter of a
// set is the weighted count of stencil pairs with one endpoint inside and one
// outside; the same weights define the pairwise terms of the step solver's cut
// energy, so the solver minimizes exactly the functional reported here.
//
// Directions: 16-neighborhood in 2D (axis, diagonal and knight moves),
// 26-neighborhood in 3D (axis, face diagonal, body diagonal).  Per-family
// weights are calibrated against flat interfaces: the response to a half-space
// interface is exact for normals along the axis and main diagonal directions,
// and the leftover degree of freedom in 2D is fixed by least squares over
// densely sampled normals.
struct StencilDirection {
  Index3 offset;
  double unit_weight;  // dimensionless; physical weight = unit_weight * spacing^(ndim-1)
};

const std::vector<StencilDirection>& perimeter_stencil(int ndim);

// Response of the calibrated stencil to a flat interface with unit normal
// `nu`: the estimated boundary measure per unit of true measure.  Equals 1
// exactly for axis and main-diagonal normals.
double stencil_flat_response(int ndim, const Vec3& nu);

double perimeter(const GridSet& set);

}  // namespace vpmcf
