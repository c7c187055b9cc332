#pragma once

#include "nls/grid.hpp"

namespace nls {

// A exp(-(x / sigma)^2)
GridFunction gaussian_data(const Grid& grid, cplx amplitude, double sigma);

// A [cos x + cos(sqrt2 x)] (1 + x^2)^{-alpha}
GridFunction windowed_power_data(const Grid& grid, double alpha, cplx amplitude = 1.0);

// A exp(-(x / sigma)^2) [cos x + cos(sqrt2 x)]
GridFunction schwartz_data(const Grid& grid, cplx amplitude, double sigma);

} // namespace nls
