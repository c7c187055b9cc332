#pragma once

#include <vector>

#include "nls/grid.hpp"
#include "nls/trajectory.hpp"

namespace nls {

enum class OracleScheme { StrangSplit, ExplicitRk4 };

struct OracleConfig {
    double dt = 1e-3;        // output interval
    OracleScheme scheme = OracleScheme::StrangSplit;
    bool dealias = true;
    int substeps = 1;        // integrator steps per output interval
};

// Direct pseudo-spectral integration of i u_t + u_xx = |u|^2 u on a periodic grid, one slice
// per output interval on [0, T].
//  strang: half free flight, exact phase rotation v -> exp(-i|v|^2 h) v, half free flight
//  rk4:    classical RK4 in the interaction picture (integrating factor)
Trajectory integrate_direct(const GridFunction& u0, double t_end, const OracleConfig& cfg = {});

struct CompareReport {
    double linf = 0.0;                 // max over nodes of max_x |a - b|
    double l2 = 0.0;                   // max over nodes of ||a - b||_2
    std::vector<double> linf_series;
    std::vector<double> l2_series;
};

CompareReport compare(const Trajectory& a, const Trajectory& b);

// A exp(i (k x - (k^2 + |A|^2) t)), the exact plane-wave solution.
GridFunction plane_wave(const Grid& grid, cplx amplitude, double k, double t);

// Free evolution of A exp(-x^2 / width): A (width / (width + 4it))^{1/2} exp(-x^2 / (width + 4it)).
GridFunction free_gaussian(const Grid& grid, cplx amplitude, double width, double t);

} // namespace nls
