#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "nls/grid.hpp"
#include "nls/picard.hpp"
#include "nls/trajectory.hpp"

namespace nls {

// int |v|^2 dx (no 1/2).
double mass(const GridFunction& v);

// 1/2 int |v_x|^2 + 1/4 int |v|^4.
double energy(const GridFunction& v);

// Re int f conj(g) dx.
double pairing(const GridFunction& f, const GridFunction& g);

// (v, |u_l|^2 u_l) + (|v|^2, |u_l|^2) + 1/2 (v^2, u_l^2) + (|v|^2 v, u_l)
double interaction_functional(const GridFunction& v, const GridFunction& u_l);

// mass(v)/2 + energy(v) + interaction_functional(v, u_l)
double modified_energy(const GridFunction& v, const GridFunction& u_l);

// Exact rate of change of mass(v) when i v_t + v_xx = |u_l + v|^2 (u_l + v) - F and
// i (u_l)_t + (u_l)_xx = F:
//   2 [ (iv, |u_l|^2 u_l - F) + (i|v|^2 v, u_l) + (i v^2, u_l^2) ].
double mass_derivative_rhs(const GridFunction& v, const GridFunction& u_l);
double mass_derivative_rhs(const GridFunction& v, const GridFunction& u_l, const GridFunction& forcing);

struct DiagnosticsSeries {
    TimeGrid time_grid;
    std::vector<double> mass;            // int |v|^2
    std::vector<double> energy;
    std::vector<double> f_interaction;
    std::vector<double> modified_energy; // mass/2 + energy + f
    std::vector<double> v_l2;
};

DiagnosticsSeries compute_series(const Trajectory& v, const Trajectory& u_l);
// Uses the decomposition's remainder and linear part.
DiagnosticsSeries compute_series(const PicardDecomposition& dec);

struct GronwallVerdict {
    double c_fit = 0.0;
    bool pass = false;
};

// Smallest C >= 0 with log(E(t) + 1) <= log(E(0) + 1) + C (t - t0) at every node.
GronwallVerdict gronwall_verdict(const DiagnosticsSeries& series);
GronwallVerdict gronwall_verdict(std::span<const double> times, std::span<const double> modified);

// max |f| / (M^{1/2} + M^{1/3} E^{1/3} + M^{1/6} E^{2/3}) over nodes with M > 0, M = mass/2.
double holder_constant(const DiagnosticsSeries& series);

// Centered differences (y[m+1] - y[m-1]) / (2 dt) at interior nodes m = 1..n-2.
std::vector<double> centered_difference(std::span<const double> values, double dt);

// Columns t,mass,energy,f,modified_energy,v_l2 at 17 significant digits.
void write_csv(std::ostream& out, const DiagnosticsSeries& series);

} // namespace nls
