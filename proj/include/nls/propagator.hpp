#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nls/grid.hpp"

namespace nls {

enum class BackendKind { FourierMultiplier, OscillatoryKernel };

// Kernel quadrature refuses |t| below this; the multiplier is exact there.
inline constexpr double kKernelMinTime = 1e-3;
// Gauss-Legendre nodes per kernel panel; panel rule has algebraic order 2 * kPanelNodes.
inline constexpr int kPanelNodes = 3;

struct PropagatorBackend {
    BackendKind kind = BackendKind::FourierMultiplier;
    // Quadrature nodes per phase oscillation (kernel only).
    int nodes_per_oscillation = 8;
    // Kernel cutoff |x - y| <= R. Unset means 8 sqrt(|t| q).
    std::optional<double> cutoff_radius;

    static PropagatorBackend multiplier() { return {}; }
    static PropagatorBackend kernel(int q, std::optional<double> radius = std::nullopt) {
        return {BackendKind::OscillatoryKernel, q, radius};
    }

    double radius_for(double t) const;
    void validate() const;
};

// Solution at time t of i u_t + u_xx = 0 with u(0) = f.
//  multiplier: mode k is multiplied by exp(-i k^2 t)
//  kernel:     (4 pi i t)^{-1/2} int_{|x-y|<=R} exp(i (x-y)^2 / (4t)) f(y) dy
GridFunction free_evolve(const GridFunction& f, double t, const PropagatorBackend& backend = {});

// Multiplier evolution of one datum to many times, sharing the forward transform.
std::vector<GridFunction> free_evolve_many(const GridFunction& f, std::span<const double> times);

// | ||e^{it d_xx} f||_2 - ||f||_2 | / ||f||_2
double unitarity_check(const GridFunction& f, double t, const PropagatorBackend& backend = {});

// ||e^{it d_xx} f||_p / [(1 + |t|^{3/2}) (||f''||_p + ||f'||_p + ||f||_p)], p in [2, inf].
double dispersive_ratio(const GridFunction& f, double t, double p);

// Supremum of dispersive_ratio over the supplied times.
double sup_dispersive_ratio(const GridFunction& f, std::span<const double> times, double p);

} // namespace nls
