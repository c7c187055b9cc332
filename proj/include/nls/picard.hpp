#pragma once

#include <optional>
#include <vector>

#include "nls/grid.hpp"
#include "nls/propagator.hpp"
#include "nls/trajectory.hpp"

namespace nls {

// Time-integrability exponent p and space exponent q of L_t^p L_x^q.
struct StrichartzPair {
    double p;
    double q;

    // 2/p = 1/2 - 1/q with 4 <= p <= inf.
    bool admissible() const noexcept;
};

// Spectrum (unnormalized DFT) of |u|^2 u computed on a 2x zero-padded grid and projected
// back onto the resolved modes.
std::vector<cplx> cubic_spectrum(const GridFunction& u);
GridFunction cubic(const GridFunction& u);
// Spectrum of |a + b|^2 (a + b) - |a|^2 a, dealiased as above and expanded in b.
std::vector<cplx> cubic_increment_spectrum(const GridFunction& a, const GridFunction& b);
Trajectory cubic(const Trajectory& u);

// t -> -i int_{t_start}^t e^{i(t - tau) d_xx} F(tau) dtau, composite trapezoid on the nodes of F.
// The kernel backend falls back to the multiplier for lags below kKernelMinTime.
Trajectory duhamel(const Trajectory& forcing, const PropagatorBackend& backend = {});

struct PicardDecomposition {
    int depth = 0;
    std::vector<Trajectory> iterates;  // u^0 ... u^{depth-1}
    Trajectory linear_part;            // u_l, the pointwise sum of the iterates
    std::optional<Trajectory> remainder;
    std::vector<double> level_norms;     // sup_t ||u^j(t)||_{p_j}
    std::vector<double> level_exponents; // p_j = base / (2j + 1)

    // Sum of the first `count` iterates; zeros when count == 0.
    Trajectory partial_sum(int count) const;
    // |sum_{j<=n-2} u^j|^2 (sum_{j<=n-2} u^j), the forcing of the linear part (zero for n = 1).
    Trajectory forcing() const;
};

// Iterate hierarchy u^0 = e^{it d_xx} u0, u^1 = D(|u^0|^2 u^0) and
// u^j = D(|S_{j-1}|^2 S_{j-1}) - (u^1 + ... + u^{j-1}), with S_j = u^0 + ... + u^j, so that
// u^1 + ... + u^j = D(|S_{j-1}|^2 S_{j-1}) for every j.
// `lebesgue_base` sets p_j = base / (2j + 1); 0 selects 4n + 2.
PicardDecomposition picard_iterates(const GridFunction& u0, int n, const TimeGrid& time_grid,
                                    const PropagatorBackend& backend = {}, double lebesgue_base = 0.0);

struct TimeInterval {
    double begin;
    double end;
};

// (int ||u(t)||_q^p dt)^{1/p} by trapezoid over the nodes in the interval; max over nodes for p = inf.
double mixed_norm(const Trajectory& u, double p_t, double q_x, std::optional<TimeInterval> interval = std::nullopt);

// max(L_t^inf L_x^2, L_t^4 L_x^inf)
double s0_norm(const Trajectory& u, std::optional<TimeInterval> interval = std::nullopt);

struct RemainderOptions {
    double tol = 1e-8;
    int max_iter = 50;
    // Stop on ||v_{k+1} - v_k||_S0 < tol * ||v_{k+1}||_S0 instead of the absolute test.
    bool relative = false;
    // ||v(t)||_2 may not exceed this multiple of ||u0||_2.
    double blowup_factor = 1e6;
};

struct RemainderSolution {
    Trajectory v;
    int iterations = 0;
    double residual = 0.0;           // S0 norm of v - [D(|u_l + v|^2 (u_l + v)) - sum_{j>=1} u^j]
    std::vector<double> differences; // S0 norm of successive differences
};

// Fixed point v = D(|u_l + v|^2 (u_l + v)) - sum_{j>=1} u^j iterated from v = 0.
RemainderSolution solve_remainder(const PicardDecomposition& dec, const RemainderOptions& options = {},
                                  const PropagatorBackend& backend = {});

struct SolverConfig {
    PropagatorBackend backend;
    RemainderOptions remainder;
    double lebesgue_base = 0.0;
};

struct NlsSolution {
    Trajectory u;
    PicardDecomposition decomposition;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> differences;
    std::vector<double> v_l2; // ||v(t)||_2 per node
};

// u = u_l + v on the time grid, for i u_t + u_xx = |u|^2 u.
NlsSolution solve_nls(const GridFunction& u0, int n, const TimeGrid& time_grid, const SolverConfig& cfg = {});

// Solution on [-T, 0] (ascending nodes) via u(-t) = conj(w(t)), w solving with conj(u0).
Trajectory solve_nls_backward(const GridFunction& u0, int n, const TimeGrid& time_grid,
                              const SolverConfig& cfg = {});

// S0 norm of u - e^{it d_xx} u(0) - D(|u|^2 u).
double duhamel_residual(const Trajectory& u, const PropagatorBackend& backend = {});

struct RescaledData {
    GridFunction data;
    double lambda;
    double norm;
};

// lambda u0(lambda x) with lambda <= 1 chosen by bisection so the Sobolev norm lies in [eps/2, eps].
RescaledData rescale_to_smallness(const GridFunction& u0, const SobolevSpec& spec, double eps);

} // namespace nls
