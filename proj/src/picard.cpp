#include "nls/picard.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nls/error.hpp"
#include "nls/fft.hpp"

namespace nls {
namespace {

using Spectra = std::vector<std::vector<cplx>>;

std::vector<double> node_times(const TimeGrid& tg) {
    std::vector<double> lags(tg.n_nodes());
    for (std::size_t m = 0; m < lags.size(); ++m) lags[m] = tg.time(m) - tg.t_start();
    return lags;
}

GridFunction propagate(const GridFunction& f, double t, const PropagatorBackend& backend) {
    if (backend.kind == BackendKind::OscillatoryKernel && std::abs(t) < kKernelMinTime) {
        return free_evolve(f, t, PropagatorBackend::multiplier());
    }
    return free_evolve(f, t, backend);
}

// Interaction-picture cumulative trapezoid: Dhat_m = -i e^{-ik^2 t_m} sum_j w_j e^{ik^2 tau_j} Fhat_j.
// Identical to propagating every quadrature node with the multiplier and summing.
Trajectory duhamel_multiplier(const Grid& grid, const TimeGrid& tg, const Spectra& forcing) {
    const auto k = grid.wavenumbers();
    const std::size_t n = grid.size();
    const double half_dt = 0.5 * tg.dt();
    std::vector<cplx> acc(n);
    std::vector<cplx> prev(n);
    std::vector<cplx> cur(n);
    std::vector<cplx> out(n);
    std::vector<GridFunction> slices;
    slices.reserve(tg.n_nodes());
    for (std::size_t m = 0; m < tg.n_nodes(); ++m) {
        const double tau = tg.time(m) - tg.t_start();
        for (std::size_t j = 0; j < n; ++j) cur[j] = forcing[m][j] * std::polar(1.0, k[j] * k[j] * tau);
        if (m == 0) {
            slices.push_back(GridFunction::zeros(grid));
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                acc[j] += half_dt * (prev[j] + cur[j]);
                out[j] = cplx(0.0, -1.0) * std::polar(1.0, -k[j] * k[j] * tau) * acc[j];
            }
            slices.push_back(from_spectrum(grid, out));
        }
        std::swap(prev, cur);
    }
    return Trajectory(tg, std::move(slices));
}

Trajectory duhamel_kernel(const Trajectory& forcing, const PropagatorBackend& backend) {
    const TimeGrid& tg = forcing.time_grid();
    const Grid& grid = forcing.grid();
    std::vector<GridFunction> slices;
    slices.reserve(tg.n_nodes());
    slices.push_back(GridFunction::zeros(grid));
    for (std::size_t m = 1; m < tg.n_nodes(); ++m) {
        std::vector<cplx> sum(grid.size());
        for (std::size_t j = 0; j <= m; ++j) {
            const double w = (j == 0 || j == m) ? 0.5 * tg.dt() : tg.dt();
            const auto evolved = propagate(forcing[j], tg.time(m) - tg.time(j), backend);
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w * evolved[i];
        }
        for (auto& z : sum) z *= cplx(0.0, -1.0);
        slices.push_back(GridFunction(grid, std::move(sum)));
    }
    return Trajectory(tg, std::move(slices));
}

Spectra cubic_spectra(const Trajectory& u) {
    Spectra out;
    out.reserve(u.size());
    for (const auto& s : u.slices()) out.push_back(cubic_spectrum(s));
    return out;
}

Trajectory duhamel_of_cubic(const Trajectory& u, const PropagatorBackend& backend) {
    if (backend.kind == BackendKind::OscillatoryKernel) return duhamel_kernel(cubic(u), backend);
    return duhamel_multiplier(u.grid(), u.time_grid(), cubic_spectra(u));
}

// D(|a + b|^2 (a + b) - |a|^2 a), expanded so that small b loses no relative precision.
Trajectory duhamel_of_increment(const Trajectory& a, const Trajectory& b, const PropagatorBackend& backend) {
    require_same_layout(a, b);
    Spectra spectra;
    spectra.reserve(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) spectra.push_back(cubic_increment_spectrum(a[m], b[m]));
    if (backend.kind == BackendKind::OscillatoryKernel) {
        std::vector<GridFunction> slices;
        for (const auto& c : spectra) slices.push_back(from_spectrum(a.grid(), c));
        return duhamel_kernel(Trajectory(a.time_grid(), std::move(slices)), backend);
    }
    return duhamel_multiplier(a.grid(), a.time_grid(), spectra);
}

double sup_lp(const Trajectory& u, double p) {
    double best = 0.0;
    for (const auto& s : u.slices()) best = std::max(best, lp_norm(s, p));
    return best;
}

} // namespace

bool StrichartzPair::admissible() const noexcept {
    if (!(p >= 4.0) || !(q >= 2.0)) return false;
    const double lhs = std::isinf(p) ? 0.0 : 2.0 / p;
    const double rhs = 0.5 - (std::isinf(q) ? 0.0 : 1.0 / q);
    return std::abs(lhs - rhs) <= 1e-12;
}

std::vector<cplx> cubic_spectrum(const GridFunction& u) {
    const std::size_t n = u.size();
    const std::size_t m = 2 * n;
    const std::size_t half = n / 2;
    const auto c = spectrum(u);
    std::vector<cplx> padded(m);
    for (std::size_t j = 0; j < half; ++j) padded[j] = 2.0 * c[j];
    for (std::size_t j = half + 1; j < n; ++j) padded[m - n + j] = 2.0 * c[j];
    padded[half] = c[half];
    padded[m - half] = c[half];
    auto w = fft::inverse(padded);
    for (auto& z : w) z *= std::norm(z);
    const auto big = fft::forward(w);
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < half; ++j) out[j] = 0.5 * big[j];
    for (std::size_t j = half + 1; j < n; ++j) out[j] = 0.5 * big[m - n + j];
    out[half] = 0.5 * (big[half] + big[m - half]);
    return out;
}

std::vector<cplx> cubic_increment_spectrum(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a.grid(), b.grid());
    const std::size_t n = a.size();
    const std::size_t m = 2 * n;
    const std::size_t half = n / 2;
    auto refine = [&](const GridFunction& f) {
        const auto c = spectrum(f);
        std::vector<cplx> padded(m);
        for (std::size_t j = 0; j < half; ++j) padded[j] = 2.0 * c[j];
        for (std::size_t j = half + 1; j < n; ++j) padded[m - n + j] = 2.0 * c[j];
        padded[half] = c[half];
        padded[m - half] = c[half];
        return fft::inverse(padded);
    };
    const auto fa = refine(a);
    auto fb = refine(b);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx x = fa[i];
        const cplx y = fb[i];
        const double ax = std::norm(x);
        const double ay = std::norm(y);
        fb[i] = x * x * std::conj(y) + 2.0 * ax * y + 2.0 * x * ay + y * y * std::conj(x) + ay * y;
    }
    const auto big = fft::forward(fb);
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < half; ++j) out[j] = 0.5 * big[j];
    for (std::size_t j = half + 1; j < n; ++j) out[j] = 0.5 * big[m - n + j];
    out[half] = 0.5 * (big[half] + big[m - half]);
    return out;
}

GridFunction cubic(const GridFunction& u) { return from_spectrum(u.grid(), cubic_spectrum(u)); }

Trajectory cubic(const Trajectory& u) {
    std::vector<GridFunction> out;
    out.reserve(u.size());
    for (const auto& s : u.slices()) out.push_back(cubic(s));
    return Trajectory(u.time_grid(), std::move(out));
}

Trajectory duhamel(const Trajectory& forcing, const PropagatorBackend& backend) {
    backend.validate();
    if (backend.kind == BackendKind::OscillatoryKernel) return duhamel_kernel(forcing, backend);
    Spectra spectra;
    spectra.reserve(forcing.size());
    for (const auto& s : forcing.slices()) spectra.push_back(spectrum(s));
    return duhamel_multiplier(forcing.grid(), forcing.time_grid(), spectra);
}

Trajectory PicardDecomposition::partial_sum(int count) const {
    if (count < 0 || count > static_cast<int>(iterates.size())) {
        throw Error(ErrorKind::InvalidArgument, "partial sum index out of range");
    }
    Trajectory sum = Trajectory::zeros(linear_part.grid(), linear_part.time_grid());
    for (int j = 0; j < count; ++j) sum = sum + iterates[static_cast<std::size_t>(j)];
    return sum;
}

Trajectory PicardDecomposition::forcing() const {
    if (depth < 2) return Trajectory::zeros(linear_part.grid(), linear_part.time_grid());
    return cubic(partial_sum(depth - 1));
}

PicardDecomposition picard_iterates(const GridFunction& u0, int n, const TimeGrid& time_grid,
                                    const PropagatorBackend& backend, double lebesgue_base) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Picard depth must be >= 1");
    backend.validate();
    const double base = lebesgue_base > 0.0 ? lebesgue_base : 4.0 * n + 2.0;

    std::vector<GridFunction> free;
    if (backend.kind == BackendKind::FourierMultiplier) {
        free = free_evolve_many(u0, node_times(time_grid));
    } else {
        for (const double t : node_times(time_grid)) free.push_back(propagate(u0, t, backend));
    }

    PicardDecomposition dec{.depth = n,
                            .iterates = {},
                            .linear_part = Trajectory(time_grid, std::move(free)),
                            .remainder = std::nullopt,
                            .level_norms = {},
                            .level_exponents = {}};
    dec.iterates.push_back(dec.linear_part);
    // u^j = D(N(S_{j-1})) - (u^1 + ... + u^{j-1}) = D(N(S_{j-2} + u^{j-1}) - N(S_{j-2})), S_{-1} = 0.
    Trajectory below = Trajectory::zeros(u0.grid(), time_grid);
    for (int j = 1; j < n; ++j) {
        Trajectory next = duhamel_of_increment(below, dec.iterates.back(), backend);
        below = dec.linear_part;
        dec.linear_part = dec.linear_part + next;
        dec.iterates.push_back(std::move(next));
    }
    for (int j = 0; j < n; ++j) {
        const double p = base / (2.0 * j + 1.0);
        dec.level_exponents.push_back(p);
        dec.level_norms.push_back(sup_lp(dec.iterates[static_cast<std::size_t>(j)], p));
    }
    return dec;
}

double mixed_norm(const Trajectory& u, double p_t, double q_x, std::optional<TimeInterval> interval) {
    if (!(p_t >= 1.0)) throw Error(ErrorKind::InvalidExponent, "time exponent must be >= 1");
    const TimeGrid& tg = u.time_grid();
    const TimeInterval iv = interval.value_or(TimeInterval{tg.t_start(), tg.t_end()});
    const double slack = 1e-9 * tg.dt();
    if (!(iv.end >= iv.begin) || iv.begin < tg.t_start() - slack || iv.end > tg.t_end() + slack) {
        throw Error(ErrorKind::InvalidInterval, "interval is empty or leaves the time grid");
    }
    std::vector<double> norms;
    for (std::size_t m = 0; m < tg.n_nodes(); ++m) {
        const double t = tg.time(m);
        if (t >= iv.begin - slack && t <= iv.end + slack) norms.push_back(lp_norm(u[m], q_x));
    }
    if (norms.empty() || (!std::isinf(p_t) && norms.size() < 2)) {
        throw Error(ErrorKind::InvalidInterval, "interval contains too few time nodes");
    }
    if (std::isinf(p_t)) return *std::max_element(norms.begin(), norms.end());
    double sum = 0.0;
    for (std::size_t m = 0; m < norms.size(); ++m) {
        const double w = (m == 0 || m + 1 == norms.size()) ? 0.5 : 1.0;
        sum += w * std::pow(norms[m], p_t);
    }
    return std::pow(sum * tg.dt(), 1.0 / p_t);
}

double s0_norm(const Trajectory& u, std::optional<TimeInterval> interval) {
    return std::max(mixed_norm(u, kInf, 2.0, interval), mixed_norm(u, 4.0, kInf, interval));
}

RemainderSolution solve_remainder(const PicardDecomposition& dec, const RemainderOptions& options,
                                  const PropagatorBackend& backend) {
    if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (options.max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
    if (dec.iterates.empty()) throw Error(ErrorKind::InvalidArgument, "decomposition has no iterates");

    const Trajectory& u_l = dec.linear_part;
    const Trajectory& top = dec.iterates.back();
    const Trajectory below = u_l - top;
    const double ceiling =
        options.blowup_factor * std::max(lp_norm(dec.iterates.front()[0], 2.0), 1e-300);

    // sum_{j>=1} u^j = D(N(S_{n-2})), so the map is D(N(S_{n-2} + u^{n-1} + v) - N(S_{n-2})).
    auto apply = [&](const Trajectory& v) { return duhamel_of_increment(below, top + v, backend); };

    RemainderSolution out{Trajectory::zeros(u_l.grid(), u_l.time_grid()), 0, 0.0, {}};
    bool converged = false;
    try {
        for (int it = 1; it <= options.max_iter; ++it) {
            Trajectory next = apply(out.v);
            const double diff = s0_norm(next - out.v);
            out.differences.push_back(diff);
            out.v = std::move(next);
            out.iterations = it;
            for (const auto& s : out.v.slices()) {
                if (lp_norm(s, 2.0) > ceiling) {
                    throw Error(ErrorKind::BlowupDetected,
                                "||v(t)||_2 exceeded the configured ceiling during iteration " +
                                    std::to_string(it));
                }
            }
            const double threshold = options.relative ? options.tol * s0_norm(out.v) : options.tol;
            if (diff <= threshold) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            const auto& d = out.differences;
            const bool growing = d.size() >= 2 && d.back() > d[d.size() - 2];
            throw Error(ErrorKind::ContractionFailure,
                        std::string("no convergence after ") + std::to_string(options.max_iter) +
                            " iterations (last difference " + std::to_string(d.back()) +
                            (growing ? ", growing)" : ", stalled)"));
        }
        out.residual = s0_norm(apply(out.v) - out.v);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonFinite) {
            throw Error(ErrorKind::NumericalBlowup, "non-finite values in the remainder iteration");
        }
        throw;
    }
    return out;
}

NlsSolution solve_nls(const GridFunction& u0, int n, const TimeGrid& time_grid, const SolverConfig& cfg) {
    PicardDecomposition dec = picard_iterates(u0, n, time_grid, cfg.backend, cfg.lebesgue_base);
    RemainderSolution rem = solve_remainder(dec, cfg.remainder, cfg.backend);
    std::vector<double> v_l2;
    v_l2.reserve(rem.v.size());
    for (const auto& s : rem.v.slices()) v_l2.push_back(lp_norm(s, 2.0));
    Trajectory u = dec.linear_part + rem.v;
    dec.remainder = std::move(rem.v);
    return NlsSolution{std::move(u), std::move(dec), rem.iterations, rem.residual, std::move(rem.differences),
                       std::move(v_l2)};
}

Trajectory solve_nls_backward(const GridFunction& u0, int n, const TimeGrid& time_grid, const SolverConfig& cfg) {
    const TimeGrid forward(0.0, time_grid.dt(), time_grid.n_steps());
    const NlsSolution w = solve_nls(u0.conj(), n, forward, cfg);
    std::vector<GridFunction> slices;
    slices.reserve(forward.n_nodes());
    for (std::size_t m = 0; m < forward.n_nodes(); ++m) {
        slices.push_back(w.u[forward.n_steps() - m].conj());
    }
    return Trajectory(TimeGrid(-forward.t_end(), forward.dt(), forward.n_steps()), std::move(slices));
}

double duhamel_residual(const Trajectory& u, const PropagatorBackend& backend) {
    std::vector<GridFunction> free;
    if (backend.kind == BackendKind::FourierMultiplier) {
        free = free_evolve_many(u[0], node_times(u.time_grid()));
    } else {
        for (const double t : node_times(u.time_grid())) free.push_back(propagate(u[0], t, backend));
    }
    const Trajectory linear(u.time_grid(), std::move(free));
    return s0_norm(u - linear - duhamel_of_cubic(u, backend));
}

RescaledData rescale_to_smallness(const GridFunction& u0, const SobolevSpec& spec, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "target smallness must be positive");
    const double start = sobolev_norm(u0, spec);
    if (!(start > 0.0) || !std::isfinite(start)) {
        throw Error(ErrorKind::RescaleFailure, "data norm must be finite and positive");
    }
    if (start <= eps) return RescaledData{u0, 1.0, start};

    auto norm_at = [&](double log_lambda) { return sobolev_norm(scale_data(u0, std::exp(log_lambda)), spec); };
    double lo = std::log(1e-12);
    double hi = 0.0;
    if (norm_at(lo) > eps) {
        throw Error(ErrorKind::RescaleFailure, "no scale factor in [1e-12, 1] reaches the target norm");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (norm_at(mid) <= eps ? lo : hi) = mid;
    }
    const double lambda = std::exp(lo);
    GridFunction data = scale_data(u0, lambda);
    const double norm = sobolev_norm(data, spec);
    if (norm > eps || norm < 0.5 * eps) {
        throw Error(ErrorKind::RescaleFailure, "bisection could not bracket the target norm");
    }
    return RescaledData{std::move(data), lambda, norm};
}

} // namespace nls
