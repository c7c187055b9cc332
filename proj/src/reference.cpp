#include "nls/reference.hpp"

#include <algorithm>
#include <cmath>

#include "nls/error.hpp"
#include "nls/fft.hpp"
#include "nls/picard.hpp"

namespace nls {
namespace {

using Coeffs = std::vector<cplx>;

void check_finite(const Coeffs& c) {
    for (const auto& z : c) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorKind::NumericalBlowup, "oracle state became non-finite");
        }
    }
}

// Nonlinear phase rotation over h applied to a spectrum, on the 2x padded grid when dealiasing.
void rotate(Coeffs& c, double h, bool dealias) {
    const std::size_t n = c.size();
    if (!dealias) {
        auto u = fft::inverse(c);
        for (auto& z : u) z *= std::polar(1.0, -std::norm(z) * h);
        c = fft::forward(u);
        return;
    }
    const std::size_t m = 2 * n;
    const std::size_t half = n / 2;
    Coeffs padded(m);
    for (std::size_t j = 0; j < half; ++j) padded[j] = 2.0 * c[j];
    for (std::size_t j = half + 1; j < n; ++j) padded[m - n + j] = 2.0 * c[j];
    padded[half] = c[half];
    padded[m - half] = c[half];
    auto w = fft::inverse(padded);
    for (auto& z : w) z *= std::polar(1.0, -std::norm(z) * h);
    const auto big = fft::forward(w);
    for (std::size_t j = 0; j < half; ++j) c[j] = 0.5 * big[j];
    for (std::size_t j = half + 1; j < n; ++j) c[j] = 0.5 * big[m - n + j];
    c[half] = 0.5 * (big[half] + big[m - half]);
}

// -i times the spectrum of |u|^2 u.
Coeffs rhs(const Grid& grid, const Coeffs& c, bool dealias) {
    Coeffs out;
    if (dealias) {
        out = cubic_spectrum(from_spectrum(grid, c));
    } else {
        auto u = fft::inverse(c);
        for (auto& z : u) z *= std::norm(z);
        out = fft::forward(u);
    }
    for (auto& z : out) z *= cplx(0.0, -1.0);
    return out;
}

class Stepper {
public:
    Stepper(const Grid& grid, double h, const OracleConfig& cfg) : grid_(grid), h_(h), cfg_(cfg) {
        const auto k = grid.wavenumbers();
        half_.resize(k.size());
        full_.resize(k.size());
        for (std::size_t j = 0; j < k.size(); ++j) {
            half_[j] = std::polar(1.0, -k[j] * k[j] * 0.5 * h);
            full_[j] = half_[j] * half_[j];
        }
    }

    void step(Coeffs& c) const {
        if (cfg_.scheme == OracleScheme::StrangSplit) {
            for (std::size_t j = 0; j < c.size(); ++j) c[j] *= half_[j];
            rotate(c, h_, cfg_.dealias);
            for (std::size_t j = 0; j < c.size(); ++j) c[j] *= half_[j];
            return;
        }
        const std::size_t n = c.size();
        const Coeffs a = scaled(rhs(grid_, c, cfg_.dealias));
        Coeffs tmp(n);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = half_[j] * (c[j] + 0.5 * a[j]);
        const Coeffs b = scaled(rhs(grid_, tmp, cfg_.dealias));
        for (std::size_t j = 0; j < n; ++j) tmp[j] = half_[j] * c[j] + 0.5 * b[j];
        const Coeffs d2 = scaled(rhs(grid_, tmp, cfg_.dealias));
        for (std::size_t j = 0; j < n; ++j) tmp[j] = full_[j] * c[j] + half_[j] * d2[j];
        const Coeffs d = scaled(rhs(grid_, tmp, cfg_.dealias));
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = full_[j] * c[j] + (full_[j] * a[j] + 2.0 * half_[j] * (b[j] + d2[j]) + d[j]) / 6.0;
        }
    }

private:
    Coeffs scaled(Coeffs v) const {
        for (auto& z : v) z *= h_;
        return v;
    }

    Grid grid_;
    double h_;
    OracleConfig cfg_;
    Coeffs half_;
    Coeffs full_;
};

} // namespace

Trajectory integrate_direct(const GridFunction& u0, double t_end, const OracleConfig& cfg) {
    if (u0.grid().topology() != Topology::Periodic) {
        throw Error(ErrorKind::UnsupportedTopology, "the direct integrator runs on periodic grids only");
    }
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "integration time must be positive");
    if (!(cfg.dt > 0.0) || cfg.substeps < 1) {
        throw Error(ErrorKind::InvalidArgument, "oracle needs dt > 0 and substeps >= 1");
    }
    const TimeGrid tg = TimeGrid::covering(0.0, t_end, cfg.dt);
    const Stepper stepper(u0.grid(), tg.dt() / cfg.substeps, cfg);

    Coeffs c = spectrum(u0);
    std::vector<GridFunction> slices;
    slices.reserve(tg.n_nodes());
    slices.push_back(u0);
    for (std::size_t m = 1; m < tg.n_nodes(); ++m) {
        for (int s = 0; s < cfg.substeps; ++s) stepper.step(c);
        check_finite(c);
        slices.push_back(from_spectrum(u0.grid(), c));
    }
    return Trajectory(tg, std::move(slices));
}

CompareReport compare(const Trajectory& a, const Trajectory& b) {
    require_same_layout(a, b);
    CompareReport r;
    for (std::size_t m = 0; m < a.size(); ++m) {
        const auto diff = a[m] - b[m];
        r.linf_series.push_back(lp_norm(diff, kInf));
        r.l2_series.push_back(lp_norm(diff, 2.0));
    }
    r.linf = *std::max_element(r.linf_series.begin(), r.linf_series.end());
    r.l2 = *std::max_element(r.l2_series.begin(), r.l2_series.end());
    return r;
}

GridFunction plane_wave(const Grid& grid, cplx amplitude, double k, double t) {
    const double omega = k * k + std::norm(amplitude);
    return GridFunction::sample(grid, [&](double x) { return amplitude * std::polar(1.0, k * x - omega * t); });
}

GridFunction free_gaussian(const Grid& grid, cplx amplitude, double width, double t) {
    const cplx denom(width, 4.0 * t);
    const cplx pre = amplitude * std::sqrt(width / denom);
    return GridFunction::sample(grid, [&](double x) { return pre * std::exp(-x * x / denom); });
}

} // namespace nls
