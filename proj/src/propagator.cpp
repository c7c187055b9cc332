#include "nls/propagator.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nls/error.hpp"
#include "nls/fft.hpp"

namespace nls {
namespace {

constexpr int kUpsample = 16;
constexpr int kStencil = 8;

bool is_zero(const GridFunction& f) {
    return std::all_of(f.values().begin(), f.values().end(), [](const cplx& z) { return z == cplx{}; });
}

GridFunction evolve_multiplier(const GridFunction& f, double t) {
    if (t == 0.0) return f;
    auto c = spectrum(f);
    const auto k = f.grid().wavenumbers();
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -k[j] * k[j] * t);
    return from_spectrum(f.grid(), c);
}

// Windowed samples refined kUpsample times by spectral zero padding, read back with a
// local Lagrange stencil. Values outside the domain are zero.
class FineSampler {
public:
    explicit FineSampler(const GridFunction& f) : x_min_(f.grid().x_min()) {
        const std::size_t n = f.size();
        const std::size_t m = n * kUpsample;
        h_ = f.grid().dx() / kUpsample;
        const auto c = spectrum(f);
        std::vector<cplx> padded(m);
        for (std::size_t j = 0; j < n / 2; ++j) padded[j] = c[j];
        for (std::size_t j = n / 2 + 1; j < n; ++j) padded[m - n + j] = c[j];
        padded[n / 2] = 0.5 * c[n / 2];
        padded[m - n / 2] = 0.5 * c[n / 2];
        for (auto& z : padded) z *= static_cast<double>(kUpsample);
        values_ = fft::inverse(padded);
        for (int j = 0; j < kStencil; ++j) {
            weights_[j] = ((j % 2) ? -1.0 : 1.0) * std::tgamma(kStencil) /
                          (std::tgamma(j + 1) * std::tgamma(kStencil - j));
        }
    }

    cplx operator()(double y) const {
        const double s = (y - x_min_) / h_;
        const auto base = static_cast<std::ptrdiff_t>(std::floor(s)) - (kStencil / 2 - 1);
        const double local = s - static_cast<double>(base);
        cplx num{};
        double den = 0.0;
        for (int j = 0; j < kStencil; ++j) {
            const double d = local - j;
            const cplx v = at(base + j);
            if (d == 0.0) return v;
            const double w = weights_[j] / d;
            num += w * v;
            den += w;
        }
        return num / den;
    }

private:
    cplx at(std::ptrdiff_t i) const {
        if (i < 0 || i >= static_cast<std::ptrdiff_t>(values_.size())) return 0.0;
        return values_[static_cast<std::size_t>(i)];
    }

    double x_min_;
    double h_;
    std::vector<cplx> values_;
    std::array<double, kStencil> weights_{};
};

GridFunction evolve_kernel(const GridFunction& f, double t, const PropagatorBackend& backend) {
    const Grid& g = f.grid();
    if (g.topology() != Topology::Truncated) {
        throw Error(ErrorKind::UnsupportedTopology, "kernel propagator needs a truncated-line grid");
    }
    if (std::abs(t) < kKernelMinTime) {
        throw Error(ErrorKind::TimeTooSmall,
                    "kernel propagator needs |t| >= 1e-3; use the multiplier backend");
    }
    using Rule = boost::math::quadrature::gauss<double, kPanelNodes>;
    // Boost stores the non-negative half of the symmetric rule.
    std::vector<double> nodes;
    std::vector<double> weights;
    for (std::size_t j = 0; j < Rule::abscissa().size(); ++j) {
        const double a = Rule::abscissa()[j];
        const double w = Rule::weights()[j];
        nodes.push_back(a);
        weights.push_back(w);
        if (a != 0.0) {
            nodes.push_back(-a);
            weights.push_back(w);
        }
    }

    const FineSampler sample(f);
    const double radius = backend.radius_for(t);
    const double q = backend.nodes_per_oscillation;
    const double lo_edge = g.x_min();
    const double hi_edge = g.x_min() + g.length();
    const double band = std::numbers::pi / g.dx();
    const cplx prefactor = 1.0 / std::sqrt(cplx(0.0, 4.0 * std::numbers::pi * t));
    const double inv4t = 1.0 / (4.0 * t);

    std::vector<cplx> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.x(i);
        const double a = std::max(x - radius, lo_edge);
        const double b = std::min(x + radius, hi_edge);
        if (!(b > a)) continue;
        const double reach = std::max(x - a, b - x);
        const double omega = reach / (2.0 * std::abs(t)) + band;
        const double panel = kPanelNodes * (2.0 * std::numbers::pi / omega) / q;
        const auto n_panels = static_cast<std::size_t>(std::ceil((b - a) / panel));
        const double h = (b - a) / static_cast<double>(n_panels);
        cplx sum{};
        for (std::size_t p = 0; p < n_panels; ++p) {
            const double mid = a + (static_cast<double>(p) + 0.5) * h;
            cplx panel_sum{};
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                const double y = mid + 0.5 * h * nodes[j];
                const double r = x - y;
                panel_sum += weights[j] * std::polar(1.0, r * r * inv4t) * sample(y);
            }
            sum += panel_sum;
        }
        out[i] = prefactor * sum * (0.5 * h);
    }
    return GridFunction(g, std::move(out));
}

} // namespace

double PropagatorBackend::radius_for(double t) const {
    if (cutoff_radius) return *cutoff_radius;
    return 8.0 * std::sqrt(std::abs(t) * nodes_per_oscillation);
}

void PropagatorBackend::validate() const {
    if (kind != BackendKind::OscillatoryKernel) return;
    if (nodes_per_oscillation < 8) {
        throw Error(ErrorKind::InvalidArgument, "kernel backend needs q >= 8 nodes per oscillation");
    }
    if (cutoff_radius && !(*cutoff_radius > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "kernel cutoff radius must be positive");
    }
}

GridFunction free_evolve(const GridFunction& f, double t, const PropagatorBackend& backend) {
    if (!std::isfinite(t)) throw Error(ErrorKind::InvalidArgument, "evolution time must be finite");
    backend.validate();
    if (backend.kind == BackendKind::OscillatoryKernel) return evolve_kernel(f, t, backend);
    return evolve_multiplier(f, t);
}

std::vector<GridFunction> free_evolve_many(const GridFunction& f, std::span<const double> times) {
    const auto c = spectrum(f);
    const auto k = f.grid().wavenumbers();
    std::vector<GridFunction> out;
    out.reserve(times.size());
    std::vector<cplx> work(c.size());
    for (const double t : times) {
        for (std::size_t j = 0; j < c.size(); ++j) work[j] = c[j] * std::polar(1.0, -k[j] * k[j] * t);
        out.push_back(from_spectrum(f.grid(), work));
    }
    return out;
}

double unitarity_check(const GridFunction& f, double t, const PropagatorBackend& backend) {
    const double before = lp_norm(f, 2.0);
    if (before == 0.0) throw Error(ErrorKind::UndefinedRatio, "unitarity check of the zero function");
    const double after = lp_norm(free_evolve(f, t, backend), 2.0);
    return std::abs(after - before) / before;
}

double dispersive_ratio(const GridFunction& f, double t, double p) {
    if (!(p >= 2.0)) {
        throw Error(ErrorKind::OutOfLemmaRange, "dispersive ratio is defined for p in [2, inf]");
    }
    if (is_zero(f)) throw Error(ErrorKind::UndefinedRatio, "dispersive ratio of the zero function");
    // Spectral derivatives see the windowed datum, so the plain norm must too.
    const double data =
        lp_norm(differentiate(f, 2), p) + lp_norm(differentiate(f, 1), p) + lp_norm(apply_window(f), p);
    if (data == 0.0) throw Error(ErrorKind::UndefinedRatio, "vanishing denominator");
    const double evolved = lp_norm(evolve_multiplier(f, t), p);
    return evolved / ((1.0 + std::pow(std::abs(t), 1.5)) * data);
}

double sup_dispersive_ratio(const GridFunction& f, std::span<const double> times, double p) {
    double best = 0.0;
    for (const double t : times) best = std::max(best, dispersive_ratio(f, t, p));
    return best;
}

} // namespace nls
