#include "nls/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "nls/error.hpp"
#include "nls/fft.hpp"

namespace nls {
namespace {

constexpr double kPlateauFraction = 0.7;

double smooth_step(double tau) {
    auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    if (tau <= 0.0) return 0.0;
    if (tau >= 1.0) return 1.0;
    const double a = bump(tau);
    return a / (a + bump(1.0 - tau));
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace

Grid::Grid(double x_min, double dx, std::size_t n_points, Topology topology)
    : x_min_(x_min), dx_(dx), n_(n_points), topology_(topology) {
    if (!std::isfinite(x_min) || !std::isfinite(dx) || dx <= 0.0) {
        throw Error(ErrorKind::InvalidArgument, "grid spacing must be finite and positive");
    }
    if (n_points < 8 || !std::has_single_bit(n_points)) {
        throw Error(ErrorKind::InvalidArgument,
                    "grid size must be a power of two >= 8, got " + std::to_string(n_points));
    }
}

Grid Grid::periodic(double x_min, double length, std::size_t n_points) {
    return Grid(x_min, length / static_cast<double>(n_points), n_points, Topology::Periodic);
}

Grid Grid::truncated(double x_min, double length, std::size_t n_points) {
    return Grid(x_min, length / static_cast<double>(n_points), n_points, Topology::Truncated);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

std::vector<double> Grid::wavenumbers() const {
    std::vector<double> k(n_);
    const double base = 2.0 * std::numbers::pi / length();
    const auto n = static_cast<std::ptrdiff_t>(n_);
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const std::ptrdiff_t m = j < n / 2 ? j : j - n;
        k[static_cast<std::size_t>(j)] = base * static_cast<double>(m);
    }
    return k;
}

std::vector<double> Grid::window() const {
    std::vector<double> w(n_, 1.0);
    if (topology_ == Topology::Periodic) return w;
    const double taper = 0.5 * (1.0 - kPlateauFraction);
    for (std::size_t i = 0; i < n_; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(n_);
        if (s < taper) {
            w[i] = smooth_step(s / taper);
        } else if (s > 1.0 - taper) {
            w[i] = smooth_step((1.0 - s) / taper);
        }
    }
    return w;
}

bool Grid::matches(const Grid& other) const noexcept {
    return n_ == other.n_ && topology_ == other.topology_ && close(dx_, other.dx_) &&
           (close(x_min_, other.x_min_) || std::abs(x_min_ - other.x_min_) <= 1e-12 * length());
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!a.matches(b)) {
        throw Error(ErrorKind::GridMismatch, "operands live on different grids");
    }
}

GridFunction::GridFunction(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw Error(ErrorKind::InvalidArgument, "value count does not match grid size");
    }
    for (const auto& z : values_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorKind::NonFinite, "grid function contains NaN or Inf");
        }
    }
}

GridFunction GridFunction::zeros(const Grid& grid) {
    return GridFunction(grid, std::vector<cplx>(grid.size()));
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
    require_same_grid(grid_, other.grid_);
    std::vector<cplx> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
    require_same_grid(grid_, other.grid_);
    std::vector<cplx> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::operator*(cplx c) const {
    std::vector<cplx> v(values_);
    for (auto& z : v) z *= c;
    return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::conj() const {
    std::vector<cplx> v(values_);
    for (auto& z : v) z = std::conj(z);
    return GridFunction(grid_, std::move(v));
}

SobolevSpec::SobolevSpec(int order_, double p_) : order(order_), p(p_) {
    if (order < 0) throw Error(ErrorKind::InvalidOrder, "Sobolev order must be >= 0");
    if (!(p >= 1.0)) throw Error(ErrorKind::InvalidExponent, "Lebesgue exponent must be >= 1");
}

double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorKind::InvalidExponent, "lp_norm requires p >= 1, got " + std::to_string(p));
    }
    const auto v = f.values();
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (const auto& z : v) sum += std::norm(z);
        return std::sqrt(sum * f.grid().dx());
    }
    for (const auto& z : v) sum += std::pow(std::abs(z), p);
    return std::pow(sum * f.grid().dx(), 1.0 / p);
}

GridFunction apply_window(const GridFunction& f) {
    if (f.grid().topology() == Topology::Periodic) return f;
    const auto w = f.grid().window();
    std::vector<cplx> v(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
    return GridFunction(f.grid(), std::move(v));
}

std::vector<cplx> spectrum(const GridFunction& f) {
    if (f.grid().topology() == Topology::Periodic) return fft::forward(f.values());
    return fft::forward(apply_window(f).values());
}

GridFunction from_spectrum(const Grid& grid, std::span<const cplx> coeffs) {
    if (coeffs.size() != grid.size()) {
        throw Error(ErrorKind::InvalidArgument, "spectrum length does not match grid size");
    }
    return GridFunction(grid, fft::inverse(coeffs));
}

GridFunction differentiate(const GridFunction& f, int m) {
    if (m <= 0) {
        throw Error(ErrorKind::InvalidOrder, "derivative order must be >= 1, got " + std::to_string(m));
    }
    auto c = spectrum(f);
    const auto k = f.grid().wavenumbers();
    const std::size_t nyquist = f.size() / 2;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == nyquist && m % 2 == 1) {
            c[j] = 0.0;
            continue;
        }
        c[j] *= std::pow(cplx(0.0, k[j]), m);
    }
    return from_spectrum(f.grid(), c);
}

double sobolev_norm(const GridFunction& f, const SobolevSpec& spec) {
    double total = lp_norm(f, spec.p);
    for (int j = 1; j <= spec.order; ++j) {
        total += lp_norm(differentiate(f, j), spec.p);
    }
    return total;
}

double homogeneous_hs_norm(const GridFunction& f, double s, ZeroMode zero_mode) {
    if (!(s >= -1.0 && s <= 3.0)) {
        throw Error(ErrorKind::InvalidExponent, "Sobolev index must lie in [-1, 3]");
    }
    const auto c = spectrum(f);
    const auto k = f.grid().wavenumbers();
    const double weight = f.grid().dx() / static_cast<double>(f.size());
    double total = 0.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        total += std::pow(std::abs(k[j]), 2.0 * s) * std::norm(c[j]);
    }
    const double zero = std::norm(c[0]);
    if (s == 0.0) {
        total += zero;
    } else if (s < 0.0 && zero_mode == ZeroMode::Reject) {
        double all = zero;
        for (std::size_t j = 1; j < c.size(); ++j) all += std::norm(c[j]);
        if (zero > 1e-24 * all) {
            throw Error(ErrorKind::UndefinedAtZeroMode,
                        "negative-index norm requested for data with non-negligible mean");
        }
    }
    return std::sqrt(total * weight);
}

GridFunction scale_data(const GridFunction& f, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::InvalidScale, "scale factor must be positive and finite");
    }
    if (lambda == 1.0) return f;
    const Grid& g = f.grid();
    Grid scaled(g.x_min() / lambda, g.dx() / lambda, g.size(), g.topology());
    std::vector<cplx> v(f.values().begin(), f.values().end());
    for (auto& z : v) z *= lambda;
    return GridFunction(scaled, std::move(v));
}

GridFunction scale_data(const GridFunction& f, double lambda, const Grid& target) {
    return resample(scale_data(f, lambda), target);
}

namespace {

// Evaluates (1/N) sum_k c_k exp(i k (x - x_min)) with the Nyquist mode split symmetrically.
cplx evaluate_series(const Grid& g, std::span<const cplx> c, std::span<const double> k, double x) {
    const std::size_t n = g.size();
    const double xi = x - g.x_min();
    cplx sum = c[0];
    for (std::size_t j = 1; j < n; ++j) {
        if (j == n / 2) {
            sum += c[j] * std::cos(k[j] * xi);
        } else {
            sum += c[j] * std::polar(1.0, k[j] * xi);
        }
    }
    return sum / static_cast<double>(n);
}

bool outside(const Grid& g, double x) {
    return x < g.x_min() - 1e-12 * g.length() || x > g.x_min() + g.length() - g.dx() + 1e-12 * g.length();
}

} // namespace

cplx interpolate(const GridFunction& f, double x) {
    const Grid& g = f.grid();
    if (g.topology() == Topology::Truncated && outside(g, x)) return 0.0;
    const auto c = spectrum(f);
    const auto k = g.wavenumbers();
    return evaluate_series(g, c, k, x);
}

GridFunction resample(const GridFunction& f, const Grid& target) {
    const Grid& g = f.grid();
    const auto c = spectrum(f);
    const auto k = g.wavenumbers();
    std::vector<cplx> v(target.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = target.x(i);
        if (g.topology() == Topology::Truncated && outside(g, x)) continue;
        v[i] = evaluate_series(g, c, k, x);
    }
    return GridFunction(target, std::move(v));
}

GridFunction band_limit(const GridFunction& f, double k_cut) {
    auto c = spectrum(f);
    const auto k = f.grid().wavenumbers();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (std::abs(k[j]) > k_cut) c[j] = 0.0;
    }
    return from_spectrum(f.grid(), c);
}

} // namespace nls
