#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace nls {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Topology : std::uint8_t { Periodic = 0, Truncated = 1 };

// Uniform 1D grid x_i = x_min + i*dx, i < n_points. A truncated grid stands in for the
// real line: samples outside [x_min, x_min + length) are zero, and a smooth window with
// a plateau on the inner 70% is applied before any spectral operation.
class Grid {
public:
    Grid(double x_min, double dx, std::size_t n_points, Topology topology);

    static Grid periodic(double x_min, double length, std::size_t n_points);
    static Grid truncated(double x_min, double length, std::size_t n_points);

    double x_min() const noexcept { return x_min_; }
    double dx() const noexcept { return dx_; }
    std::size_t size() const noexcept { return n_; }
    Topology topology() const noexcept { return topology_; }
    double length() const noexcept { return dx_ * static_cast<double>(n_); }
    double x(std::size_t i) const noexcept { return x_min_ + dx_ * static_cast<double>(i); }

    std::vector<double> nodes() const;
    // Angular wavenumbers in FFT order: (2 pi / L) * {0, 1, ..., n/2 - 1, -n/2, ..., -1}.
    std::vector<double> wavenumbers() const;
    // Smooth cutoff, identically 1 for periodic grids.
    std::vector<double> window() const;

    // Same topology, size, origin and spacing (origin/spacing to 1e-12 relative).
    bool matches(const Grid& other) const noexcept;

private:
    double x_min_;
    double dx_;
    std::size_t n_;
    Topology topology_;
};

// Complex samples on a Grid. Values are checked finite on construction and never mutated.
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<cplx> values);

    static GridFunction zeros(const Grid& grid);

    template <class F>
    static GridFunction sample(const Grid& grid, F&& f) {
        std::vector<cplx> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = cplx(f(grid.x(i)));
        }
        return GridFunction(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }

    GridFunction operator+(const GridFunction& other) const;
    GridFunction operator-(const GridFunction& other) const;
    GridFunction operator*(cplx c) const;
    GridFunction conj() const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

inline GridFunction operator*(cplx c, const GridFunction& f) { return f * c; }

void require_same_grid(const Grid& a, const Grid& b);

// Order n of derivatives and Lebesgue exponent p of the norm sum_{j<=n} ||d^j f||_p.
struct SobolevSpec {
    int order;
    double p;

    SobolevSpec(int order, double p);
};

double lp_norm(const GridFunction& f, double p);

GridFunction differentiate(const GridFunction& f, int m);

double sobolev_norm(const GridFunction& f, const SobolevSpec& spec);

// How the k = 0 mode is treated when s < 0.
enum class ZeroMode {
    Reject, // non-negligible mean throws undefined-at-zero-mode
    Drop,   // the mode is excluded silently
};

// Homogeneous Sobolev norm with Parseval weight so that s = 0 reproduces lp_norm(f, 2).
double homogeneous_hs_norm(const GridFunction& f, double s, ZeroMode zero_mode = ZeroMode::Reject);

// x -> lambda f(lambda x). The grid is relabelled (spacing dx/lambda, origin x_min/lambda),
// so the samples are exactly lambda times the input samples.
GridFunction scale_data(const GridFunction& f, double lambda);

// x -> lambda f(lambda x) evaluated on `target` by band-limited interpolation.
GridFunction scale_data(const GridFunction& f, double lambda, const Grid& target);

// Trigonometric interpolant of f evaluated on the nodes of `target`.
GridFunction resample(const GridFunction& f, const Grid& target);

// Band-limited value at an arbitrary point.
cplx interpolate(const GridFunction& f, double x);

// Zeroes every Fourier mode with |k| > k_cut.
GridFunction band_limit(const GridFunction& f, double k_cut);

GridFunction apply_window(const GridFunction& f);

// Unnormalized DFT of the (windowed, for truncated grids) samples.
std::vector<cplx> spectrum(const GridFunction& f);
GridFunction from_spectrum(const Grid& grid, std::span<const cplx> coeffs);

} // namespace nls
