#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "nls/grid.hpp"

namespace testing {

using nls::cplx;
using nls::Grid;
using nls::GridFunction;

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double max_diff(const GridFunction& a, const GridFunction& b) { return nls::lp_norm(a - b, nls::kInf); }

// Random trigonometric polynomial with modes |m| <= modes (in units of 2 pi / L), so it is
// band-limited on any grid with more than 2 * modes points.
inline GridFunction random_band_limited(const Grid& g, std::mt19937_64& rng, int modes = 6, bool zero_mean = false) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cplx> c;
    for (int m = -modes; m <= modes; ++m) c.emplace_back(normal(rng), normal(rng));
    if (zero_mean) c[static_cast<std::size_t>(modes)] = 0.0;
    const double k0 = 2.0 * std::numbers::pi / g.length();
    return GridFunction::sample(g, [&](double x) {
        cplx s{};
        for (int m = -modes; m <= modes; ++m) s += c[static_cast<std::size_t>(m + modes)] * std::polar(1.0, k0 * m * (x - g.x_min()));
        return s / static_cast<double>(modes);
    });
}

inline cplx random_complex(std::mt19937_64& rng, double scale = 3.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

// e^{-x^2} on a domain wide enough that the tail is below roundoff.
inline GridFunction unit_gaussian(const Grid& g) {
    return GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
}

} // namespace testing

#include "nls/error.hpp"

// Checks that `expr` throws nls::Error of the given kind.
#define CHECK_ERROR_KIND(expr, expected_kind)                         \
    do {                                                               \
        bool thrown_ = false;                                          \
        try {                                                          \
            (void)(expr);                                              \
        } catch (const nls::Error& e_) {                               \
            thrown_ = true;                                            \
            CHECK(e_.kind() == (expected_kind));                       \
        }                                                              \
        CHECK_MESSAGE(thrown_, "expected nls::Error from " #expr);     \
    } while (0)
