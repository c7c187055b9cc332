#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace nls {

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("loglog_slope needs two or more paired samples");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        sxy += dx * (std::log(ys[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

} // namespace nls
