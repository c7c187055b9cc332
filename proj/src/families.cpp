#include "nls/families.hpp"

#include <cmath>
#include <numbers>

#include "nls/error.hpp"

namespace nls {
namespace {

double trig_factor(double x) { return std::cos(x) + std::cos(std::numbers::sqrt2 * x); }

void require_width(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::InvalidArgument, "width must be positive and finite");
    }
}

} // namespace

GridFunction gaussian_data(const Grid& grid, cplx amplitude, double sigma) {
    require_width(sigma);
    return GridFunction::sample(grid, [&](double x) {
        const double y = x / sigma;
        return amplitude * std::exp(-y * y);
    });
}

GridFunction windowed_power_data(const Grid& grid, double alpha, cplx amplitude) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::InvalidArgument, "decay exponent must be positive and finite");
    }
    return GridFunction::sample(grid, [&](double x) {
        return amplitude * trig_factor(x) * std::pow(1.0 + x * x, -alpha);
    });
}

GridFunction schwartz_data(const Grid& grid, cplx amplitude, double sigma) {
    require_width(sigma);
    return GridFunction::sample(grid, [&](double x) {
        const double y = x / sigma;
        return amplitude * std::exp(-y * y) * trig_factor(x);
    });
}

} // namespace nls
