#include "nls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "nls/error.hpp"

namespace nls {
namespace {

template <class Op>
GridFunction pointwise(const GridFunction& a, const GridFunction& b, Op op) {
    require_same_grid(a.grid(), b.grid());
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return GridFunction(a.grid(), std::move(v));
}

template <class Op>
GridFunction pointwise(const GridFunction& a, Op op) {
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i]);
    return GridFunction(a.grid(), std::move(v));
}

const cplx kI{0.0, 1.0};

} // namespace

double mass(const GridFunction& v) {
    double sum = 0.0;
    for (const auto& z : v.values()) sum += std::norm(z);
    return sum * v.grid().dx();
}

double energy(const GridFunction& v) {
    const auto vx = differentiate(v, 1);
    double kinetic = 0.0;
    double potential = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        kinetic += std::norm(vx[i]);
        potential += std::norm(v[i]) * std::norm(v[i]);
    }
    return (0.5 * kinetic + 0.25 * potential) * v.grid().dx();
}

double pairing(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f.grid(), g.grid());
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += (f[i] * std::conj(g[i])).real();
    return sum * f.grid().dx();
}

double interaction_functional(const GridFunction& v, const GridFunction& u_l) {
    require_same_grid(v.grid(), u_l.grid());
    const auto cube_l = pointwise(u_l, [](cplx z) { return std::norm(z) * z; });
    const auto abs2_v = pointwise(v, [](cplx z) { return cplx(std::norm(z)); });
    const auto abs2_l = pointwise(u_l, [](cplx z) { return cplx(std::norm(z)); });
    const auto sq_v = pointwise(v, [](cplx z) { return z * z; });
    const auto sq_l = pointwise(u_l, [](cplx z) { return z * z; });
    const auto cube_v = pointwise(v, [](cplx z) { return std::norm(z) * z; });
    return pairing(v, cube_l) + pairing(abs2_v, abs2_l) + 0.5 * pairing(sq_v, sq_l) + pairing(cube_v, u_l);
}

double modified_energy(const GridFunction& v, const GridFunction& u_l) {
    return 0.5 * mass(v) + energy(v) + interaction_functional(v, u_l);
}

double mass_derivative_rhs(const GridFunction& v, const GridFunction& u_l) {
    return mass_derivative_rhs(v, u_l, GridFunction::zeros(v.grid()));
}

double mass_derivative_rhs(const GridFunction& v, const GridFunction& u_l, const GridFunction& forcing) {
    require_same_grid(v.grid(), u_l.grid());
    const auto source = pointwise(u_l, forcing, [](cplx a, cplx f) { return std::norm(a) * a - f; });
    const auto iv = pointwise(v, [](cplx z) { return kI * z; });
    const auto i_cube_v = pointwise(v, [](cplx z) { return kI * std::norm(z) * z; });
    const auto i_sq_v = pointwise(v, [](cplx z) { return kI * z * z; });
    const auto sq_l = pointwise(u_l, [](cplx z) { return z * z; });
    return 2.0 * (pairing(iv, source) + pairing(i_cube_v, u_l) + pairing(i_sq_v, sq_l));
}

DiagnosticsSeries compute_series(const Trajectory& v, const Trajectory& u_l) {
    require_same_layout(v, u_l);
    DiagnosticsSeries s{v.time_grid(), {}, {}, {}, {}, {}};
    for (std::size_t m = 0; m < v.size(); ++m) {
        const double mv = mass(v[m]);
        const double ev = energy(v[m]);
        const double fv = interaction_functional(v[m], u_l[m]);
        s.mass.push_back(mv);
        s.energy.push_back(ev);
        s.f_interaction.push_back(fv);
        s.modified_energy.push_back(0.5 * mv + ev + fv);
        s.v_l2.push_back(std::sqrt(mv));
    }
    return s;
}

DiagnosticsSeries compute_series(const PicardDecomposition& dec) {
    if (!dec.remainder) throw Error(ErrorKind::InvalidArgument, "decomposition has no solved remainder");
    return compute_series(*dec.remainder, dec.linear_part);
}

GronwallVerdict gronwall_verdict(std::span<const double> times, std::span<const double> modified) {
    if (times.size() != modified.size() || times.size() < 3) {
        throw Error(ErrorKind::InvalidSeries, "Gronwall verdict needs at least three samples");
    }
    std::vector<double> logs(modified.size());
    for (std::size_t m = 0; m < modified.size(); ++m) {
        const double shifted = modified[m] + 1.0;
        if (!(shifted > 0.0) || !std::isfinite(shifted)) {
            throw Error(ErrorKind::InvalidSeries, "modified energy + 1 must stay positive and finite");
        }
        logs[m] = std::log(shifted);
    }
    GronwallVerdict verdict;
    for (std::size_t m = 1; m < logs.size(); ++m) {
        verdict.c_fit = std::max(verdict.c_fit, (logs[m] - logs[0]) / (times[m] - times[0]));
    }
    verdict.pass = std::isfinite(verdict.c_fit);
    for (std::size_t m = 0; m < logs.size() && verdict.pass; ++m) {
        verdict.pass = logs[m] <= logs[0] + verdict.c_fit * (times[m] - times[0]) + 1e-9;
    }
    return verdict;
}

GronwallVerdict gronwall_verdict(const DiagnosticsSeries& series) {
    std::vector<double> times(series.modified_energy.size());
    for (std::size_t m = 0; m < times.size(); ++m) times[m] = series.time_grid.time(m);
    return gronwall_verdict(times, series.modified_energy);
}

double holder_constant(const DiagnosticsSeries& series) {
    double k = 0.0;
    for (std::size_t m = 0; m < series.mass.size(); ++m) {
        const double mv = 0.5 * series.mass[m];
        const double ev = series.energy[m];
        if (!(mv > 0.0)) continue;
        const double bound = std::sqrt(mv) + std::cbrt(mv * ev) + std::pow(mv, 1.0 / 6.0) * std::pow(ev, 2.0 / 3.0);
        k = std::max(k, std::abs(series.f_interaction[m]) / bound);
    }
    return k;
}

std::vector<double> centered_difference(std::span<const double> values, double dt) {
    std::vector<double> out;
    for (std::size_t m = 1; m + 1 < values.size(); ++m) out.push_back((values[m + 1] - values[m - 1]) / (2.0 * dt));
    return out;
}

void write_csv(std::ostream& out, const DiagnosticsSeries& series) {
    out << "t,mass,energy,f,modified_energy,v_l2\n";
    char buf[512];
    for (std::size_t m = 0; m < series.mass.size(); ++m) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", series.time_grid.time(m),
                      series.mass[m], series.energy[m], series.f_interaction[m], series.modified_energy[m],
                      series.v_l2[m]);
        out << buf;
    }
}

} // namespace nls
