#include <numbers>

#include "doctest.h"
#include "nls/families.hpp"
#include "nls/picard.hpp"
#include "support.hpp"

using namespace nls;
using namespace testing;

namespace {

Trajectory constant_in_time(const GridFunction& g, const TimeGrid& tg) {
    return Trajectory(tg, std::vector<GridFunction>(tg.n_nodes(), g));
}

double max_diff(const Trajectory& a, const Trajectory& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, testing::max_diff(a[i], b[i]));
    return m;
}

SolverConfig absolute_tol(double tol, int max_iter = 50) {
    SolverConfig cfg;
    cfg.remainder.tol = tol;
    cfg.remainder.max_iter = max_iter;
    return cfg;
}

} // namespace

TEST_CASE("Strichartz admissibility") {
    CHECK(StrichartzPair{6.0, 6.0}.admissible());
    CHECK(StrichartzPair{4.0, kInf}.admissible());
    CHECK(StrichartzPair{kInf, 2.0}.admissible());
    CHECK_FALSE(StrichartzPair{3.0, 6.0}.admissible());
    CHECK_FALSE(StrichartzPair{6.0, 4.0}.admissible());
}

TEST_CASE("duhamel of zero and of a constant forcing") {
    const Grid g = Grid::periodic(0.0, 1.0, 16);
    const TimeGrid tg(0.0, 0.1, 10);
    CHECK(max_diff(duhamel(Trajectory::zeros(g, tg)), Trajectory::zeros(g, tg)) == 0.0);
    const cplx c(0.3, -1.2);
    const Trajectory d = duhamel(constant_in_time(GridFunction::sample(g, [&](double) { return c; }), tg));
    for (std::size_t m = 0; m < d.size(); ++m) {
        const cplx expected = cplx(0.0, -1.0) * c * tg.time(m);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(d[m][i] - expected) < 1e-13);
    }
}

TEST_CASE("duhamel quadrature converges at second order") {
    const Grid g = Grid::periodic(-10.0, 20.0, 128);
    const GridFunction shape = unit_gaussian(g);
    auto end_value = [&](std::size_t steps) {
        const TimeGrid tg(0.0, 1.0 / static_cast<double>(steps), steps);
        std::vector<GridFunction> slices;
        for (std::size_t m = 0; m < tg.n_nodes(); ++m) {
            const double t = tg.time(m);
            slices.push_back(shape * cplx(std::cos(3.0 * t), t * t));
        }
        return duhamel(Trajectory(tg, slices)).back();
    };
    const GridFunction a = end_value(20);
    const GridFunction b = end_value(40);
    const GridFunction c = end_value(80);
    const double ratio = lp_norm(a - b, 2.0) / lp_norm(b - c, 2.0);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("iterates of zero data vanish") {
    const Grid g = Grid::periodic(-8.0, 16.0, 64);
    const PicardDecomposition dec = picard_iterates(GridFunction::zeros(g), 3, TimeGrid(0.0, 0.1, 5));
    CHECK(dec.iterates.size() == 3);
    for (const auto& it : dec.iterates) CHECK(max_diff(it, Trajectory::zeros(g, it.time_grid())) == 0.0);
    CHECK_ERROR_KIND(picard_iterates(GridFunction::zeros(g), 0, TimeGrid(0.0, 0.1, 5)), ErrorKind::InvalidArgument);
}

TEST_CASE("plane-wave iterates in closed form") {
    const Grid g = Grid::periodic(0.0, 2.0 * std::numbers::pi, 64);
    const cplx a(0.4, 0.2);
    const int k = 3;
    const GridFunction u0 = GridFunction::sample(g, [&](double x) { return a * std::polar(1.0, k * x); });
    const TimeGrid tg(0.0, 0.05, 20);
    const PicardDecomposition dec = picard_iterates(u0, 2, tg);
    for (std::size_t m = 0; m < tg.n_nodes(); ++m) {
        const double t = tg.time(m);
        const GridFunction u0t = GridFunction::sample(g, [&](double x) { return a * std::polar(1.0, k * x - k * k * t); });
        CHECK(testing::max_diff(dec.iterates[0][m], u0t) < 1e-12);
        CHECK(testing::max_diff(dec.iterates[1][m], u0t * (cplx(0.0, -1.0) * std::norm(a) * t)) < 1e-12);
    }
}

TEST_CASE("decomposition bookkeeping") {
    const Grid g = Grid::periodic(-16.0, 32.0, 128);
    const PicardDecomposition dec = picard_iterates(gaussian_data(g, 0.3, 1.0), 3, TimeGrid(0.0, 0.05, 20));
    CHECK(dec.depth == 3);
    CHECK(max_diff(dec.linear_part, dec.partial_sum(3)) < 1e-12);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::isfinite(dec.level_norms[j]));
        CHECK(dec.level_exponents[j] == doctest::Approx(14.0 / (2.0 * j + 1.0)));
    }
    const PicardDecomposition alt = picard_iterates(gaussian_data(g, 0.3, 1.0), 3, TimeGrid(0.0, 0.05, 20), {}, 13.0);
    CHECK(alt.level_exponents[1] == doctest::Approx(13.0 / 3.0));
}

TEST_CASE("telescoping identity of the iterate hierarchy") {
    const Grid g = Grid::periodic(-16.0, 32.0, 128);
    const GridFunction u0 = gaussian_data(g, 0.6, 1.0);
    const TimeGrid tg(0.0, 0.05, 20);
    for (int n : {2, 3, 4}) {
        const PicardDecomposition dec = picard_iterates(u0, n, tg);
        const Trajectory top = dec.partial_sum(n);
        const Trajectory below = dec.partial_sum(n - 1);
        Trajectory higher = Trajectory::zeros(g, tg);
        for (int j = 1; j < n; ++j) higher = higher + dec.iterates[j];
        const Trajectory lhs = duhamel(cubic(top)) - higher;
        const Trajectory rhs = duhamel(cubic(top) - cubic(below));
        CHECK(max_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("mixed norms of simple fields") {
    const Grid g = Grid::periodic(-8.0, 16.0, 128);
    const TimeGrid tg(0.0, 0.1, 10);
    CHECK(mixed_norm(Trajectory::zeros(g, tg), 4.0, kInf) == 0.0);
    CHECK(s0_norm(Trajectory::zeros(g, tg)) == 0.0);
    const GridFunction gx = gaussian_data(g, 2.0, 1.5);
    const Trajectory u = constant_in_time(gx, tg);
    CHECK(rel(mixed_norm(u, kInf, 2.0), lp_norm(gx, 2.0)) < 1e-14);
    CHECK(rel(mixed_norm(u, 4.0, kInf), lp_norm(gx, kInf)) < 1e-14);
    CHECK(rel(s0_norm(u), std::max(lp_norm(gx, 2.0), lp_norm(gx, kInf))) < 1e-14);
    CHECK(rel(mixed_norm(u, 4.0, kInf, TimeInterval{0.2, 0.6}), lp_norm(gx, kInf) * std::pow(0.4, 0.25)) < 1e-12);
    CHECK_ERROR_KIND(mixed_norm(u, 4.0, 2.0, TimeInterval{0.5, 0.5}), ErrorKind::InvalidInterval);
    CHECK_ERROR_KIND(mixed_norm(u, 4.0, 2.0, TimeInterval{0.5, 3.0}), ErrorKind::InvalidInterval);
    CHECK_ERROR_KIND(mixed_norm(u, 0.5, 2.0), ErrorKind::InvalidExponent);
}

TEST_CASE("remainder of zero data") {
    const Grid g = Grid::periodic(-8.0, 16.0, 64);
    const PicardDecomposition dec = picard_iterates(GridFunction::zeros(g), 2, TimeGrid(0.0, 0.1, 5));
    const RemainderSolution r = solve_remainder(dec);
    CHECK(r.iterations == 1);
    CHECK(s0_norm(r.v) == 0.0);
}

TEST_CASE("solve_nls on zero data and on the plane wave") {
    const Grid g = Grid::periodic(0.0, 2.0 * std::numbers::pi, 64);
    const TimeGrid tg(0.0, 1e-3, 1000);
    const NlsSolution zero = solve_nls(GridFunction::zeros(g), 1, TimeGrid(0.0, 0.1, 10));
    CHECK(s0_norm(zero.u) == 0.0);

    const double amp = 0.5;
    const NlsSolution pw = solve_nls(GridFunction::sample(g, [&](double x) { return amp * std::polar(1.0, 2.0 * x); }), 2,
                                     tg, absolute_tol(1e-12, 100));
    double worst = 0.0;
    for (std::size_t m = 0; m < tg.n_nodes(); ++m) {
        const double t = tg.time(m);
        const GridFunction exact =
            GridFunction::sample(g, [&](double x) { return amp * std::polar(1.0, 2.0 * x - (4.0 + amp * amp) * t); });
        worst = std::max(worst, testing::max_diff(pw.u[m], exact) / amp);
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("solved decomposition satisfies the Duhamel equation") {
    const Grid g = Grid::periodic(-16.0, 32.0, 128);
    const double tol = 1e-9;
    for (int n : {1, 2, 3}) {
        const NlsSolution sol = solve_nls(gaussian_data(g, 0.5, 1.0), n, TimeGrid(0.0, 0.02, 50), absolute_tol(tol));
        CHECK(sol.residual < 10.0 * tol);
        CHECK(duhamel_residual(sol.u) < 10.0 * tol);
        CHECK(max_diff(sol.u, sol.decomposition.linear_part + *sol.decomposition.remainder) < 1e-14);
        CHECK(sol.v_l2.size() == 51);
    }
}

TEST_CASE("iteration count follows the contraction rate") {
    const Grid g = Grid::periodic(-16.0, 32.0, 256);
    const double eps = 0.1;
    const RescaledData r = rescale_to_smallness(gaussian_data(g, 1.0, 1.0), SobolevSpec(3, 6.0), eps);
    const double tol = 1e-12;
    const NlsSolution sol = solve_nls(r.data, 1, TimeGrid(0.0, 0.01, 100), absolute_tol(tol));
    double rate = 0.0;
    for (std::size_t i = 1; i < sol.differences.size(); ++i) {
        rate = std::max(rate, sol.differences[i] / sol.differences[i - 1]);
    }
    REQUIRE(rate > 0.0);
    REQUIRE(rate < 1.0);
    const double k = rate / (eps * eps);
    const double bound = std::ceil(std::log(tol) / std::log(k * eps * eps)) + 2.0;
    CHECK(sol.iterations <= bound);
}

TEST_CASE("solver failure modes") {
    const Grid g = Grid::periodic(-16.0, 32.0, 128);
    CHECK_ERROR_KIND(solve_nls(gaussian_data(g, 0.5, 1.0), 1, TimeGrid(0.0, 0.05, 20), absolute_tol(1e-15, 2)),
                     ErrorKind::ContractionFailure);
    SolverConfig tight = absolute_tol(1e-10, 50);
    tight.remainder.blowup_factor = 1.5;
    CHECK_ERROR_KIND(solve_nls(gaussian_data(g, 5.0, 1.0), 1, TimeGrid(0.0, 0.01, 200), tight),
                     ErrorKind::BlowupDetected);
    SolverConfig bad = absolute_tol(0.0);
    CHECK_ERROR_KIND(solve_nls(gaussian_data(g, 0.1, 1.0), 1, TimeGrid(0.0, 0.05, 4), bad), ErrorKind::InvalidArgument);
}

TEST_CASE("rescaling to smallness") {
    const Grid g = Grid::periodic(-16.0, 32.0, 256);
    const SobolevSpec spec(3, 6.0);
    const GridFunction small = gaussian_data(g, 1e-4, 1.0);
    const RescaledData same = rescale_to_smallness(small, spec, 0.1);
    CHECK(same.lambda == 1.0);

    const GridFunction f = gaussian_data(g, 1.0, 1.0);
    const RescaledData r = rescale_to_smallness(f, spec, 0.1);
    CHECK(r.norm <= 0.1);
    CHECK(r.norm >= 0.05);
    CHECK(rel(sobolev_norm(r.data, spec), r.norm) < 1e-12);
    CHECK_ERROR_KIND(rescale_to_smallness(GridFunction::zeros(g), spec, 0.1), ErrorKind::RescaleFailure);

    // A larger target needs less shrinking, so lambda never decreases with eps.
    double previous = 0.0;
    for (double eps : {0.02, 0.05, 0.1, 0.2, 0.4}) {
        const double lambda = rescale_to_smallness(f, spec, eps).lambda;
        CHECK(lambda >= previous);
        previous = lambda;
    }
}

TEST_CASE("scaling commutes with the solver") {
    const Grid g = Grid::periodic(-16.0, 32.0, 128);
    const GridFunction u0 = gaussian_data(g, 0.5, 1.0);
    const NlsSolution base = solve_nls(u0, 2, TimeGrid(0.0, 0.02, 25), absolute_tol(1e-12));
    const NlsSolution scaled = solve_nls(scale_data(u0, 2.0), 2, TimeGrid(0.0, 0.005, 25), absolute_tol(1e-12));
    for (std::size_t m = 0; m < base.u.size(); m += 5) {
        const GridFunction expected = scale_data(base.u[m], 2.0);
        CHECK(testing::max_diff(expected, scaled.u[m]) / lp_norm(expected, kInf) < 1e-4);
    }
}

TEST_CASE("time reversal recovers the data") {
    const Grid g = Grid::periodic(-16.0, 32.0, 128);
    const GridFunction u0 = gaussian_data(g, 0.8, 1.0);
    auto defect = [&](std::size_t steps) {
        const TimeGrid tg(0.0, 0.5 / static_cast<double>(steps), steps);
        const NlsSolution fwd = solve_nls(u0, 2, tg, absolute_tol(1e-14, 100));
        const NlsSolution back = solve_nls(fwd.u.back().conj(), 2, tg, absolute_tol(1e-14, 100));
        return testing::max_diff(back.u.back().conj(), u0);
    };
    // The trapezoid Duhamel scheme is symmetric in time, so the defect does not depend on the step.
    CHECK(defect(20) < 1e-9);
    CHECK(defect(40) < 1e-9);
}

TEST_CASE("backward solve uses the conjugation symmetry") {
    const Grid g = Grid::periodic(0.0, 2.0 * std::numbers::pi, 64);
    const double amp = 0.3;
    const GridFunction u0 = GridFunction::sample(g, [&](double x) { return amp * std::polar(1.0, x); });
    const TimeGrid tg(0.0, 0.01, 50);
    const Trajectory u = solve_nls_backward(u0, 2, tg, absolute_tol(1e-13));
    CHECK(u.time_grid().t_start() == doctest::Approx(-0.5));
    for (std::size_t m = 0; m < u.size(); m += 10) {
        const double t = u.time_grid().time(m);
        const GridFunction exact =
            GridFunction::sample(g, [&](double x) { return amp * std::polar(1.0, x - (1.0 + amp * amp) * t); });
        CHECK(testing::max_diff(u[m], exact) < 1e-6);
    }
    CHECK(testing::max_diff(u.back(), u0) < 1e-14);
}

TEST_CASE("kernel and multiplier Duhamel integrals agree on compact data") {
    const Grid g = Grid::truncated(-20.0, 40.0, 128);
    const TimeGrid tg(0.0, 0.1, 4);
    std::vector<GridFunction> slices(tg.n_nodes(), unit_gaussian(g));
    const Trajectory f(tg, slices);
    const Trajectory a = duhamel(f);
    const Trajectory b = duhamel(f, PropagatorBackend::kernel(8, g.length()));
    CHECK(max_diff(a, b) < 1e-8);
}
