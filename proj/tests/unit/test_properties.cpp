#include <random>

#include "doctest.h"
#include "nls/diagnostics.hpp"
#include "nls/fft.hpp"
#include "nls/reference.hpp"
#include "support.hpp"

using namespace nls;
using namespace testing;

namespace {

constexpr int kTrials = 25;

Grid random_grid(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(4.0, 40.0);
    std::uniform_int_distribution<int> pow2(5, 8);
    const double l = len(rng);
    return Grid::periodic(-0.5 * l, l, std::size_t{1} << pow2(rng));
}

} // namespace

TEST_CASE("Lp norms are homogeneous and subadditive") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> p_dist(1.0, 8.0);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Grid g = random_grid(rng);
        const GridFunction f = random_band_limited(g, rng);
        const GridFunction h = random_band_limited(g, rng);
        const cplx c = random_complex(rng);
        for (double p : {p_dist(rng), 2.0, kInf}) {
            CHECK(rel(lp_norm(f * c, p), std::abs(c) * lp_norm(f, p)) < 1e-12);
            CHECK(lp_norm(f + h, p) <= lp_norm(f, p) + lp_norm(h, p) + 1e-12);
        }
    }
}

TEST_CASE("first derivative applied twice is the second derivative") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Grid g = random_grid(rng);
        const GridFunction f = random_band_limited(g, rng);
        const GridFunction twice = differentiate(differentiate(f, 1), 1);
        const GridFunction direct = differentiate(f, 2);
        CHECK(max_diff(twice, direct) <= 1e-10 * std::max(1.0, lp_norm(direct, kInf)));
    }
}

TEST_CASE("scaling round trips") {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> lam(0.25, 4.0);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Grid g = random_grid(rng);
        const GridFunction f = random_band_limited(g, rng);
        const double l = lam(rng);
        const GridFunction back = scale_data(scale_data(f, l), 1.0 / l);
        CHECK(max_diff(back, f) <= 1e-8 * lp_norm(f, kInf));
    }
}

TEST_CASE("Parseval") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Grid g = random_grid(rng);
        const GridFunction f = random_band_limited(g, rng);
        const std::vector<cplx> hat = fft::forward(f.values());
        double spectral = 0.0;
        for (const auto& z : hat) spectral += std::norm(z);
        spectral *= g.length() / static_cast<double>(g.size() * g.size());
        CHECK(rel(spectral, std::pow(lp_norm(f, 2.0), 2)) < 1e-12);
    }
}

TEST_CASE("pairing is symmetric and i-antisymmetric") {
    std::mt19937_64 rng(505);
    const cplx i(0.0, 1.0);
    for (int trial = 0; trial < kTrials; ++trial) {
        const Grid g = random_grid(rng);
        const GridFunction f = random_band_limited(g, rng);
        const GridFunction h = random_band_limited(g, rng);
        const double scale = lp_norm(f, 2.0) * lp_norm(h, 2.0);
        CHECK(std::abs(pairing(f, h) - pairing(h, f)) <= 1e-13 * scale);
        CHECK(std::abs(pairing(f * i, h) + pairing(f, h * i)) <= 1e-13 * scale);
        CHECK(std::abs(pairing(f * i, f)) <= 1e-13 * scale);
    }
}

TEST_CASE("compare is symmetric") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        const Grid g = random_grid(rng);
        const TimeGrid tg(0.0, 0.1, 3);
        std::vector<GridFunction> a;
        std::vector<GridFunction> b;
        for (int m = 0; m < 4; ++m) {
            a.push_back(random_band_limited(g, rng));
            b.push_back(random_band_limited(g, rng));
        }
        const CompareReport ab = compare(Trajectory(tg, a), Trajectory(tg, b));
        const CompareReport ba = compare(Trajectory(tg, b), Trajectory(tg, a));
        CHECK(ab.linf == ba.linf);
        CHECK(ab.l2 == ba.l2);
    }
}
