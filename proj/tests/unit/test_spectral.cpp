#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bnf/initial_data.hpp"
#include "bnf/spectral.hpp"

using namespace bnf;

TEST_SUITE("spectral") {

TEST_CASE("padded grid is the smallest 2-3-5 smooth length above 4N+2") {
    CHECK(SpectralConfig::for_cutoff(4).grid_points == 18);
    CHECK(SpectralConfig::for_cutoff(8).grid_points == 36);
    CHECK(SpectralConfig::for_cutoff(32).grid_points == 135);
    CHECK(SpectralConfig::for_cutoff(64).grid_points == 270);
    SpectralConfig bad{8, 30};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("physical samples match the direct Fourier sum") {
    const auto u = random_unit(6, 5);
    const auto cfg = SpectralConfig::for_cutoff(6);
    const auto x = to_physical(u, cfg);
    REQUIRE(x.size() == std::size_t(cfg.grid_points));
    for (int j = 0; j < cfg.grid_points; ++j) {
        const double xj = 2 * std::numbers::pi * j / cfg.grid_points;
        cplx direct{};
        for (int n = -6; n <= 6; ++n) direct += u[n] * std::exp(cplx(0, n * xj));
        CHECK(std::abs(x[std::size_t(j)] - direct) < 1e-13);
    }
}

TEST_CASE("spectral round trip") {
    const auto u = random_unit(20, 9);
    const auto cfg = SpectralConfig::for_cutoff(20);
    const auto back = to_spectral(to_physical(u, cfg), cfg);
    for (int n = -20; n <= 20; ++n) CHECK(std::abs(back[n] - u[n]) < 1e-14);
}

TEST_CASE("Sobolev norms") {
    FourierState u(4);
    u[2] = 1.0;
    u[-3] = cplx(0, 2.0);
    CHECK(l2_norm(u) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    // <2>^2 + 4 <3>^2 = 5 + 40
    CHECK(hs_norm(u, 1.0) == doctest::Approx(std::sqrt(45.0)).epsilon(1e-15));
    // M = 2: (4 + 4) + 4 (4 + 9) = 60
    CHECK(hs_norm(u, 1.0, 2.0) == doctest::Approx(std::sqrt(60.0)).epsilon(1e-15));
    CHECK(hs_norm(u, 0.0, 7.0) == doctest::Approx(l2_norm(u)).epsilon(1e-15));

    FourierState w(3);
    w[0] = 2.0;
    w[3] = 1.0;
    CHECK(hs_norm(w, 0.5) == doctest::Approx(std::sqrt(4.0 + std::sqrt(10.0))));

    // Negative s: norm decreases as M grows.
    CHECK(hs_norm(u, -0.5, 4.0) < hs_norm(u, -0.5, 1.0));
    CHECK_THROWS(hs_norm(u, 1.0, 0.5));
}

TEST_CASE("Littlewood-Paley pieces partition the band") {
    const auto u = random_unit(13, 3);
    const int K = dyadic_count(13);
    CHECK(K == 5);
    FourierState sum(13);
    double mass = 0.0;
    for (int k = 0; k < K; ++k) {
        const auto p = dyadic_piece(u, k);
        mass += l2_norm(p) * l2_norm(p);
        for (std::size_t i = 0; i < sum.size(); ++i) sum.coeffs[i] += p.coeffs[i];
    }
    for (int n = -13; n <= 13; ++n) CHECK(sum[n] == u[n]);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));

    const auto p3 = dyadic_piece(u, 3);
    CHECK(p3[3] == cplx{});
    CHECK(p3[4] == u[4]);
    CHECK(p3[-7] == u[-7]);
    CHECK(p3[8] == cplx{});
}

TEST_CASE("projections and bounds") {
    const auto u = random_unit(5, 1);
    const auto p = project(u, -1, 2);
    CHECK(p[-2] == cplx{});
    CHECK(p[2] == u[2]);
    CHECK(u.at(9) == cplx{});
    CHECK_THROWS(check_same_cutoff(u, FourierState(4), "test"));
}

TEST_CASE("json round trip") {
    auto u = random_unit(3, 4);
    u.t = 0.25;
    const auto back = state_from_json(to_json(u));
    CHECK(back.N == 3);
    CHECK(back.t == 0.25);
    for (int n = -3; n <= 3; ++n) CHECK(back[n] == u[n]);
}

}
