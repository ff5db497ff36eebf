#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bnf/analysis.hpp"
#include "bnf/dynamics.hpp"
#include "bnf/initial_data.hpp"
#include "bnf/quadrature.hpp"

using namespace bnf;

TEST_SUITE("analysis") {

TEST_CASE("quadrature rules") {
    std::vector<double> f;
    const double h = 0.01;
    for (int k = 0; k <= 100; ++k) f.push_back(std::pow(k * h, 3));
    CHECK(simpson(f, h) == doctest::Approx(0.25).epsilon(1e-14));
    const auto cum = simpson_cumulative(f, h);
    CHECK(cum[50] == doctest::Approx(std::pow(0.5, 4) / 4).epsilon(1e-14));
    CHECK(std::isnan(cum[51]));
    CHECK_THROWS(simpson({1.0, 2.0}, h));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::numbers::e - 1).epsilon(1e-14));
}

TEST_CASE("bump function and its normalizer") {
    CHECK(bump_eta0(0.0) == 1.0);
    CHECK(bump_eta0(1.25) == 1.0);
    CHECK(bump_eta0(-1.6) == 0.0);
    CHECK(bump_eta0(1.4) > 0.0);
    CHECK(bump_eta0(1.4) < 1.0);
    CHECK(bump_eta0(1.3) == doctest::Approx(bump_eta0(-1.3)));
    // Plain midpoint rule as an independent integral.
    const int M = 400000;
    double mass = 0.0;
    for (int i = 0; i < M; ++i) mass += bump_eta0(-2.0 + 4.0 * (i + 0.5) / M) * 4.0 / M;
    CHECK(mass == doctest::Approx(2.85).epsilon(1e-9));
    CHECK(bump_normalizer() == doctest::Approx(1.0 / 2.85).epsilon(1e-12));
}

TEST_CASE("symbol values") {
    const EnergySymbol sym(-0.25, EnergySymbol::default_delta0(-0.25), 4, 1.0);
    CHECK(sym.delta0() == 0.0625);
    CHECK(sym.raw(16.0) == 0.25);
    // Constant below M = 1 at the k = 0 value 2^{-delta0 k0}.
    CHECK(sym.raw(0.5) == std::exp2(-0.25));
    // Halfway between 2^4 and 2^5: average of 2^{-2} and 2^{-5/2 - 1/16}.
    CHECK(sym.raw(24.0) == doctest::Approx(0.5 * (0.25 + std::exp2(-2.5 - 0.0625))));
    CHECK(sym(3.0) == doctest::Approx(sym(-3.0)).epsilon(1e-15));
    CHECK(sym(0.3) == sym(0.0));
    // Away from the mollified windows the symbol is the raw interpolant.
    CHECK(sym(11.0) == doctest::Approx(sym.raw(11.0)).epsilon(1e-14));

    EnergySymbol tab = sym;
    tab.tabulate(64);
    const auto w = symbol_weights(sym, 40);
    for (int n = -40; n <= 40; ++n) {
        CHECK(w[std::size_t(n + 40)] == doctest::Approx(sym(double(n))).epsilon(1e-14));
        CHECK(tab.at(n) == doctest::Approx(sym(double(n))).epsilon(1e-14));
    }
    CHECK_THROWS(EnergySymbol(0.1, 0.1, 3, 1.0));
    CHECK_THROWS(EnergySymbol(-0.3, 0.1, 3, 3.0));
    CHECK_THROWS(EnergySymbol(-0.3, 0.1, 1, 4.0));
    CHECK_THROWS(EnergySymbol(-0.3, 0.3, 3, 1.0));
}

TEST_CASE("mollified symbol against direct convolution") {
    for (double M : {1.0, 4.0}) {
        const EnergySymbol sym(-1.0 / 3.0, 1.0 / 12.0, 4, M);
        const double c0 = 1.0 / 2.85;
        for (int k = int(std::log2(M)); k <= 7; ++k) {
            const double P = std::ldexp(1.0, k);
            for (double f : {-0.25, -0.2, -0.14, -0.05, 0.0, 0.03, 0.13, 0.151, 0.25}) {
                const double x = P * (1 + f);
                auto integrand = [&](double y) {
                    return 10 * c0 / P * bump_eta0(10 * y / P) * sym.raw(x - y);
                };
                const double w = 0.16 * P, kink = x - P;
                double direct = 0.0;
                if (std::abs(kink) >= w) direct = integrate(integrand, -w, w);
                else direct = integrate(integrand, -w, kink) + integrate(integrand, kink, w);
                CHECK(sym(x) == doctest::Approx(direct).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("symbol audit") {
    for (double M : {1.0, 8.0}) {
        const EnergySymbol sym(-1.0 / 3.0, 1.0 / 12.0, 5, M);
        const auto r = symbol_check(sym, 200);
        CHECK(r.constancy_deviation == 0.0);
        CHECK(r.symmetry_deviation <= 1e-15);
        CHECK(r.comparability <= 4.0);
        CHECK(r.deriv1_constant <= 10.0);
        CHECK(r.deriv2_constant <= 10.0);
        CHECK(r.to_json().contains("comparability"));
    }
}

TEST_CASE("Psi obeys the second-difference bound") {
    const EnergySymbol sym(-1.0 / 3.0, 1.0 / 12.0, 4, 1.0);
    const auto r = psi_bound_check(sym, 16, 256);
    CHECK(r.samples > 0);
    CHECK(r.max_ratio <= 1.0 + 1e-9);
    CHECK(psi({5, 5, 7, 7}, sym) == 0.0);
    CHECK(psi({3, 1, 4, 6}, sym) ==
          doctest::Approx(sym(3.0) - sym(1.0) + sym(4.0) - sym(6.0)).epsilon(1e-15));
}

TEST_CASE("energy and flux") {
    const auto u = random_unit(6, 2);
    const EnergySymbol sym(-1.0 / 3.0, 1.0 / 12.0, 2, 1.0);
    const auto a = symbol_weights(sym, 6);
    double direct = 0.0;
    for (int n = -6; n <= 6; ++n) direct += a[std::size_t(n + 6)] * std::norm(u[n]);
    CHECK(energy_E(u, sym) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(std::abs(flux_density(u, std::vector<double>(13, 1.0))) < 1e-15);

    // Flux against the time derivative of the energy along a short wick flow.
    const double h = 1e-5;
    const auto traj = evolve(u, EquationKind::wick(), 2 * h, {h / 4, 4});
    const double fd = (energy_E(traj.samples[2], a) - energy_E(traj.samples[0], a)) / (2 * h);
    CHECK(fd == doctest::Approx(flux_density(traj.samples[1], a)).epsilon(1e-6));

    const auto longer = evolve(two_mode(6, 1, 1.0, 3, 0.8), EquationKind::wick(), 0.05,
                               {1e-4, 5});
    CHECK(flux_identity_check(longer, sym).residual < 1e-9);
}

TEST_CASE("X^{s,b} norm of a single free wave") {
    const auto f = single_mode(4, 1, 1.0);
    const SpaceTimeGrid g{4, 2 * std::numbers::pi, 64};
    const auto field = sample_linear_solution(f, g);
    REQUIRE(field.slices.size() == 64);
    for (double s : {-0.5, 0.0, 1.0})
        for (double b : {0.0, 0.5, 1.0})
            CHECK(xsb_norm(field, s, b) == doctest::Approx(std::pow(2.0, s / 2)).epsilon(1e-12));
    CHECK(xsb_norm(field, 0.0, 0.5, true) > 0.0);
}

TEST_CASE("Strichartz ratio") {
    for (int p : {4, 6})
        for (double T : {0.5, 1.0})
            CHECK(strichartz_ratio(single_mode(5, 3, cplx(0.0, 2.0)), p, T) ==
                  doctest::Approx(std::pow(2 * std::numbers::pi * T, 1.0 / p)).epsilon(1e-12));

    // Brute-force space-time quadrature for a small random datum.
    const auto f = random_unit(2, 6);
    // 64 points integrate |u|^p exactly in x for p <= 6 at N = 2.
    const SpectralConfig fine{2, 64};
    const double T = 0.25;
    const int nt = 20000;
    for (int p : {4, 6}) {
        std::vector<double> slice(nt + 1);
        for (int k = 0; k <= nt; ++k) {
            const auto x = to_physical(linear_propagate(f, T * k / nt), fine);
            double acc = 0.0;
            for (const auto& z : x) acc += std::pow(std::abs(z), p);
            slice[std::size_t(k)] = acc * 2 * std::numbers::pi / double(x.size());
        }
        const double oracle = std::pow(simpson(slice, T / nt), 1.0 / p);
        CHECK(strichartz_ratio(f, p, T) == doctest::Approx(oracle).epsilon(1e-9));
    }
    CHECK_THROWS(strichartz_ratio(f, 5, 1.0));
}

}
