// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bnf/analysis.hpp"
#include "bnf/bitree.hpp"
#include "bnf/dynamics.hpp"
#include "bnf/initial_data.hpp"
#include "bnf/normal_form.hpp"
#include "bnf/phase.hpp"

using namespace bnf;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double l2_diff(const FourierState& a, const FourierState& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.coeffs[i] - b.coeffs[i]);
    return std::sqrt(s);
}

Outcome phase_algebra() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = check_factorization(32);
    const double sec = seconds_since(t0);
    return {r.ok() && r.tuples_checked > 0 && sec < 60.0,
            fmt("%llu tuples, %llu resonant, %zu violations, %.2fs",
                (unsigned long long)r.tuples_checked, (unsigned long long)r.resonant_tuples,
                r.violations.size(), sec)};
}

Outcome tree_census() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t expected[] = {1, 4, 24, 192, 1920};
    bool ok = true;
    std::string sizes;
    for (int J = 1; J <= 5; ++J) {
        const auto trees = enumerate_ordered(J);
        // 2^{J-1} J! computed independently of the library.
        std::uint64_t closed = 1;
        for (int k = 1; k <= J; ++k) closed *= std::uint64_t(k);
        closed <<= (J - 1);
        ok = ok && trees.size() == expected[J - 1] && closed == expected[J - 1] &&
             cardinality(J) == closed;
        sizes += (J > 1 ? "," : "") + std::to_string(trees.size());
    }
    const double sec = seconds_since(t0);
    return {ok && sec < 10.0, fmt("sizes (%s), %.2fs", sizes.c_str(), sec)};
}

Outcome wick_dual() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto u = random_unit(32, seed);
        const auto a = wick_nonlinearity_spectral(u);
        const auto b = wick_nonlinearity(u);
        worst = std::max(worst, l2_diff(a, b) / l2_norm(a));
    }
    return {worst <= 1e-12, fmt("max relative error %.3e over 100 states", worst)};
}

Outcome conservation() {
    const auto u0 = gaussian_data(64, 1.0, 2024);
    EvolveReport rep;
    evolve(u0, EquationKind::wick(), 1.0, {1e-3, 100}, &rep);
    return {rep.max_relative_l2_drift <= 1e-8,
            fmt("max relative L2 drift %.3e over %llu steps", rep.max_relative_l2_drift,
                (unsigned long long)rep.steps)};
}

Outcome single_mode_closed_form() {
    const cplx a = 1.0;
    double worst = 0.0;
    for (const auto& [kind, pm] : {std::pair{EquationKind::wick(), -1.0},
                                   std::pair{EquationKind::original(), +1.0}}) {
        const auto traj = evolve(single_mode(4, 1, a), kind, 1.0, {1e-3, 1000});
        const cplx exact = a * std::exp(cplx(0.0, -(1.0 + pm * std::norm(a)) * 1.0));
        worst = std::max(worst, std::abs(traj.samples.back()[1] - exact));
    }
    return {worst <= 1e-10, fmt("max |error| %.3e (wick and original)", worst)};
}

Outcome gauge_equivalence() {
    // Unit-mass data with a dozen active modes; dt resolves the quartic phases.
    auto u0 = gaussian_data(32, 4.0, 77);
    const double nrm = l2_norm(u0);
    for (auto& z : u0.coeffs) z /= nrm;
    const IntegratorConfig cfg{1e-5, 100000};
    const auto orig = evolve(u0, EquationKind::original(), 1.0, cfg);
    const auto wick = evolve(u0, EquationKind::wick(), 1.0, cfg);
    const auto gauged = gauge_transform(orig, 2.0, +1);
    const double d = l2_diff(gauged.samples.back(), wick.samples.back());
    return {d <= 1e-6, fmt("L2 discrepancy at t=1: %.3e", d)};
}

Outcome nf_identity() {
    const auto u0 = two_mode(4, 1, 1.0, 2, 1.0);
    const double dt = 6.25e-5;
    bool ok = true;
    std::string detail;
    for (int J : {1, 2}) {
        NFConfig cfg;
        cfg.J = J;
        cfg.K = 10.0;
        cfg.theta = 2.0 / 3.0;
        cfg.box_N = 4;
        const NormalFormExpansion nf(cfg);
        std::vector<double> res;
        for (int every : {16, 8, 4}) {  // dt_sample 1e-3, 5e-4, 2.5e-4
            const auto traj = evolve(u0, EquationKind::wick(), 0.1, {dt, every});
            double worst = 0.0;
            for (const auto& r : identity_residuals(traj, nf)) worst = std::max(worst, r.residual);
            res.push_back(worst);
        }
        const double drop = res[0] / res[2];
        ok = ok && res[0] <= 1e-6 && drop >= 10.0;
        detail += fmt("%sJ=%d residual %.2e -> %.2e -> %.2e (x%.0f)", J > 1 ? "; " : "", J,
                      res[0], res[1], res[2], drop);
    }
    return {ok, detail};
}

Outcome nf_error_decay() {
    const auto u0 = gaussian_data(4, 1.0, 8);
    const auto traj = evolve(u0, EquationKind::wick(), 0.05, {1e-4, 500});
    const auto v = to_interaction(traj.samples.back());
    std::vector<double> l1;
    std::size_t terms = 0;
    for (int J = 1; J <= 3; ++J) {
        NFConfig cfg;
        cfg.J = J;
        cfg.K = 100.0;
        cfg.theta = 2.0 / 3.0;
        cfg.box_N = 4;
        const NormalFormExpansion nf(cfg);
        l1.push_back(nf.evaluate(FormKind::N2, J + 1, v, v.t).l1());
        terms += nf.term_count(FormKind::N2, J + 1);
    }
    const bool ok = l1[1] <= l1[0] && l1[2] <= l1[1];
    return {ok, fmt("sum|N2(J+1)| = %.3e, %.3e, %.3e (%zu error terms in total%s)", l1[0], l1[1],
                    l1[2], terms, terms ? "" : "; no chain survives the C_J cut at this box size")};
}

Outcome flux_identity() {
    const auto u0 = two_mode(8, 1, 1.0, 3, 0.8);
    const auto traj = evolve(u0, EquationKind::wick(), 0.1, {1e-4, 10});
    const EnergySymbol sym(-1.0 / 3.0, 1.0 / 12.0, 3, 1.0);
    const auto c = flux_identity_check(traj, sym);
    const std::vector<double> ones(2 * 8 + 1, 1.0);
    double flat = 0.0;
    for (const auto& s : traj.samples) flat = std::max(flat, std::abs(flux_density(s, ones)));
    return {c.residual <= 1e-8 && flat <= 1e-10,
            fmt("|E(t)-E(0)-R(t)| = %.3e, constant-symbol flux %.3e", c.residual, flat)};
}

Outcome symbol_audit() {
    const double s = -1.0 / 3.0;
    double d1 = 0, d2 = 0, cmp = 0, cst = 0;
    for (int k0 = 4; k0 <= 10; ++k0)
        for (double M : {1.0, 4.0, 16.0}) {
            const auto r = symbol_check(EnergySymbol(s, EnergySymbol::default_delta0(s), k0, M));
            d1 = std::max(d1, r.deriv1_constant);
            d2 = std::max(d2, r.deriv2_constant);
            cmp = std::max(cmp, r.comparability);
            cst = std::max(cst, r.constancy_deviation);
        }
    const bool ok = cst <= 4 * 2.220446049250313e-16 && cmp <= 4.0 && d1 <= 10.0 && d2 <= 10.0;
    return {ok, fmt("constancy %.1e, comparability %.3f, derivative constants %.3f / %.3f", cst,
                    cmp, d1, d2)};
}

Outcome strichartz() {
    auto sup_ratio = [](int N) {
        double sup = 0.0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed)
            sup = std::max(sup, strichartz_ratio(random_unit(N, seed), 4, 1.0));
        return sup;
    };
    const double a = sup_ratio(32), b = sup_ratio(128);
    const double growth = b / a - 1.0;
    return {growth < 0.10, fmt("sup L4 ratio %.4f (N=32) -> %.4f (N=128), growth %.2f%%", a, b,
                               100.0 * growth)};
}

Outcome diff_energy() {
    const auto u0 = random_unit(16, 31);
    const auto dir = random_unit(16, 32);
    FourierState v0 = u0;
    for (std::size_t i = 0; i < v0.size(); ++i) v0.coeffs[i] += 1e-3 * dir.coeffs[i];
    const IntegratorConfig cfg{2.5e-5, 1};
    const auto ut = evolve(u0, EquationKind::wick(), 0.1, cfg);
    const auto vt = evolve(v0, EquationKind::wick(), 0.1, cfg);
    const auto c = diff_energy_check(ut, vt, -1.0 / 3.0);
    return {c.residual <= 1e-8, fmt("integral %.6e vs norm change %.6e, residual %.3e", c.integral,
                                    c.norm_change, c.residual)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"phase algebra exactness", phase_algebra},
        {"bi-tree census", tree_census},
        {"wick nonlinearity dual evaluation", wick_dual},
        {"L2 conservation", conservation},
        {"single-mode closed form", single_mode_closed_form},
        {"gauge equivalence", gauge_equivalence},
        {"truncated normal-form identity", nf_identity},
        {"error-term decay", nf_error_decay},
        {"flux identity", flux_identity},
        {"symbol audit", symbol_audit},
        {"Strichartz boundedness", strichartz},
        {"difference-energy assembly", diff_energy},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s  %2zu  %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - std::size_t(failed),
                criteria.size());
    return failed ? 1 : 0;
}
