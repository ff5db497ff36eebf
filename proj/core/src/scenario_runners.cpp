#include <cmath>

#include "bnf/analysis.hpp"
#include "bnf/bitree.hpp"
#include "bnf/initial_data.hpp"
#include "bnf/phase.hpp"
#include "scenario_impl.hpp"

namespace bnf::detail {

namespace {

using nlohmann::json;

FourierState initial_state(const ScenarioConfig& sc) {
    return make_initial_data(sc.initial_data, sc.spectral.cutoff_N, sc.seed.value_or(0));
}

Trajectory run_evolution(const ScenarioConfig& sc, const EquationKind& kind, const FourierState& u0,
                         EvolveReport* rep = nullptr) {
    return evolve(u0, kind, sc.T, sc.integrator, rep);
}

void require_wick(const ScenarioConfig& sc, const char* name) {
    if (sc.equation.variant != EquationKind::Variant::wick)
        throw std::invalid_argument(std::string(name) + ": the expansion is built for the wick equation");
}

template <class T>
T param(const ScenarioConfig& sc, const char* key, T fallback) {
    return sc.params.contains(key) ? sc.params.at(key).get<T>() : fallback;
}

void conservation(const ScenarioConfig& sc, ScenarioOutput& out) {
    EvolveReport rep;
    const auto u0 = initial_state(sc);
    const auto traj = run_evolution(sc, sc.equation, u0, &rep);
    CsvTable t({"t", "l2", "mass", "relative_l2_drift"});
    const double l0 = l2_norm(u0);
    for (const auto& s : traj.samples) {
        const double l = l2_norm(s);
        t.cell(s.t).cell(l).cell(mean_mass(s)).cell(l0 > 0 ? std::abs(l - l0) / l0 : 0.0);
        t.end_row();
    }
    out.add_csv("conservation.csv", t);
    out.summary = {{"equation", sc.equation.name()},
                   {"steps", rep.steps},
                   {"l2_initial", rep.l2_initial},
                   {"l2_final", rep.l2_final},
                   {"max_relative_l2_drift", rep.max_relative_l2_drift}};
}

void gauge_equivalence(const ScenarioConfig& sc, ScenarioOutput& out) {
    const auto u0 = initial_state(sc);
    const int sign = sc.equation.sign;
    const auto orig = run_evolution(sc, EquationKind::original(sign), u0);
    const auto wick = run_evolution(sc, EquationKind::wick(sign), u0);
    const auto gauged = gauge_transform(orig, 2.0 * sign, +1);
    CsvTable t({"t", "l2_discrepancy"});
    double worst = 0.0;
    for (std::size_t k = 0; k < wick.size(); ++k) {
        FourierState d = wick.samples[k];
        for (std::size_t i = 0; i < d.size(); ++i) d.coeffs[i] -= gauged.samples[k].coeffs[i];
        const double e = l2_norm(d);
        worst = std::max(worst, e);
        t.cell(d.t).cell(e);
        t.end_row();
    }
    out.add_csv("gauge_equivalence.csv", t);
    out.summary = {{"max_l2_discrepancy", worst}, {"mean_mass", mean_mass(u0)}};
}

void phase_audit(const ScenarioConfig& sc, ScenarioOutput& out) {
    const auto range = param<i64>(sc, "range", 16);
    if (range < 0 || range > 64) throw std::invalid_argument("phase-audit: params.range must lie in [0, 64]");
    const auto rep = check_factorization(range);
    CsvTable t({"n1", "n2", "n3", "n", "phi", "mu", "check"});
    for (const auto& v : rep.violations) {
        t.cell(v.tuple.n1).cell(v.tuple.n2).cell(v.tuple.n3).cell(v.tuple.n);
        t.cell(phi(v.tuple)).cell(mu_phase(v.tuple)).cell(v.check);
        t.end_row();
    }
    out.add_csv("phase_violations.csv", t);
    out.summary = rep.to_json();
}

void tree_census(const ScenarioConfig& sc, ScenarioOutput& out) {
    const int J_max = param<int>(sc, "J_max", 5);
    const int print_up_to = param<int>(sc, "print_trees_up_to", 3);
    if (J_max < 1 || J_max > 6) throw std::invalid_argument("tree-census: params.J_max must lie in [1, 6]");
    CsvTable t({"J", "enumerated", "formula"});
    std::string listing;
    json counts = json::array();
    for (int J = 1; J <= J_max; ++J) {
        const auto trees = enumerate_ordered(J);
        t.cell(J).cell(trees.size()).cell(cardinality(J));
        t.end_row();
        counts.push_back(trees.size());
        if (J <= print_up_to)
            for (const auto& tr : trees) listing += std::to_string(J) + " " + tr.to_string() + "\n";
    }
    out.add_csv("tree_census.csv", t);
    out.files.emplace_back("trees.txt", listing);
    out.summary = {{"counts", counts}};
}

void nf_identity(const ScenarioConfig& sc, ScenarioOutput& out) {
    require_wick(sc, "nf-identity");
    const auto u0 = initial_state(sc);
    const auto traj = run_evolution(sc, sc.equation, u0);
    NFConfig cfg = sc.nf;
    cfg.sign = sc.equation.sign;
    const NormalFormExpansion nf(cfg);
    const auto reps = identity_residuals(traj, nf);
    CsvTable t({"n", "t", "lhs", "rhs", "residual", "J", "K", "theta", "box_N", "dt_sample"});
    double worst = 0.0;
    json rows = json::array();
    for (const auto& r : reps) {
        t.cell(r.n).cell(r.t).cell(r.lhs).cell(r.rhs).cell(r.residual).cell(r.J).cell(r.K);
        t.cell(r.theta).cell(r.box_N).cell(r.dt_sample);
        t.end_row();
        worst = std::max(worst, r.residual);
        rows.push_back(r.to_json());
    }
    out.add_csv("nf_identity.csv", t);

    CsvTable f({"form", "j", "n", "t", "re", "im"});
    const auto v = to_interaction(traj.samples.back());
    auto emit = [&](FormKind k, int j) {
        const auto fv = nf.evaluate(k, j, v, v.t);
        for (int n = -fv.N; n <= fv.N; ++n) {
            f.cell(fv.form).cell(j).cell(n).cell(fv.t).cell(fv[n].real()).cell(fv[n].imag());
            f.end_row();
        }
    };
    for (int j = 1; j <= cfg.J + 1; ++j) emit(FormKind::N1, j);
    for (int j = 2; j <= cfg.J + 1; ++j) {
        emit(FormKind::N0, j);
        emit(FormKind::R, j);
    }
    emit(FormKind::N2, cfg.J + 1);
    out.add_csv("nf_forms.csv", f);
    out.summary = {{"max_residual", worst}, {"terms", nf.total_terms()}, {"reports", rows}};
}

void nf_error_decay(const ScenarioConfig& sc, ScenarioOutput& out) {
    require_wick(sc, "nf-error-decay");
    const auto u0 = initial_state(sc);
    const auto traj = run_evolution(sc, sc.equation, u0);
    const auto v = to_interaction(traj.samples.back());
    CsvTable t({"J", "t", "l1_error", "terms"});
    json l1s = json::array();
    for (int J = 1; J <= sc.nf.J; ++J) {
        NFConfig cfg = sc.nf;
        cfg.J = J;
        cfg.sign = sc.equation.sign;
        const NormalFormExpansion nf(cfg);
        const auto e = nf.evaluate(FormKind::N2, J + 1, v, v.t);
        t.cell(J).cell(v.t).cell(e.l1()).cell(nf.term_count(FormKind::N2, J + 1));
        t.end_row();
        l1s.push_back(e.l1());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < l1s.size(); ++i)
        monotone = monotone && l1s[i].get<double>() <= l1s[i - 1].get<double>();
    out.add_csv("nf_error_decay.csv", t);
    out.summary = {{"l1_error", l1s}, {"non_increasing", monotone}};
}

void flux_identity(const ScenarioConfig& sc, ScenarioOutput& out) {
    const auto u0 = initial_state(sc);
    const auto traj = run_evolution(sc, sc.equation, u0);
    const EnergySymbol sym(sc.symbol.s, sc.symbol.delta0, sc.symbol.k0, sc.symbol.M);
    const auto a = symbol_weights(sym, traj.cutoff());
    CsvTable t({"t", "energy", "flux_density"});
    for (const auto& s : traj.samples) {
        t.cell(s.t).cell(energy_E(s, a)).cell(flux_density(s, a));
        t.end_row();
    }
    const auto c = flux_identity_check(traj, a);
    const auto flat = flux_identity_check(traj, std::vector<double>(a.size(), 1.0));
    out.add_csv("flux_identity.csv", t);
    out.summary = {{"energy_change", c.energy_change},
                   {"flux_integral", c.flux_integral},
                   {"residual", c.residual},
                   {"constant_symbol_flux", flat.flux_integral}};
}

void symbol_audit(const ScenarioConfig& sc, ScenarioOutput& out) {
    const auto k0s = param<std::vector<int>>(sc, "k0", {4, 5, 6, 7, 8, 9, 10});
    const auto Ms = param<std::vector<double>>(sc, "M", {1, 4, 16});
    const double s = sc.symbol.s;
    const double d0 = param<double>(sc, "delta0", EnergySymbol::default_delta0(s));
    CsvTable t({"check", "s", "delta0", "k0", "M", "measured_constant", "worst_case_location"});
    double d1 = 0, d2 = 0, cmp = 0, cst = 0;
    for (int k0 : k0s)
        for (double M : Ms) {
            const EnergySymbol sym(s, d0, k0, M);
            const auto r = symbol_check(sym);
            auto row = [&](const char* check, double v, double where) {
                t.cell(check).cell(s).cell(d0).cell(k0).cell(M).cell(v).cell(where);
                t.end_row();
            };
            row("derivative_1", r.deriv1_constant, r.worst_xi1);
            row("derivative_2", r.deriv2_constant, r.worst_xi2);
            row("dyadic_comparability", r.comparability, 0.0);
            row("constancy", r.constancy_deviation, 0.0);
            d1 = std::max(d1, r.deriv1_constant);
            d2 = std::max(d2, r.deriv2_constant);
            cmp = std::max(cmp, r.comparability);
            cst = std::max(cst, r.constancy_deviation);
        }
    out.add_csv("symbol_audit.csv", t);
    out.summary = {{"max_derivative_1", d1},
                   {"max_derivative_2", d2},
                   {"max_comparability", cmp},
                   {"max_constancy_deviation", cst},
                   {"normalizer", bump_normalizer()}};
}

void strichartz_sweep(const ScenarioConfig& sc, ScenarioOutput& out) {
    const auto Ns = param<std::vector<int>>(sc, "N", {32, 128});
    const int samples = param<int>(sc, "samples", 50);
    const int p = param<int>(sc, "p", 4);
    const double T_w = param<double>(sc, "T_w", 1.0);
    const std::uint64_t seed = sc.seed.value_or(0);
    CsvTable t({"N", "p", "T_w", "sup_ratio", "mean_ratio"});
    json sups = json::array();
    for (int N : Ns) {
        double sup = 0.0, mean = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double r = strichartz_ratio(random_unit(N, seed + std::uint64_t(i)), p, T_w);
            sup = std::max(sup, r);
            mean += r / samples;
        }
        t.cell(N).cell(p).cell(T_w).cell(sup).cell(mean);
        t.end_row();
        sups.push_back(sup);
    }
    out.add_csv("strichartz_sweep.csv", t);
    out.summary = {{"sup_ratio", sups}};
    if (sups.size() >= 2)
        out.summary["relative_growth"] = sups.back().get<double>() / sups.front().get<double>() - 1.0;
}

void diff_energy(const ScenarioConfig& sc, ScenarioOutput& out) {
    if (sc.equation.variant != EquationKind::Variant::wick || sc.equation.sign != 1)
        throw std::invalid_argument("diff-energy: requires the defocusing wick equation");
    const double eps = param<double>(sc, "perturbation", 1e-3);
    const double s = param<double>(sc, "s", sc.symbol.s);
    const auto u0 = initial_state(sc);
    FourierState v0 = u0;
    const auto dir = random_unit(u0.N, sc.seed.value_or(0) + 7919);
    for (std::size_t i = 0; i < v0.size(); ++i) v0.coeffs[i] += eps * dir.coeffs[i];
    const auto ut = run_evolution(sc, sc.equation, u0);
    const auto vt = run_evolution(sc, sc.equation, v0);
    const auto terms = diff_energy_terms(ut, vt, s, true);
    CsvTable t({"t", "I_uu", "I_uv", "I_vu", "I_vv", "II"});
    for (const auto& x : terms) {
        t.cell(x.t).cell(x.I_uu).cell(x.I_uv).cell(x.I_vu).cell(x.I_vv).cell(x.II);
        t.end_row();
    }
    const auto c = diff_energy_check(ut, vt, s, true);
    out.add_csv("diff_energy.csv", t);
    out.summary = {{"integral", c.integral}, {"norm_change", c.norm_change}, {"residual", c.residual}};
}

}  // namespace

const std::vector<ScenarioEntry>& scenario_table() {
    static const std::vector<ScenarioEntry> table{
        {"conservation", conservation, false, false, false},
        {"gauge-equivalence", gauge_equivalence, false, false, false},
        {"phase-audit", phase_audit, false, false, false},
        {"tree-census", tree_census, false, false, false},
        {"nf-identity", nf_identity, true, false, false},
        {"nf-error-decay", nf_error_decay, true, false, false},
        {"flux-identity", flux_identity, false, true, false},
        {"symbol-audit", symbol_audit, false, true, false},
        {"strichartz-sweep", strichartz_sweep, false, false, true},
        {"diff-energy", diff_energy, false, false, true},
    };
    return table;
}

}  // namespace bnf::detail
