#include "bnf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bnf/analysis.hpp"
#include "bnf/initial_data.hpp"
#include "scenario_impl.hpp"

namespace bnf {

namespace {

using nlohmann::json;

const detail::ScenarioEntry* find_entry(const std::string& name) {
    for (const auto& e : detail::scenario_table())
        if (name == e.name) return &e;
    return nullptr;
}

class FieldReader {
public:
    FieldReader(const json& root, Diagnostics& diag) : root_(root), diag_(diag) {}

    const json* section(const char* name) {
        if (!root_.contains(name)) return nullptr;
        const json& s = root_.at(name);
        if (!s.is_object()) {
            error(name, "must be an object");
            return nullptr;
        }
        return &s;
    }

    template <class T>
    T get(const json* sec, const char* sec_name, const char* key, T fallback) {
        if (!sec || !sec->contains(key)) return fallback;
        try {
            return sec->at(key).get<T>();
        } catch (const json::exception&) {
            error(std::string(sec_name) + "." + key, "has the wrong type");
            return fallback;
        }
    }

    void error(const std::string& field, const std::string& msg) {
        diag_.errors.push_back(field + ": " + msg);
    }

private:
    const json& root_;
    Diagnostics& diag_;
};

ScenarioConfig parse_into(const json& cfg, Diagnostics& diag) {
    ScenarioConfig sc;
    sc.raw = cfg;
    if (!cfg.is_object()) {
        diag.errors.push_back("config: must be a JSON object");
        return sc;
    }
    FieldReader rd(cfg, diag);

    if (!cfg.contains("scenario") || !cfg.at("scenario").is_string()) {
        rd.error("scenario", "required string");
    } else {
        sc.scenario = cfg.at("scenario").get<std::string>();
        if (!find_entry(sc.scenario)) rd.error("scenario", "unknown scenario '" + sc.scenario + "'");
    }
    if (cfg.contains("seed")) {
        const auto& sd = cfg.at("seed");
        if (sd.is_number_unsigned() || (sd.is_number_integer() && sd.get<std::int64_t>() >= 0))
            sc.seed = sd.get<std::uint64_t>();
        else rd.error("seed", "must be a non-negative integer");
    }

    const json* eq = rd.section("equation");
    const auto kind = rd.get<std::string>(eq, "equation", "kind", "wick");
    const auto sign = rd.get<int>(eq, "equation", "sign", 1);
    const auto gamma = rd.get<double>(eq, "equation", "gamma", kind == "original" ? 0.0 : 2.0);
    try {
        sc.equation = EquationKind::parse(kind, gamma, sign);
    } catch (const std::exception& e) {
        rd.error("equation", e.what());
    }

    const json* sp = rd.section("spectral");
    const int N = rd.get<int>(sp, "spectral", "N", 8);
    if (N < 1 || N > 4096) {
        rd.error("spectral.N", "must lie in [1, 4096]");
    } else {
        sc.spectral = SpectralConfig::for_cutoff(N);
        if (sp && sp->contains("grid_points")) {
            sc.spectral.grid_points = rd.get<int>(sp, "spectral", "grid_points", 0);
            if (sc.spectral.grid_points < 4 * N + 2)
                rd.error("spectral.grid_points", "must be >= 4N+2");
        }
    }

    const json* in = rd.section("integrator");
    sc.integrator.dt = rd.get<double>(in, "integrator", "dt", 1e-3);
    sc.integrator.store_every = rd.get<int>(in, "integrator", "store_every", 1);
    sc.T = rd.get<double>(in, "integrator", "T", 0.1);
    if (!(sc.integrator.dt > 0.0)) rd.error("integrator.dt", "must be positive");
    if (sc.integrator.store_every < 1) rd.error("integrator.store_every", "must be >= 1");
    if (!(sc.T > 0.0)) {
        rd.error("integrator.T", "must be positive");
    } else if (sc.integrator.dt > 0.0 && sc.integrator.store_every >= 1) {
        const double r = sc.T / (sc.integrator.dt * sc.integrator.store_every);
        if (std::abs(r - std::round(r)) > 1e-9 * r || std::round(r) < 1)
            rd.error("integrator.T", "must be a positive multiple of dt * store_every");
    }

    const auto* entry = sc.scenario.empty() ? nullptr : find_entry(sc.scenario);

    if (cfg.contains("initial_data")) {
        if (!cfg.at("initial_data").is_object() || !cfg.at("initial_data").contains("kind"))
            rd.error("initial_data", "must be an object with a 'kind'");
        else sc.initial_data = cfg.at("initial_data");
    }
    const auto data_kind = sc.initial_data.value("kind", std::string());
    const bool random_data = data_kind == "gaussian" || data_kind == "random_hs";
    if ((random_data || (entry && entry->needs_seed)) && !sc.seed)
        rd.error("seed", "required for random data");
    if (N >= 1 && N <= 4096 && sc.initial_data.contains("kind")) {
        try {
            (void)make_initial_data(sc.initial_data, N, sc.seed.value_or(0));
        } catch (const std::exception& e) {
            rd.error("initial_data", e.what());
        }
    }

    const json* nf = rd.section("normal_form");
    sc.nf.J = rd.get<int>(nf, "normal_form", "J", 1);
    sc.nf.K = rd.get<double>(nf, "normal_form", "K", 10.0);
    sc.nf.box_N = N;
    sc.nf.budget = rd.get<double>(nf, "normal_form", "budget", 1e12);
    if (nf && nf->contains("theta")) {
        try {
            sc.nf.theta = NFConfig::parse_theta(nf->at("theta"));
        } catch (const std::exception& e) {
            rd.error("normal_form.theta", e.what());
        }
    }
    if (sc.nf.J < 1 || sc.nf.J > 6) rd.error("normal_form.J", "must lie in [1, 6]");
    if (!(sc.nf.K > 0.0)) rd.error("normal_form.K", "must be positive");
    if (!(sc.nf.theta > 0.0) || sc.nf.theta > 2.0 / 3.0 + 1e-12)
        rd.error("normal_form.theta", "must lie in (0, 2/3]");
    if (!(sc.nf.budget > 0.0)) rd.error("normal_form.budget", "must be positive");
    if (nf || (entry && entry->uses_normal_form)) {
        if (sc.nf.J >= 1 && sc.nf.J <= 6 && N >= 1) {
            diag.cost_estimate = nf_cost_estimate(sc.nf.J, N);
            if (*diag.cost_estimate > sc.nf.budget) diag.budget_refused = true;
        }
    }

    const json* sy = rd.section("symbol");
    sc.symbol.s = rd.get<double>(sy, "symbol", "s", -1.0 / 3.0);
    sc.symbol.delta0 = rd.get<double>(sy, "symbol", "delta0", EnergySymbol::default_delta0(sc.symbol.s));
    sc.symbol.k0 = rd.get<int>(sy, "symbol", "k0", 3);
    sc.symbol.M = rd.get<double>(sy, "symbol", "M", 1.0);
    if (sy || (entry && entry->uses_symbol)) {
        try {
            EnergySymbol(sc.symbol.s, sc.symbol.delta0, sc.symbol.k0, sc.symbol.M);
        } catch (const std::exception& e) {
            rd.error("symbol", e.what());
        }
    }

    const json* out = rd.section("output");
    sc.out_dir = rd.get<std::string>(out, "output", "dir", "out");

    if (cfg.contains("params")) {
        if (!cfg.at("params").is_object()) rd.error("params", "must be an object");
        else sc.params = cfg.at("params");
    }

    static const std::vector<std::string> known{"scenario", "seed",       "equation", "initial_data",
                                                "spectral", "integrator", "normal_form", "symbol",
                                                "output",   "params"};
    for (const auto& [k, v] : cfg.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) rd.error(k, "unknown key");
    return sc;
}

}  // namespace

int Diagnostics::status() const {
    if (!errors.empty()) return kExitConfigError;
    if (budget_refused) return kExitBudgetRefusal;
    return kExitOk;
}

json Diagnostics::to_json() const {
    json j{{"ok", ok()}, {"errors", errors}, {"budget_refused", budget_refused}};
    if (cost_estimate) j["cost_estimate"] = *cost_estimate;
    return j;
}

ConfigError::ConfigError(Diagnostics d)
    : std::invalid_argument([&] {
          std::string m = "invalid config";
          for (const auto& e : d.errors) m += "\n  " + e;
          return m;
      }()),
      diag_(std::move(d)) {}

std::vector<std::string> list_scenarios() {
    std::vector<std::string> out;
    for (const auto& e : detail::scenario_table()) out.emplace_back(e.name);
    return out;
}

json default_config(const std::string& scenario) {
    return {{"scenario", scenario},
            {"seed", 1},
            {"equation", {{"kind", "wick"}, {"sign", 1}}},
            {"initial_data", {{"kind", "two_mode"}, {"n1", 1}, {"a1", 0.4}, {"n2", 2}, {"a2", 0.3}}},
            {"spectral", {{"N", 4}}},
            {"integrator", {{"dt", 1e-4}, {"store_every", 10}, {"T", 0.1}}},
            {"normal_form", {{"J", 1}, {"K", 10.0}, {"theta", "2/3"}}},
            {"symbol", {{"s", -1.0 / 3.0}, {"delta0", 1.0 / 12.0}, {"k0", 3}, {"M", 1}}},
            {"output", {{"dir", "out"}}}};
}

Diagnostics validate(const json& config) {
    Diagnostics d;
    (void)parse_into(config, d);
    return d;
}

ScenarioConfig parse_config(const json& config) {
    Diagnostics d;
    auto sc = parse_into(config, d);
    if (!d.errors.empty()) throw ConfigError(std::move(d));
    return sc;
}

RunResult run(const json& config, const std::filesystem::path& out_override) {
    RunResult res;
    Diagnostics diag;
    const ScenarioConfig sc = parse_into(config, diag);
    if (!diag.ok()) {
        res.status = diag.status();
        std::ostringstream msg;
        if (diag.budget_refused && diag.errors.empty())
            msg << "normal form cost estimate " << *diag.cost_estimate << " exceeds budget "
                << sc.nf.budget;
        for (const auto& e : diag.errors) msg << e << '\n';
        res.message = msg.str();
        return res;
    }

    std::filesystem::path dir = out_override;
    if (dir.empty()) {
        if (const char* env = std::getenv("BNF_OUT_DIR"); env && *env) dir = env;
        else dir = sc.out_dir;
    }

    detail::ScenarioOutput out;
    std::string failure;
    try {
        find_entry(sc.scenario)->runner(sc, out);
    } catch (const BudgetExceeded& e) {
        res.status = kExitBudgetRefusal;
        out.partial = true;
        failure = e.what();
    } catch (const std::exception& e) {
        res.status = kExitRuntimeFailure;
        out.partial = true;
        failure = e.what();
    }

    json summary{{"scenario", sc.scenario},
                 {"status", res.status},
                 {"partial", out.partial},
                 {"config", sc.raw},
                 {"results", out.summary}};
    if (!failure.empty()) summary["error"] = failure;
    try {
        for (const auto& [name, content] : out.files) {
            write_atomic(dir / name, content);
            res.files.push_back(dir / name);
        }
        write_atomic(dir / "summary.json", summary.dump(2) + "\n");
        res.files.push_back(dir / "summary.json");
    } catch (const std::exception& e) {
        res.status = kExitRuntimeFailure;
        failure += std::string(failure.empty() ? "" : "; ") + e.what();
    }
    res.partial = out.partial;
    res.message = failure;
    return res;
}

}  // namespace bnf
