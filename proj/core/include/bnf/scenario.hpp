#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnf/dynamics.hpp"
#include "bnf/normal_form.hpp"
#include "bnf/spectral.hpp"

namespace bnf {

enum ExitStatus : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitRuntimeFailure = 2,
    kExitBudgetRefusal = 3,
};

struct SymbolParams {
    double s = -1.0 / 3.0;
    double delta0 = 1.0 / 12.0;
    int k0 = 3;
    double M = 1.0;
};

struct ScenarioConfig {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    EquationKind equation = EquationKind::wick();
    nlohmann::json initial_data = {{"kind", "single_mode"}, {"n", 1}, {"a", 1.0}};
    SpectralConfig spectral = SpectralConfig::for_cutoff(8);
    IntegratorConfig integrator;
    double T = 0.1;
    NFConfig nf;
    SymbolParams symbol;
    std::string out_dir = "out";
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json raw;  // config as given, echoed into every report
};

struct Diagnostics {
    std::vector<std::string> errors;  // "field: message"
    std::optional<double> cost_estimate;
    bool budget_refused = false;

    bool ok() const { return errors.empty() && !budget_refused; }
    int status() const;
    nlohmann::json to_json() const;
};

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(Diagnostics d);
    const Diagnostics& diagnostics() const { return diag_; }

private:
    Diagnostics diag_;
};

std::vector<std::string> list_scenarios();
nlohmann::json default_config(const std::string& scenario = "conservation");

// Parses and checks every field; never throws for bad input.
Diagnostics validate(const nlohmann::json& config);
// Throws ConfigError when validate() reports a problem.
ScenarioConfig parse_config(const nlohmann::json& config);

struct RunResult {
    int status = kExitOk;
    bool partial = false;
    std::string message;
    std::vector<std::filesystem::path> files;
};

// Output directory: override if non-empty, else $BNF_OUT_DIR, else output.dir.
RunResult run(const nlohmann::json& config, const std::filesystem::path& out_override = {});

}  // namespace bnf
