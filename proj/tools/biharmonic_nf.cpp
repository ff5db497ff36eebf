#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bnf/scenario.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("config '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral simulation and normal-form verification for the periodic quartic NLS"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
    run->add_option("--config", config_path, "Path to the JSON config")->required();
    run->add_option("--out", out_dir, "Output directory (overrides BNF_OUT_DIR and output.dir)");

    app.add_subcommand("list", "List the available scenarios");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "Check a config without running it");
    val->add_option("--config", validate_path, "Path to the JSON config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : bnf::kExitConfigError;
    }

    try {
        if (app.got_subcommand("list")) {
            for (const auto& name : bnf::list_scenarios()) std::cout << name << '\n';
            return bnf::kExitOk;
        }
        if (app.got_subcommand("validate")) {
            const auto diag = bnf::validate(load_config(validate_path));
            std::cout << diag.to_json().dump(2) << '\n';
            return diag.status();
        }
        const auto res = bnf::run(load_config(config_path), out_dir);
        for (const auto& f : res.files) std::cout << f.string() << '\n';
        if (!res.message.empty()) std::cerr << res.message << '\n';
        if (res.partial) std::cerr << "results are partial\n";
        return res.status;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bnf::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bnf::kExitRuntimeFailure;
    }
}
