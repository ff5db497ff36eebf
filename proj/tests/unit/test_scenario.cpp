#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bnf/io.hpp"
#include "bnf/scenario.hpp"

using namespace bnf;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("bnf_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

bool has_error(const Diagnostics& d, const std::string& field) {
    for (const auto& e : d.errors)
        if (e.rfind(field + ":", 0) == 0) return true;
    return false;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("csv formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
    CsvTable t({"a", "b"});
    t.cell("x,y").cell(3);
    t.end_row();
    CHECK(t.str() == "a,b\n\"x,y\",3\n");
    CHECK_THROWS(t.end_row());
    CsvTable u({"a"});
    u.cell(1.5);
    CHECK_THROWS(u.cell(2.5));
}

TEST_CASE("scenario list") {
    const auto names = list_scenarios();
    CHECK(names.size() >= 10);
    for (const auto& n : names) CHECK(validate(default_config(n)).errors.empty());
}

TEST_CASE("validation reports every bad field") {
    auto cfg = default_config("nf-identity");
    cfg["normal_form"]["theta"] = 0.9;
    cfg["spectral"]["N"] = 0;
    cfg["integrator"]["T"] = 0.1234;
    cfg["colour"] = "blue";
    const auto d = validate(cfg);
    CHECK(has_error(d, "normal_form.theta"));
    CHECK(has_error(d, "spectral.N"));
    CHECK(has_error(d, "integrator.T"));
    CHECK(has_error(d, "colour"));
    CHECK(d.status() == kExitConfigError);
    CHECK_THROWS_AS(parse_config(cfg), ConfigError);

    auto noseed = default_config("conservation");
    noseed.erase("seed");
    noseed["initial_data"] = {{"kind", "gaussian"}, {"sigma", 1.0}};
    CHECK(has_error(validate(noseed), "seed"));

    CHECK(has_error(validate(json::array()), "config"));
    CHECK(has_error(validate(json{{"scenario", "nope"}}), "scenario"));
}

TEST_CASE("budget refusal") {
    auto cfg = default_config("nf-identity");
    cfg["normal_form"]["J"] = 4;
    cfg["spectral"]["N"] = 32;
    const auto d = validate(cfg);
    CHECK(d.errors.empty());
    CHECK(d.budget_refused);
    CHECK(d.status() == kExitBudgetRefusal);
    REQUIRE(d.cost_estimate);
    CHECK(*d.cost_estimate > 1e12);
    const auto dir = scratch("budget");
    const auto r = run(cfg, dir);
    CHECK(r.status == kExitBudgetRefusal);
    CHECK_FALSE(std::filesystem::exists(dir / "summary.json"));
}

TEST_CASE("runs are deterministic and write a summary") {
    auto cfg = default_config("conservation");
    cfg["initial_data"] = {{"kind", "gaussian"}, {"sigma", 1.0}};
    cfg["spectral"]["N"] = 8;
    const auto a = scratch("run_a"), b = scratch("run_b");
    const auto ra = run(cfg, a), rb = run(cfg, b);
    REQUIRE(ra.status == kExitOk);
    REQUIRE(rb.status == kExitOk);
    CHECK(slurp(a / "conservation.csv") == slurp(b / "conservation.csv"));
    const auto summary = json::parse(slurp(a / "summary.json"));
    CHECK(summary.at("scenario") == "conservation");
    CHECK(summary.at("partial") == false);
    CHECK(summary.at("config") == cfg);

    cfg["seed"] = 2;
    run(cfg, b);
    CHECK(slurp(a / "conservation.csv") != slurp(b / "conservation.csv"));
}

TEST_CASE("runtime failures keep a partial summary") {
    auto cfg = default_config("nf-identity");
    cfg["equation"] = {{"kind", "original"}};
    const auto dir = scratch("partial");
    const auto r = run(cfg, dir);
    CHECK(r.status == kExitRuntimeFailure);
    CHECK(r.partial);
    const auto summary = json::parse(slurp(dir / "summary.json"));
    CHECK(summary.at("partial") == true);
    CHECK(summary.contains("error"));
}

TEST_CASE("every scenario runs at its defaults") {
    for (const auto& name : list_scenarios()) {
        auto cfg = default_config(name);
        if (name == "strichartz-sweep") cfg["params"] = {{"N", {8, 16}}, {"samples", 3}};
        if (name == "symbol-audit") cfg["params"] = {{"k0", {4}}, {"M", {1}}};
        if (name == "diff-energy") cfg["initial_data"] = {{"kind", "random_hs"}, {"s", 0.0}};
        const auto r = run(cfg, scratch("all_" + name));
        CHECK_MESSAGE(r.status == kExitOk, name << ": " << r.message);
        CHECK(r.files.size() >= 2);
    }
}

}
