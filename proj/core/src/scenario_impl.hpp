#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bnf/io.hpp"
#include "bnf/scenario.hpp"

namespace bnf::detail {

struct ScenarioOutput {
    std::vector<std::pair<std::string, std::string>> files;  // name, content
    nlohmann::json summary = nlohmann::json::object();
    bool partial = false;

    void add_csv(const std::string& name, const CsvTable& t) { files.emplace_back(name, t.str()); }
};

using Runner = void (*)(const ScenarioConfig&, ScenarioOutput&);

struct ScenarioEntry {
    const char* name;
    Runner runner;
    bool uses_normal_form;
    bool uses_symbol;
    bool needs_seed;
};

const std::vector<ScenarioEntry>& scenario_table();

}  // namespace bnf::detail
