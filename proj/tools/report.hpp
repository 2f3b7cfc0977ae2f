// report.hpp — experiment reports for the command-line front end.
//
// Every experiment command produces an ExperimentReport: an echo of its
// inputs, the result payload, and a list of named checks with values and
// tolerances. Reports serialize to JSON; --no-meta drops the wall time so
// repeated runs are byte-identical.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace spikes::cli {

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    std::string command;
    nlohmann::json inputs;
    nlohmann::json outputs;
    std::vector<Check> checks;
    double wall_time_ms = 0.0;
    std::uint64_t seed = 0;

    void add_check(const std::string& name, double value, double tolerance);
    bool all_pass() const;
    nlohmann::json to_json(bool include_meta) const;
};

}  // namespace spikes::cli
