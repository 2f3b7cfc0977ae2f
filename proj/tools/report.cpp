#include "report.hpp"

namespace spikes::cli {

void ExperimentReport::add_check(const std::string& name, double value, double tolerance) {
    checks.push_back(Check{name, value, tolerance, value <= tolerance});
}

bool ExperimentReport::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json ExperimentReport::to_json(bool include_meta) const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["seed"] = seed;
    nlohmann::json cs = nlohmann::json::array();
    for (const Check& c : checks)
        cs.push_back({{"name", c.name},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
    j["checks"] = cs;
    if (include_meta) j["wall_time_ms"] = wall_time_ms;
    return j;
}

}  // namespace spikes::cli
