#include "phiconv/report.hpp"

#include <cmath>
#include <sstream>

namespace phiconv {

using nlohmann::ordered_json;

ordered_json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

ordered_json Report::to_json() const {
    ordered_json j;
    j["task"] = task;
    j["inputs"] = inputs;
    j["results"] = results;
    ordered_json checks_json = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["tolerance"] = c.tolerance;
        cj["details"] = c.details;
        checks_json.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks_json);
    j["all_pass"] = all_pass();
    j["seed"] = seed;
    j["timing_ms"] = timing_ms;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "task: " << task << "\n";
    for (const auto& c : checks)
        os << (c.pass ? "  PASS " : "  FAIL ") << c.name << " (tol " << c.tolerance << ")\n";
    os << (all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
    return os.str();
}

}  // namespace phiconv
