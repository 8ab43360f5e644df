#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace phiconv {

/// One named pass/fail check with its tolerance and a details payload;
/// failed checks must carry a counterexample in the details.
struct Check {
    std::string name;
    bool pass = false;
    double tolerance = 0.0;
    nlohmann::ordered_json details;
};

/// Machine-readable run report. Serialization uses a fixed key order so
/// that identical inputs and seed produce byte-identical output apart from
/// the timing field.
struct Report {
    std::string task;
    nlohmann::ordered_json inputs;
    nlohmann::ordered_json results;
    std::vector<Check> checks;
    double timing_ms = 0.0;
    std::uint64_t seed = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add_check(std::string name, bool pass, double tolerance,
                   nlohmann::ordered_json details = nlohmann::ordered_json::object()) {
        checks.push_back({std::move(name), pass, tolerance, std::move(details)});
    }

    nlohmann::ordered_json to_json() const;

    /// Human-readable rendering (one line per check plus a summary).
    std::string to_text() const;
};

/// JSON value for a possibly infinite double (infinity is not valid JSON,
/// so infinite margins serialize as the string "inf").
nlohmann::ordered_json json_number(double v);

}  // namespace phiconv
