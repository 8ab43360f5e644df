#pragma once

#include <cstdint>
#include <string>

#include "phiconv/hull.hpp"
#include "phiconv/report.hpp"

namespace phiconv::cli {

struct RunOptions {
    std::string subcommand;    // hull|exposed|extremal|compare|check|variational|boundary|gallery
    std::string problem_path;  // required for everything except gallery
    std::string set_name;      // named subset; defaults documented per subcommand
    std::string mode = "exposed";  // reconstruction mode for `check`
    std::string gallery_name;      // instance name for `gallery`
    double tol = kStrictTol;       // strictness threshold for exposure decisions
    std::uint64_t seed = 0;
    int samples = 1000;    // sampling count for `variational`
    double epsilon = 1e-3; // perturbation radius for `variational`
    int budget = 1000;     // perturbation trial budget
    double radius = 1.0;   // sampling ball radius for `variational`
};

/// Dispatches one subcommand and assembles its report. Throws phiconv
/// errors (ParseError, ValidationError, HypothesisViolated, ...) upward;
/// the binary maps them to exit code 2, failed checks to exit code 1.
Report run(const RunOptions& options);

}  // namespace phiconv::cli
