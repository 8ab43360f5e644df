#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phiconv/ground.hpp"
#include "phiconv/phi_space.hpp"

namespace phiconv {

/// Parsed and validated problem file.
///
/// Schema (JSON object, unknown keys rejected):
///   ground.points   array of coordinate arrays        } at least one;
///   ground.metric   symmetric distance matrix         } both must agree
///   phi.kind        linear | affine | distance | rbf | table
///   phi.anchors     point ids for distance/rbf (default: all points)
///   phi.gamma       rbf width parameter (default 1.0)
///   phi.rows        explicit m x n rows for kind=table
///   phi.norm        sup | l1 | l2 (default sup)
///   f.values        per-point values (optional section)
///   f.infinite      indices where f = +inf
///   sets.<name>     named point-id lists
struct ProblemFile {
    GroundPtr ground;
    std::optional<PhiSpace> phi;
    std::optional<ExtendedFunction> f;
    std::map<std::string, std::vector<int>> sets;
    nlohmann::ordered_json echo;  // normalized input for report echoing

    /// Named subset; ValidationError when missing.
    PointSubset set(const std::string& name) const;

    /// The full ground set.
    PointSubset full() const;

    const PhiSpace& space() const;
};

/// Parses a problem JSON document. ParseError on malformed JSON,
/// ValidationError (with a field path) on schema violations.
ProblemFile parse_problem(const std::string& text);

/// Reads and parses a problem file from disk.
ProblemFile load_problem(const std::string& path);

/// Serializations used by the CLI echo and the round-trip tests.
nlohmann::ordered_json ground_to_json(const GroundSet& g);
GroundPtr ground_from_json(const nlohmann::json& j);

}  // namespace phiconv
