#pragma once

#include <cstdint>
#include <string>

#include "phiconv/report.hpp"

namespace phiconv {

/// Generates a named example instance, runs its canonical checks and
/// returns the report. Known names:
///   line3                   three collinear points, affine dictionary
///   square                  unit-square corners plus center, affine dictionary
///   truncated_cube(n)       the {-1,1}^n vertex grid, n <= 8, linear dictionary
///   stadium                 continuous extreme-not-exposed diagnostic
///   two_point_algebra       two points with the indicator dictionary
///   random_polytope(d,n,s)  n random points in R^d from seed s, affine dictionary
/// Instances are generated, never shipped as data, so the name (plus seed
/// arguments) fully determines the report.
Report run_gallery(const std::string& name);

}  // namespace phiconv
