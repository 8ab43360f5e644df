#pragma once

// Internal report-assembly helpers shared by the CLI subcommands and the
// gallery instances.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "phiconv/boundary.hpp"
#include "phiconv/points.hpp"
#include "phiconv/report.hpp"

namespace phiconv::detail {

nlohmann::ordered_json ids_json(const std::vector<int>& ids);
nlohmann::ordered_json vec_json(const Eigen::VectorXd& v);
nlohmann::ordered_json witness_json(const ExposureWitness& w);
nlohmann::ordered_json witnesses_json(const std::vector<ExposureWitness>& ws);
nlohmann::ordered_json certificate_json(const SeparationCertificate& cert);

/// Re-evaluates an exposure witness against the examined set; true when the
/// recomputed margin agrees with the stored one within 1e-9.
bool witness_sound(const PhiSpace& space, const PointSubset& C, const ExposureWitness& w,
                   double tol = 1e-9);

/// Dual-ball analysis: generators, Choquet/Shilov boundaries, weak*-exposed
/// generators, the support-function identity on random directions, the
/// boundary identity against PhiExp(K), and norming minimality.
void boundary_analysis(Report& report, const PhiSpace& space, const PointSubset& K,
                       std::uint64_t seed, int n_random_directions, double strict_tol);

/// Reconstruction analysis for one mode; appends results and a check.
void reconstruction_analysis(Report& report, const PhiSpace& space, const PointSubset& K,
                             const PointSubset& ambient, ReconstructionMode mode,
                             double strict_tol);

}  // namespace phiconv::detail
