#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phiconv/rng.hpp"

namespace phiconv::detail {

using nlohmann::ordered_json;

ordered_json ids_json(const std::vector<int>& ids) {
    ordered_json out = ordered_json::array();
    for (int id : ids) out.push_back(id);
    return out;
}

ordered_json vec_json(const Eigen::VectorXd& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

ordered_json witness_json(const ExposureWitness& w) {
    ordered_json out;
    out["point"] = w.point;
    out["direction"] = vec_json(w.direction.coeffs);
    out["margin"] = json_number(w.margin);
    out["vacuous"] = w.vacuous;
    return out;
}

ordered_json witnesses_json(const std::vector<ExposureWitness>& ws) {
    ordered_json out = ordered_json::array();
    for (const auto& w : ws) out.push_back(witness_json(w));
    return out;
}

ordered_json certificate_json(const SeparationCertificate& cert) {
    ordered_json out;
    out["direction"] = vec_json(cert.direction.coeffs);
    out["threshold"] = cert.threshold;
    out["margin"] = cert.margin;
    return out;
}

bool witness_sound(const PhiSpace& space, const PointSubset& C, const ExposureWitness& w,
                   double tol) {
    if (w.vacuous) return C.size() == 1 && C.contains(w.point);
    const Eigen::VectorXd vals = space.evaluate_all(w.direction);
    double best_other = -std::numeric_limits<double>::infinity();
    for (int y : C)
        if (y != w.point) best_other = std::max(best_other, vals[y]);
    const double margin = vals[w.point] - best_other;
    return margin > 0.0 && margin >= w.margin - tol;
}

void boundary_analysis(Report& report, const PhiSpace& space, const PointSubset& K,
                       std::uint64_t seed, int n_random_directions, double strict_tol) {
    DualPolytope poly = dual_ball(space, K);

    ordered_json gens = ordered_json::array();
    for (const auto& g : poly.generators()) {
        ordered_json gj;
        gj["sign"] = g.sign;
        gj["point"] = g.point;
        gj["coords"] = vec_json(g.coords);
        gens.push_back(std::move(gj));
    }
    report.results["generators"] = std::move(gens);
    report.results["warnings"] = poly.warnings();

    PointSubset choquet = choquet_boundary(poly);
    report.results["choquet_boundary"] = ids_json(choquet.ids());

    // Support-function identity: max_g <g,c> equals sup_K |phi_c| for the
    // polytope built over the full base set.
    double worst_support_gap = 0.0;
    Eigen::VectorXd worst_c;
    for (int trial = 0; trial < n_random_directions; ++trial) {
        Rng rng = Rng::stream(seed ^ 0xb07dba11ULL, static_cast<std::uint64_t>(trial));
        PhiVector c{rng.box_vector(space.dimension())};
        Eigen::VectorXd vals = space.evaluate_all(c);
        double sup_on_k = 0.0;
        for (int x : K) sup_on_k = std::max(sup_on_k, std::abs(vals[x]));
        const double gap = std::abs(poly.support(c) - sup_on_k);
        if (gap > worst_support_gap) {
            worst_support_gap = gap;
            worst_c = c.coeffs;
        }
    }
    ordered_json support_details;
    support_details["max_gap"] = worst_support_gap;
    if (worst_support_gap > 1e-9) support_details["counterexample_c"] = vec_json(worst_c);
    report.add_check("support_function_identity", worst_support_gap <= 1e-9, 1e-9,
                     std::move(support_details));

    auto exposed_gens = weakstar_exposed_generators(poly, strict_tol);
    ordered_json eg = ordered_json::array();
    for (const auto& e : exposed_gens) {
        ordered_json ej;
        ej["sign"] = e.sign;
        ej["point"] = e.point;
        ej["degenerate"] = e.degenerate;
        if (!e.degenerate) {
            ej["direction"] = vec_json(e.direction.coeffs);
            ej["margin"] = e.margin;
        }
        eg.push_back(std::move(ej));
    }
    report.results["weakstar_exposed"] = std::move(eg);

    auto exp_witnesses = phi_exposed_points(space, K, strict_tol);
    std::vector<int> exp_ids;
    for (const auto& w : exp_witnesses) exp_ids.push_back(w.point);
    report.results["phi_exposed"] = ids_json(exp_ids);

    // Dual-ball identity: the weak*-exposed generators are exactly the
    // +-Diracs of the Phi-exposed points.
    std::vector<std::pair<int, int>> expected, actual;
    for (int id : exp_ids) {
        expected.emplace_back(+1, id);
        expected.emplace_back(-1, id);
    }
    for (const auto& e : exposed_gens)
        if (!e.degenerate) actual.emplace_back(e.sign, e.point);
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    {
        ordered_json details;
        details["expected_count"] = expected.size();
        details["actual_count"] = actual.size();
        if (expected != actual) {
            ordered_json miss = ordered_json::array(), extra = ordered_json::array();
            for (const auto& p : expected)
                if (!std::binary_search(actual.begin(), actual.end(), p))
                    miss.push_back({p.first, p.second});
            for (const auto& p : actual)
                if (!std::binary_search(expected.begin(), expected.end(), p))
                    extra.push_back({p.first, p.second});
            details["missing"] = std::move(miss);
            details["unexpected"] = std::move(extra);
        }
        report.add_check("weakstar_exposed_equals_dirac_of_exposed", expected == actual, strict_tol,
                         std::move(details));
    }

    if (poly.has_constants() && poly.separates()) {
        PointSubset shilov = shilov_boundary(poly);
        report.results["shilov_boundary"] = ids_json(shilov.ids());

        const bool identity = shilov == choquet && shilov.ids() == exp_ids;
        ordered_json details;
        details["shilov"] = ids_json(shilov.ids());
        details["choquet"] = ids_json(choquet.ids());
        details["phi_exposed"] = ids_json(exp_ids);
        report.add_check("boundary_identity", identity, strict_tol, std::move(details));

        ordered_json norming_details;
        norming_details["shilov"] = ids_json(shilov.ids());
        report.add_check("shilov_is_norming", is_norming_subset(poly, shilov), 0.0,
                         std::move(norming_details));

        bool minimal = true;
        int witness = -1;
        for (int p : shilov) {
            if (shilov.size() == 1) break;  // removing the only point leaves nothing norming
            if (is_norming_subset(poly, shilov.without(p))) {
                minimal = false;
                witness = p;
                break;
            }
        }
        ordered_json min_details;
        if (!minimal) min_details["removable_point"] = witness;
        report.add_check("shilov_minimality", minimal, 0.0, std::move(min_details));
    }
}

void reconstruction_analysis(Report& report, const PhiSpace& space, const PointSubset& K,
                             const PointSubset& ambient, ReconstructionMode mode,
                             double strict_tol) {
    auto rec = reconstruction_check(space, K, ambient, mode, strict_tol);
    const char* label =
        mode == ReconstructionMode::Extremal ? "reconstruction_extremal" : "reconstruction_exposed";
    ordered_json details;
    details["points"] = ids_json(rec.points);
    details["hull"] = ids_json(rec.hull);
    if (!rec.missing.empty()) details["missing_from_hull"] = ids_json(rec.missing);
    if (!rec.extra.empty()) details["extra_in_hull"] = ids_json(rec.extra);
    report.results[label] = details;
    report.add_check(label, rec.pass(), strict_tol, std::move(details));
}

}  // namespace phiconv::detail
