#include "phiconv/gallery.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "analysis.hpp"
#include "phiconv/rng.hpp"

namespace phiconv {

namespace {

using detail::ids_json;
using detail::vec_json;
using nlohmann::ordered_json;

// "name" or "name(a)" or "name(a,b,c)".
struct ParsedName {
    std::string base;
    std::vector<long long> args;
};

ParsedName parse_name(const std::string& name) {
    ParsedName parsed;
    const auto open = name.find('(');
    if (open == std::string::npos) {
        parsed.base = name;
        return parsed;
    }
    if (name.back() != ')') throw UnknownGallery("malformed gallery name '" + name + "'");
    parsed.base = name.substr(0, open);
    std::string inner = name.substr(open + 1, name.size() - open - 2);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            parsed.args.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw UnknownGallery("non-integer argument in gallery name '" + name + "'");
        }
    }
    return parsed;
}

GroundPtr line3_ground() {
    std::vector<Eigen::VectorXd> pts;
    for (double x : {0.0, 1.0, 2.0}) {
        Eigen::VectorXd p(1);
        p << x;
        pts.push_back(p);
    }
    return GroundSet::from_coords(pts);
}

void gallery_line3(Report& report) {
    GroundPtr g = line3_ground();
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);

    PointSubset exposed = phi_exposed_set(space, all);
    report.results["phi_exposed"] = ids_json(exposed.ids());
    ordered_json exp_details;
    exp_details["computed"] = ids_json(exposed.ids());
    report.add_check("exposed_is_endpoints", exposed.ids() == std::vector<int>{0, 2}, kStrictTol,
                     std::move(exp_details));

    PointSubset extremal = phi_extremal_points(space, all);
    report.results["phi_extremal"] = ids_json(extremal.ids());
    ordered_json ext_details;
    ext_details["computed"] = ids_json(extremal.ids());
    report.add_check("extremal_is_endpoints", extremal.ids() == std::vector<int>{0, 2}, kStrictTol,
                     std::move(ext_details));

    detail::reconstruction_analysis(report, space, all, all, ReconstructionMode::Exposed,
                                    kStrictTol);
    detail::boundary_analysis(report, space, all, 7, 50, kStrictTol);
}

void gallery_square(Report& report) {
    std::vector<Eigen::VectorXd> pts;
    const double coords[5][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}};
    for (const auto& c : coords) {
        Eigen::VectorXd p(2);
        p << c[0], c[1];
        pts.push_back(p);
    }
    GroundPtr g = GroundSet::from_coords(pts);
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);

    auto classes = compare_point_classes(all);
    report.results["exp"] = ids_json(classes.exp_ids);
    report.results["aexp"] = ids_json(classes.aexp_ids);
    report.results["ext"] = ids_json(classes.ext_ids);
    const std::vector<int> corners{0, 1, 2, 3};
    ordered_json class_details;
    class_details["exp"] = ids_json(classes.exp_ids);
    class_details["aexp"] = ids_json(classes.aexp_ids);
    class_details["ext"] = ids_json(classes.ext_ids);
    report.add_check("classes_are_corners",
                     classes.exp_ids == corners && classes.aexp_ids == corners &&
                         classes.ext_ids == corners,
                     kStrictTol, std::move(class_details));

    PointSubset extremal = phi_extremal_points(space, all);
    report.results["phi_extremal"] = ids_json(extremal.ids());
    ordered_json ext_details;
    ext_details["computed"] = ids_json(extremal.ids());
    report.add_check("extremal_is_corners", extremal.ids() == corners, kStrictTol,
                     std::move(ext_details));

    detail::reconstruction_analysis(report, space, all, all, ReconstructionMode::Exposed,
                                    kStrictTol);
}

void gallery_truncated_cube(Report& report, int n) {
    if (n < 1 || n > 8)
        throw UnknownGallery("truncated_cube dimension must be between 1 and 8");
    const int count = 1 << n;
    std::vector<Eigen::VectorXd> pts;
    for (int mask = 0; mask < count; ++mask) {
        Eigen::VectorXd p(n);
        for (int i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        pts.push_back(p);
    }
    GroundPtr g = GroundSet::from_coords(pts);
    PhiSpace space = PhiSpace::linear(g);
    PointSubset all = PointSubset::full(g);

    PointSubset exposed = phi_exposed_set(space, all);
    report.results["exposed_count"] = exposed.size();
    ordered_json count_details;
    count_details["exposed"] = exposed.size();
    count_details["expected"] = count;
    report.add_check("all_vertices_exposed", exposed.size() == count, kStrictTol,
                     std::move(count_details));

    // The geometrically weighted functional sum_i 2^{-i} x_i attains its
    // strict maximum at the all-ones vertex; its margin over the runner-up
    // (the vertex flipping only the lightest coordinate) is 2^{2-n}.
    PhiVector weights{Eigen::VectorXd(n)};
    for (int i = 0; i < n; ++i) weights.coeffs[i] = std::pow(2.0, -i);
    const Eigen::VectorXd vals = space.evaluate_all(weights);
    const int ones = count - 1;  // mask with every bit set
    double margin = std::numeric_limits<double>::infinity();
    int best_other = -1;
    for (int x = 0; x < count; ++x) {
        if (x == ones) continue;
        if (vals[ones] - vals[x] < margin) {
            margin = vals[ones] - vals[x];
            best_other = x;
        }
    }
    report.results["weighted_functional"] = vec_json(weights.coeffs);
    report.results["weighted_margin"] = margin;
    ordered_json details;
    details["margin"] = margin;
    details["expected_margin"] = std::pow(2.0, 2 - n);
    details["runner_up"] = best_other;
    report.add_check("weighted_functional_exposes_all_ones",
                     margin > 0.0 && std::abs(margin - std::pow(2.0, 2 - n)) <= 1e-12, 1e-12,
                     std::move(details));
}

void gallery_stadium(Report& report) {
    StadiumReport stadium = stadium_exposure_diagnostic();
    report.results["num_angles"] = stadium.num_angles;
    report.results["num_boundary_samples"] = stadium.num_boundary_samples;
    report.results["angles_containing_corner"] = stadium.angles_containing_corner;
    report.results["min_maximizer_diameter"] = json_number(stadium.min_maximizer_diameter);

    ordered_json midpoint_details;
    midpoint_details["corner_is_midpoint"] = stadium.corner_is_midpoint;
    midpoint_details["boundary_samples"] = stadium.num_boundary_samples;
    report.add_check("corner_passes_midpoint_extreme_test", !stadium.corner_is_midpoint, 1e-9,
                     std::move(midpoint_details));
    ordered_json details;
    details["angles_containing_corner"] = stadium.angles_containing_corner;
    details["min_maximizer_diameter"] = json_number(stadium.min_maximizer_diameter);
    report.add_check("no_direction_exposes_corner",
                     !stadium.corner_exposed && stadium.angles_containing_corner > 0 &&
                         stadium.min_maximizer_diameter >= 0.5,
                     1e-9, std::move(details));
}

void gallery_two_point_algebra(Report& report) {
    Eigen::MatrixXd metric(2, 2);
    metric << 0, 1, 1, 0;
    GroundPtr g = GroundSet::from_metric(metric);
    Eigen::MatrixXd rows(2, 2);
    rows << 1, 0, 0, 1;  // indicator dictionary
    PhiSpace space = PhiSpace::table(g, rows);
    PointSubset all = PointSubset::full(g);

    DualPolytope poly = dual_ball(space, all);
    report.results["generator_count"] = static_cast<int>(poly.generators().size());
    auto exposed = weakstar_exposed_generators(poly);
    int non_degenerate = 0;
    for (const auto& e : exposed)
        if (!e.degenerate) ++non_degenerate;
    ordered_json cross_details;
    cross_details["exposed_generators"] = non_degenerate;
    report.add_check("cross_polytope_all_generators_exposed", non_degenerate == 4, kStrictTol,
                     std::move(cross_details));

    detail::boundary_analysis(report, space, all, 11, 50, kStrictTol);
}

void gallery_random_polytope(Report& report, int d, int n, std::uint64_t seed) {
    if (d < 1 || d > 4 || n < d + 2 || n > 200)
        throw UnknownGallery("random_polytope needs 1 <= d <= 4 and d+2 <= n <= 200");
    GroundPtr g;
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 32) throw UnknownGallery("could not draw a separated point set");
        Rng rng = Rng::stream(seed, attempt);
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.box_vector(d));
        g = GroundSet::from_coords(pts);
        if (PhiSpace::affine(g).separates_points().separates) break;
    }
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);

    auto classes = compare_point_classes(all);
    report.results["exp"] = ids_json(classes.exp_ids);
    report.results["aexp"] = ids_json(classes.aexp_ids);
    report.results["ext"] = ids_json(classes.ext_ids);
    ordered_json class_details;
    class_details["exp"] = ids_json(classes.exp_ids);
    class_details["aexp"] = ids_json(classes.aexp_ids);
    class_details["ext"] = ids_json(classes.ext_ids);
    report.add_check("exp_equals_aexp_equals_ext",
                     classes.exp_ids == classes.aexp_ids && classes.aexp_ids == classes.ext_ids,
                     kStrictTol, std::move(class_details));

    detail::reconstruction_analysis(report, space, all, all, ReconstructionMode::Exposed,
                                    kStrictTol);
    detail::reconstruction_analysis(report, space, all, all, ReconstructionMode::Extremal,
                                    kStrictTol);
    detail::boundary_analysis(report, space, all, seed, 50, kStrictTol);
}

}  // namespace

Report run_gallery(const std::string& name) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.task = "gallery";
    report.inputs["name"] = name;

    ParsedName parsed = parse_name(name);
    if (parsed.base == "line3" && parsed.args.empty()) gallery_line3(report);
    else if (parsed.base == "square" && parsed.args.empty()) gallery_square(report);
    else if (parsed.base == "truncated_cube" && parsed.args.size() == 1)
        gallery_truncated_cube(report, static_cast<int>(parsed.args[0]));
    else if (parsed.base == "stadium" && parsed.args.empty()) gallery_stadium(report);
    else if (parsed.base == "two_point_algebra" && parsed.args.empty())
        gallery_two_point_algebra(report);
    else if (parsed.base == "random_polytope" && parsed.args.size() == 3) {
        report.seed = static_cast<std::uint64_t>(parsed.args[2]);
        gallery_random_polytope(report, static_cast<int>(parsed.args[0]),
                                static_cast<int>(parsed.args[1]),
                                static_cast<std::uint64_t>(parsed.args[2]));
    } else {
        throw UnknownGallery("unknown gallery instance '" + name + "'");
    }

    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace phiconv
