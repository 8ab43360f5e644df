#include "phiconv/cli.hpp"

#include <chrono>

#include "analysis.hpp"
#include "phiconv/gallery.hpp"
#include "phiconv/problem.hpp"
#include "phiconv/variational.hpp"

namespace phiconv::cli {

namespace {

using detail::certificate_json;
using detail::ids_json;
using detail::vec_json;
using detail::witnesses_json;
using nlohmann::ordered_json;

PointSubset pick_set(const ProblemFile& problem, const RunOptions& options, bool required) {
    if (!options.set_name.empty()) return problem.set(options.set_name);
    if (required)
        throw ValidationError("subcommand '" + options.subcommand + "' needs --set NAME");
    return problem.full();
}

void run_hull(const ProblemFile& problem, const RunOptions& options, Report& report) {
    const PhiSpace& space = problem.space();
    PointSubset a = pick_set(problem, options, true);
    PointSubset ambient = problem.full();

    PointSubset hull = phi_convex_hull(space, a, ambient, options.tol);
    report.results["set"] = ids_json(a.ids());
    report.results["hull"] = ids_json(hull.ids());
    report.results["is_phi_convex"] = is_phi_convex(space, a, ambient, options.tol);

    ordered_json outside = ordered_json::array();
    ordered_json unsound = ordered_json::array();
    for (int x : ambient) {
        if (hull.contains(x)) continue;
        SeparationCertificate cert = separate_from_hull(space, a, x, options.tol);
        ordered_json cj = certificate_json(cert);
        cj["point"] = x;
        // re-verify the certificate invariant
        const Eigen::VectorXd vals = space.evaluate_all(cert.direction);
        bool sound = vals[x] >= cert.threshold + cert.margin - 1e-12;
        for (int p : a) sound = sound && vals[p] <= cert.threshold - cert.margin + 1e-12;
        if (!sound) unsound.push_back(x);
        outside.push_back(std::move(cj));
    }
    report.results["outside_certificates"] = std::move(outside);

    ordered_json hull_details;
    hull_details["set"] = ids_json(a.ids());
    hull_details["hull"] = ids_json(hull.ids());
    report.add_check("hull_contains_generators", a.is_subset_of(hull), options.tol, hull_details);
    report.add_check("hull_idempotent", phi_convex_hull(space, hull, ambient, options.tol) == hull,
                     options.tol, std::move(hull_details));
    ordered_json cert_details;
    cert_details["unsound_points"] = unsound;
    report.add_check("certificates_sound", unsound.empty(), 1e-12, std::move(cert_details));
}

void run_exposed(const ProblemFile& problem, const RunOptions& options, Report& report) {
    const PhiSpace& space = problem.space();
    PointSubset c = pick_set(problem, options, false);
    auto witnesses = phi_exposed_points(space, c, options.tol);
    report.results["set"] = ids_json(c.ids());
    report.results["witnesses"] = witnesses_json(witnesses);

    ordered_json unsound = ordered_json::array();
    for (const auto& w : witnesses)
        if (!detail::witness_sound(space, c, w)) unsound.push_back(w.point);
    ordered_json details;
    details["unsound_points"] = unsound;
    report.add_check("witnesses_sound", unsound.empty(), 1e-9, std::move(details));
}

void run_extremal(const ProblemFile& problem, const RunOptions& options, Report& report) {
    const PhiSpace& space = problem.space();
    PointSubset b = pick_set(problem, options, false);
    PointSubset extremal = phi_extremal_points(space, b, options.tol);
    PointSubset exposed = phi_exposed_set(space, b, options.tol);
    report.results["set"] = ids_json(b.ids());
    report.results["extremal"] = ids_json(extremal.ids());
    report.results["exposed"] = ids_json(exposed.ids());

    ordered_json details;
    details["exposed"] = ids_json(exposed.ids());
    details["extremal"] = ids_json(extremal.ids());
    report.add_check("exposed_subset_of_extremal", exposed.is_subset_of(extremal), options.tol,
                     std::move(details));
}

void run_compare(const ProblemFile& problem, const RunOptions& options, Report& report) {
    PointSubset c = pick_set(problem, options, false);
    auto classes = compare_point_classes(c, options.tol);
    report.results["exp"] = ids_json(classes.exp_ids);
    report.results["aexp"] = ids_json(classes.aexp_ids);
    report.results["ext"] = ids_json(classes.ext_ids);
    report.results["exp_witnesses"] = witnesses_json(classes.exposed_linear);
    report.results["aexp_witnesses"] = witnesses_json(classes.exposed_affine);
    ordered_json details;
    details["exp"] = ids_json(classes.exp_ids);
    details["aexp"] = ids_json(classes.aexp_ids);
    details["ext"] = ids_json(classes.ext_ids);
    report.add_check("exp_subset_aexp", classes.exp_subset_aexp, options.tol, details);
    report.add_check("aexp_subset_ext", classes.aexp_subset_ext, options.tol, std::move(details));
}

void run_check(const ProblemFile& problem, const RunOptions& options, Report& report) {
    const PhiSpace& space = problem.space();
    PointSubset k = pick_set(problem, options, false);
    ReconstructionMode mode;
    if (options.mode == "extremal") mode = ReconstructionMode::Extremal;
    else if (options.mode == "exposed") mode = ReconstructionMode::Exposed;
    else throw ValidationError("--mode must be 'extremal' or 'exposed'");
    detail::reconstruction_analysis(report, space, k, problem.full(), mode, options.tol);
}

void run_variational(const ProblemFile& problem, const RunOptions& options, Report& report) {
    const PhiSpace& space = problem.space();
    if (!problem.f) throw ValidationError("f: section required by 'variational'");
    const ExtendedFunction& f = *problem.f;
    PhiVector c0{Eigen::VectorXd::Zero(space.dimension())};

    report.results["conjugate_at_zero"] = conjugate(space, f, c0);
    auto wp = well_posedness(space, f, c0);
    ordered_json wp_json;
    wp_json["minimizers"] = ids_json(wp.minimizers);
    wp_json["gap"] = json_number(wp.gap);
    wp_json["well_posed"] = wp.well_posed;
    report.results["well_posedness_at_zero"] = std::move(wp_json);

    auto stat = ill_posed_fraction(space, f, options.radius, options.samples, options.seed);
    ordered_json stat_json;
    stat_json["samples"] = stat.n_samples;
    stat_json["ill_posed"] = stat.n_ill_posed;
    stat_json["fraction"] = stat.fraction;
    ordered_json bad = ordered_json::array();
    for (const auto& v : stat.ill_posed_samples) bad.push_back(vec_json(v));
    stat_json["ill_posed_directions"] = std::move(bad);
    report.results["ill_posed_fraction"] = std::move(stat_json);

    auto exposing =
        exposing_perturbation(space, f, c0, options.epsilon, options.budget, options.seed);
    ordered_json exp_json;
    exp_json["found"] = exposing.found;
    exp_json["trials"] = exposing.trials;
    if (exposing.found) {
        exp_json["psi"] = vec_json(exposing.psi.coeffs);
        exp_json["psi_norm"] = space.phi_norm(exposing.psi);
        exp_json["minimizers"] = ids_json(exposing.report.minimizers);
    }
    report.results["exposing_perturbation"] = std::move(exp_json);

    // Post-verification: when a perturbation is reported it must be inside
    // the budget radius and genuinely well-posed; `exhausted` is a result.
    bool verified = true;
    ordered_json details;
    if (exposing.found) {
        const double norm = space.phi_norm(exposing.psi);
        PhiVector shifted{c0.coeffs + exposing.psi.coeffs};
        const bool wp_ok = well_posedness(space, f, shifted).well_posed;
        verified = norm <= options.epsilon + 1e-12 && wp_ok;
        details["psi_norm"] = norm;
        details["well_posed"] = wp_ok;
    } else {
        details["status"] = "exhausted";
    }
    report.add_check("exposing_perturbation_verified", verified, 1e-12, std::move(details));
}

void run_boundary(const ProblemFile& problem, const RunOptions& options, Report& report) {
    const PhiSpace& space = problem.space();
    PointSubset k = pick_set(problem, options, false);
    detail::boundary_analysis(report, space, k, options.seed, 100, options.tol);
}

}  // namespace

Report run(const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    report.task = options.subcommand;
    report.seed = options.seed;

    if (options.subcommand == "gallery") {
        if (options.gallery_name.empty())
            throw ValidationError("gallery: needs --name INSTANCE");
        report = run_gallery(options.gallery_name);
    } else {
        if (options.problem_path.empty())
            throw ValidationError("subcommand '" + options.subcommand + "' needs --problem FILE");
        ProblemFile problem = load_problem(options.problem_path);
        report.inputs["problem"] = problem.echo;
        ordered_json flags;
        flags["tol"] = options.tol;
        flags["seed"] = options.seed;
        if (!options.set_name.empty()) flags["set"] = options.set_name;
        if (options.subcommand == "check") flags["mode"] = options.mode;
        if (options.subcommand == "variational") {
            flags["samples"] = options.samples;
            flags["epsilon"] = options.epsilon;
            flags["budget"] = options.budget;
            flags["radius"] = options.radius;
        }
        report.inputs["flags"] = std::move(flags);

        if (options.subcommand == "hull") run_hull(problem, options, report);
        else if (options.subcommand == "exposed") run_exposed(problem, options, report);
        else if (options.subcommand == "extremal") run_extremal(problem, options, report);
        else if (options.subcommand == "compare") run_compare(problem, options, report);
        else if (options.subcommand == "check") run_check(problem, options, report);
        else if (options.subcommand == "variational") run_variational(problem, options, report);
        else if (options.subcommand == "boundary") run_boundary(problem, options, report);
        else throw ValidationError("unknown subcommand '" + options.subcommand + "'");
        report.seed = options.seed;
    }

    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace phiconv::cli
