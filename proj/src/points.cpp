#include "phiconv/points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phiconv {

namespace {

// Maximize phi_c(a) - phi_c(w) subject to phi_c(x) <= phi_c(a),
// phi_c(y) <= phi_c(a) and the coefficient box. A positive optimum
// witnesses that a is not Phi-between x and y.
double betweenness_gap(const PhiSpace& space, int a, int x, int y, int w) {
    const int m = space.dimension();
    const Eigen::MatrixXd& e = space.eval_matrix();
    auto prog = lp::LinearProgram::with_vars(m);
    for (int i = 0; i < m; ++i) prog.set_bounds(i, -1.0, 1.0);
    prog.objective = e.col(a) - e.col(w);
    prog.add_constraint(e.col(x) - e.col(a), lp::Relation::LessEq, 0.0);
    prog.add_constraint(e.col(y) - e.col(a), lp::Relation::LessEq, 0.0);
    auto outcome = lp::solve(prog);
    if (outcome.status != lp::LpStatus::Optimal)
        throw IllFormed("betweenness LP should be bounded and feasible");
    return outcome.value;
}

}  // namespace

bool is_phi_between(const PhiSpace& space, int a, int x, int y, double strict_tol) {
    space.ground()->check_point(a);
    space.ground()->check_point(x);
    space.ground()->check_point(y);
    if (betweenness_gap(space, a, x, y, x) > strict_tol) return false;
    if (betweenness_gap(space, a, x, y, y) > strict_tol) return false;
    return true;
}

PointSubset phi_extremal_points(const PhiSpace& space, const PointSubset& B, double strict_tol) {
    if (B.empty()) throw EmptySet("extremal points of the empty set");
    std::vector<int> extremal;
    const auto& ids = B.ids();
    for (int a : ids) {
        bool is_extremal = true;
        for (size_t i = 0; i < ids.size() && is_extremal; ++i) {
            for (size_t j = i; j < ids.size() && is_extremal; ++j) {
                const int x = ids[i], y = ids[j];
                if (x == a && y == a) continue;
                if (is_phi_between(space, a, x, y, strict_tol)) is_extremal = false;
            }
        }
        if (is_extremal) extremal.push_back(a);
    }
    return PointSubset(B.parent(), std::move(extremal));
}

std::vector<ExposureWitness> phi_exposed_points(const PhiSpace& space, const PointSubset& C,
                                                double strict_tol) {
    if (C.empty()) throw EmptySet("exposed points of the empty set");
    std::vector<ExposureWitness> witnesses;
    const int m = space.dimension();

    if (C.size() == 1) {
        ExposureWitness w;
        w.point = C.ids().front();
        w.direction = PhiVector{Eigen::VectorXd::Zero(m)};
        w.margin = std::numeric_limits<double>::infinity();
        w.vacuous = true;
        witnesses.push_back(std::move(w));
        return witnesses;
    }

    const Eigen::MatrixXd& e = space.eval_matrix();
    for (int k : C) {
        auto prog = lp::LinearProgram::with_vars(m + 1);
        prog.objective[m] = 1.0;
        for (int i = 0; i < m; ++i) prog.set_bounds(i, -1.0, 1.0);
        for (int y : C) {
            if (y == k) continue;
            Eigen::VectorXd row = Eigen::VectorXd::Zero(m + 1);
            row.head(m) = e.col(k) - e.col(y);
            row[m] = -1.0;
            prog.add_constraint(std::move(row), lp::Relation::GreaterEq, 0.0);
        }
        auto outcome = lp::solve(prog);
        if (outcome.status != lp::LpStatus::Optimal)
            throw IllFormed("exposure LP should be bounded and feasible");
        if (outcome.value > strict_tol) {
            ExposureWitness w;
            w.point = k;
            w.direction = PhiVector{outcome.solution.head(m)};
            w.margin = outcome.value;
            witnesses.push_back(std::move(w));
        }
    }
    return witnesses;
}

PointSubset phi_exposed_set(const PhiSpace& space, const PointSubset& C, double strict_tol) {
    std::vector<int> ids;
    for (const auto& w : phi_exposed_points(space, C, strict_tol)) ids.push_back(w.point);
    return PointSubset(C.parent(), std::move(ids));
}

std::vector<ExposureWitness> affine_exposed_points(const PointSubset& C, double strict_tol) {
    if (!C.parent()->has_coords()) throw MissingCoords("affine exposure needs coordinates");
    PhiSpace affine = PhiSpace::affine(C.parent());
    return phi_exposed_points(affine, C, strict_tol);
}

PointSubset classical_extreme_points(const PointSubset& C, double strict_tol) {
    if (C.empty()) throw EmptySet("extreme points of the empty set");
    if (!C.parent()->has_coords()) throw MissingCoords("extreme-point test needs coordinates");
    PhiSpace affine = PhiSpace::affine(C.parent());
    std::vector<int> extreme;
    for (int k : C) {
        if (C.size() == 1) {
            extreme.push_back(k);
            continue;
        }
        PointSubset rest = C.without(k);
        if (!hull_membership(affine, rest, k, strict_tol).inside) extreme.push_back(k);
    }
    return PointSubset(C.parent(), std::move(extreme));
}

PointClassReport compare_point_classes(const PointSubset& C, double strict_tol) {
    if (C.empty()) throw EmptySet("point-class comparison of the empty set");
    if (!C.parent()->has_coords()) throw MissingCoords("point-class comparison needs coordinates");
    PointClassReport report;
    PhiSpace lin = PhiSpace::linear(C.parent());
    report.exposed_linear = phi_exposed_points(lin, C, strict_tol);
    report.exposed_affine = affine_exposed_points(C, strict_tol);
    for (const auto& w : report.exposed_linear) report.exp_ids.push_back(w.point);
    for (const auto& w : report.exposed_affine) report.aexp_ids.push_back(w.point);
    report.ext_ids = classical_extreme_points(C, strict_tol).ids();
    report.exp_subset_aexp =
        std::includes(report.aexp_ids.begin(), report.aexp_ids.end(), report.exp_ids.begin(),
                      report.exp_ids.end());
    report.aexp_subset_ext =
        std::includes(report.ext_ids.begin(), report.ext_ids.end(), report.aexp_ids.begin(),
                      report.aexp_ids.end());
    report.chain_ok = report.exp_subset_aexp && report.aexp_subset_ext;
    return report;
}

ReconstructionReport reconstruction_check(const PhiSpace& space, const PointSubset& K,
                                          const PointSubset& ambient, ReconstructionMode mode,
                                          double strict_tol) {
    if (K.empty()) throw EmptySet("reconstruction of the empty set");
    auto sep = space.separates_points();
    if (!sep.separates)
        throw HypothesisViolated("dictionary does not separate points " +
                                 std::to_string(sep.witness_x) + " and " +
                                 std::to_string(sep.witness_y));
    if (!is_phi_convex(space, K, ambient, strict_tol))
        throw HypothesisViolated("K is not Phi-convex in the ambient set");

    ReconstructionReport report;
    report.mode = mode;
    PointSubset p = mode == ReconstructionMode::Extremal ? phi_extremal_points(space, K, strict_tol)
                                                         : phi_exposed_set(space, K, strict_tol);
    report.points = p.ids();
    report.nonempty = !p.empty();
    if (!report.nonempty) return report;

    PointSubset hull = phi_convex_hull(space, p, ambient, strict_tol);
    report.hull = hull.ids();
    report.hull_equals_k = hull == K;
    for (int id : K)
        if (!hull.contains(id)) report.missing.push_back(id);
    for (int id : hull)
        if (!K.contains(id)) report.extra.push_back(id);
    return report;
}

MilmanReport milman_converse_check(const PhiSpace& space, const PointSubset& A,
                                   const PointSubset& ambient, double strict_tol) {
    if (A.empty()) throw EmptySet("Milman check with empty generator set");
    MilmanReport report;
    PointSubset hull = phi_convex_hull(space, A, ambient, strict_tol);
    report.hull = hull.ids();
    PointSubset ext = phi_extremal_points(space, hull, strict_tol);
    report.extremal = ext.ids();
    for (int id : ext)
        if (!A.contains(id)) report.violations.push_back(id);
    return report;
}

StadiumReport stadium_exposure_diagnostic(int num_angles, int boundary_samples, double value_tol) {
    StadiumReport report;
    report.num_angles = num_angles;

    // Parametric boundary of conv(D((-1,0),1) u D((1,0),1)): two horizontal
    // segments y = +-1, x in [-1,1], and two semicircular caps. Corner points
    // are included exactly.
    std::vector<Eigen::Vector2d> boundary;
    const int per_piece = std::max(2, boundary_samples / 4);
    for (int i = 0; i < per_piece; ++i) {
        const double x = -1.0 + 2.0 * i / (per_piece - 1);
        boundary.emplace_back(x, 1.0);
        boundary.emplace_back(x, -1.0);
    }
    const double pi = 3.141592653589793;
    for (int i = 0; i < per_piece; ++i) {
        const double psi = -pi / 2 + pi * i / (per_piece - 1);
        boundary.emplace_back(1.0 + std::cos(psi), std::sin(psi));   // right cap
        boundary.emplace_back(-1.0 - std::cos(psi), std::sin(psi));  // left cap
    }
    report.num_boundary_samples = static_cast<int>(boundary.size());
    const Eigen::Vector2d corner(1.0, 1.0);

    // Midpoint extreme test: the corner must not be the midpoint of two
    // distinct boundary samples.
    const double midpoint_tol = 1e-9;
    for (size_t i = 0; i < boundary.size() && !report.corner_is_midpoint; ++i) {
        for (size_t j = i + 1; j < boundary.size(); ++j) {
            if ((boundary[i] - boundary[j]).norm() <= midpoint_tol) continue;
            if ((0.5 * (boundary[i] + boundary[j]) - corner).norm() <= midpoint_tol) {
                report.corner_is_midpoint = true;
                break;
            }
        }
    }

    // Maximizer sets are computed in closed form per boundary piece, so the
    // diagnostic reflects the continuous body rather than sample artifacts:
    // a linear functional maximizes each flat segment at an endpoint and
    // each circular cap at the clamped angle nearest its own direction.
    report.min_maximizer_diameter = std::numeric_limits<double>::infinity();
    for (int k = 0; k < num_angles; ++k) {
        const double theta = 2.0 * pi * k / num_angles;
        const Eigen::Vector2d u(std::cos(theta), std::sin(theta));

        std::vector<Eigen::Vector2d> candidates = {
            {1.0, 1.0}, {-1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}};
        const double alpha = std::atan2(u.y(), u.x());
        const double psi_right = std::clamp(alpha, -pi / 2, pi / 2);
        candidates.emplace_back(1.0 + std::cos(psi_right), std::sin(psi_right));
        // left cap spans [pi/2, 3pi/2]; bring alpha into [0, 2pi) first
        const double alpha_left = alpha < 0 ? alpha + 2 * pi : alpha;
        const double psi_left = std::clamp(alpha_left, pi / 2, 3 * pi / 2);
        candidates.emplace_back(-1.0 + std::cos(psi_left), std::sin(psi_left));

        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : candidates) best = std::max(best, u.dot(p));
        if (u.dot(corner) < best - value_tol) continue;  // corner not a maximizer

        ++report.angles_containing_corner;
        std::vector<Eigen::Vector2d> maximizers;
        for (const auto& p : candidates)
            if (u.dot(p) >= best - value_tol) maximizers.push_back(p);
        double diameter = 0.0;
        for (size_t i = 0; i < maximizers.size(); ++i)
            for (size_t j = i + 1; j < maximizers.size(); ++j)
                diameter = std::max(diameter, (maximizers[i] - maximizers[j]).norm());
        report.min_maximizer_diameter = std::min(report.min_maximizer_diameter, diameter);
        if (diameter < 0.5) report.corner_exposed = true;
    }
    if (report.angles_containing_corner == 0) report.min_maximizer_diameter = 0.0;
    return report;
}

}  // namespace phiconv
