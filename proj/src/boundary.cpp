#include "phiconv/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phiconv/lp.hpp"

namespace phiconv {

namespace {

constexpr double kVectorEqTol = 1e-12;

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a - b).cwiseAbs().maxCoeff() <= kVectorEqTol;
}

// Is `target` a convex combination of `others`? Feasibility LP with one
// weight per candidate generator.
bool in_convex_hull(const Eigen::VectorXd& target, const std::vector<const Eigen::VectorXd*>& others) {
    if (others.empty()) return false;
    const int m = static_cast<int>(target.size());
    const int k = static_cast<int>(others.size());
    auto prog = lp::LinearProgram::with_vars(k);
    for (int j = 0; j < k; ++j) prog.set_bounds(j, 0.0, std::nullopt);
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd row(k);
        for (int j = 0; j < k; ++j) row[j] = (*others[static_cast<size_t>(j)])[i];
        prog.add_constraint(std::move(row), lp::Relation::Eq, target[i]);
    }
    prog.add_constraint(Eigen::VectorXd::Ones(k), lp::Relation::Eq, 1.0);
    return lp::solve(prog).status == lp::LpStatus::Optimal;
}

}  // namespace

DualPolytope::DualPolytope(const PhiSpace& space, PointSubset k) : k_(std::move(k)) {
    if (k_.empty()) throw EmptySet("dual ball over the empty set");
    if (k_.parent() != space.ground())
        throw DimensionMismatch("subset from a different ground set");
    m_ = space.dimension();
    has_constants_ = space.has_constants();
    separates_ = true;
    // Separation restricted to K: distinct base points with equal Diracs.
    const auto& ids = k_.ids();
    for (size_t i = 0; i < ids.size() && separates_; ++i)
        for (size_t j = i + 1; j < ids.size(); ++j)
            if (same_vector(space.dirac(ids[i]).coords, space.dirac(ids[j]).coords)) {
                separates_ = false;
                break;
            }
    if (!separates_) warnings_.push_back("dictionary does not separate the base points");
    if (!has_constants_) warnings_.push_back("dictionary does not contain the constants");

    for (int sign : {+1, -1})
        for (int x : k_) {
            DualGenerator g;
            g.sign = sign;
            g.point = x;
            g.coords = sign * space.dirac(x).coords;
            generators_.push_back(std::move(g));
        }
}

double DualPolytope::support(const PhiVector& c) const {
    if (c.coeffs.size() != m_) throw DimensionMismatch("coefficient length mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& g : generators_) best = std::max(best, g.coords.dot(c.coeffs));
    return best;
}

DualPolytope dual_ball(const PhiSpace& space, const PointSubset& K) {
    return DualPolytope(space, K);
}

PointSubset choquet_boundary(const DualPolytope& poly) {
    const auto& gens = poly.generators();
    std::vector<int> boundary;
    for (const auto& g : gens) {
        if (g.sign != +1) continue;
        std::vector<const Eigen::VectorXd*> others;
        for (const auto& h : gens) {
            if (&h == &g) continue;
            if (same_vector(h.coords, g.coords)) continue;  // copies of the same point
            others.push_back(&h.coords);
        }
        if (!in_convex_hull(g.coords, others)) boundary.push_back(g.point);
    }
    return PointSubset(poly.base_points().parent(), std::move(boundary));
}

bool is_norming_subset(const DualPolytope& poly, const PointSubset& L) {
    if (L.empty()) throw EmptySet("norming test with an empty subset");
    if (!L.is_subset_of(poly.base_points())) throw NotSubset("L must be a subset of K");
    const auto& gens = poly.generators();
    std::vector<const Eigen::VectorXd*> l_gens;
    for (const auto& g : gens)
        if (L.contains(g.point)) l_gens.push_back(&g.coords);
    for (const auto& g : gens) {
        if (L.contains(g.point)) continue;
        if (!in_convex_hull(g.coords, l_gens)) return false;
    }
    return true;
}

PointSubset shilov_boundary(const DualPolytope& poly) {
    if (!poly.has_constants() || !poly.separates())
        throw HypothesisViolated(
            "Shilov boundary needs a dictionary separating K and containing the constants");
    PointSubset boundary = choquet_boundary(poly);
    if (boundary.empty() || !is_norming_subset(poly, boundary))
        throw Error("Choquet boundary failed the norming check");  // unreachable on valid input
    return boundary;
}

std::vector<ExposedGenerator> weakstar_exposed_generators(const DualPolytope& poly,
                                                          double strict_tol) {
    const auto& gens = poly.generators();
    const int m = poly.dimension();
    std::vector<ExposedGenerator> exposed;

    for (const auto& g : gens) {
        bool degenerate = false;
        std::vector<const Eigen::VectorXd*> rivals;
        for (const auto& h : gens) {
            if (&h == &g) continue;
            if (same_vector(h.coords, g.coords)) {
                degenerate = true;
                continue;
            }
            rivals.push_back(&h.coords);
        }
        if (degenerate) {
            ExposedGenerator e;
            e.sign = g.sign;
            e.point = g.point;
            e.degenerate = true;
            exposed.push_back(std::move(e));
            continue;
        }

        // maximize t s.t. <g - g', c> >= t for all rivals, sup_K |phi_c| <= 1.
        // The norm cap is <g'', c> <= 1 over all generators (signs included).
        auto prog = lp::LinearProgram::with_vars(m + 1);
        prog.objective[m] = 1.0;
        for (const auto* r : rivals) {
            Eigen::VectorXd row = Eigen::VectorXd::Zero(m + 1);
            row.head(m) = g.coords - *r;
            row[m] = -1.0;
            prog.add_constraint(std::move(row), lp::Relation::GreaterEq, 0.0);
        }
        for (const auto& h : gens) {
            Eigen::VectorXd row = Eigen::VectorXd::Zero(m + 1);
            row.head(m) = h.coords;
            prog.add_constraint(std::move(row), lp::Relation::LessEq, 1.0);
        }
        auto outcome = lp::solve(prog);
        if (outcome.status != lp::LpStatus::Optimal)
            throw IllFormed("weak* exposure LP should be bounded and feasible");
        if (outcome.value > strict_tol) {
            ExposedGenerator e;
            e.sign = g.sign;
            e.point = g.point;
            e.direction = PhiVector{outcome.solution.head(m)};
            e.margin = outcome.value;
            exposed.push_back(std::move(e));
        }
    }
    return exposed;
}

}  // namespace phiconv
