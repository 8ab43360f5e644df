#include "phiconv/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phiconv {

namespace {

// Shared LP shape: maximize t over coefficients in the unit box, where each
// constraint row forces phi_c(x) - phi_c(other) >= t. Variable layout:
// c_1..c_m in [-1,1], then t free.
lp::LinearProgram gap_program(const PhiSpace& space, int x, const std::vector<int>& others) {
    const int m = space.dimension();
    auto prog = lp::LinearProgram::with_vars(m + 1);
    prog.objective[m] = 1.0;
    for (int i = 0; i < m; ++i) prog.set_bounds(i, -1.0, 1.0);
    const Eigen::MatrixXd& e = space.eval_matrix();
    for (int a : others) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(m + 1);
        row.head(m) = e.col(x) - e.col(a);
        row[m] = -1.0;
        prog.add_constraint(std::move(row), lp::Relation::GreaterEq, 0.0);
    }
    return prog;
}

SeparationCertificate make_certificate(const PhiSpace& space, const PointSubset& A, int x,
                                       const Eigen::VectorXd& coeffs) {
    SeparationCertificate cert;
    cert.direction = PhiVector{coeffs};
    const Eigen::VectorXd vals = space.evaluate_all(cert.direction);
    double sup_a = -std::numeric_limits<double>::infinity();
    for (int a : A) sup_a = std::max(sup_a, vals[a]);
    const double vx = vals[x];
    cert.threshold = 0.5 * (sup_a + vx);
    cert.margin = 0.5 * (vx - sup_a);
    if (!(cert.margin > 0.0)) throw NotSeparable("certificate margin collapsed");
    return cert;
}

}  // namespace

MembershipOutcome hull_membership(const PhiSpace& space, const PointSubset& A, int x,
                                  double strict_tol) {
    if (A.empty()) throw EmptySet("hull of the empty set");
    if (A.parent() != space.ground()) throw DimensionMismatch("subset from a different ground set");
    space.ground()->check_point(x);
    if (A.contains(x)) return {true, 0.0, std::nullopt};

    auto outcome = lp::solve(gap_program(space, x, A.ids()));
    if (outcome.status != lp::LpStatus::Optimal)
        throw IllFormed("separation LP should always be bounded and feasible");
    const double gap = outcome.value;
    if (gap <= strict_tol) return {true, gap, std::nullopt};

    MembershipOutcome out;
    out.inside = false;
    out.lp_gap = gap;
    out.certificate =
        make_certificate(space, A, x, outcome.solution.head(space.dimension()));
    return out;
}

PointSubset phi_convex_hull(const PhiSpace& space, const PointSubset& A,
                            const PointSubset& ambient, double strict_tol) {
    if (A.empty()) throw EmptySet("hull of the empty set");
    if (!A.is_subset_of(ambient)) throw NotSubset("hull generators must lie in the ambient set");
    std::vector<int> members;
    for (int x : ambient)
        if (hull_membership(space, A, x, strict_tol).inside) members.push_back(x);
    return PointSubset(ambient.parent(), std::move(members));
}

bool is_phi_convex(const PhiSpace& space, const PointSubset& X, const PointSubset& ambient,
                   double strict_tol) {
    if (X.empty()) throw EmptySet("empty set is not Phi-convex");
    if (!X.is_subset_of(ambient)) throw NotSubset("set must lie in the ambient");
    return phi_convex_hull(space, X, ambient, strict_tol) == X;
}

SeparationCertificate separate_from_hull(const PhiSpace& space, const PointSubset& A, int x,
                                         double strict_tol) {
    auto outcome = hull_membership(space, A, x, strict_tol);
    if (outcome.inside)
        throw NotSeparable("point " + std::to_string(x) + " lies in the Phi-convex hull");
    return *outcome.certificate;
}

}  // namespace phiconv
