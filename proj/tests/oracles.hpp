#pragma once

// Brute-force oracles used by the test and acceptance suites. These stay
// independent of the library's decision procedures: the LP oracle inspects
// every candidate vertex of the feasible region, and the planar hull oracle
// is a plain monotone-chain hull with a point-in-polygon test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "phiconv/lp.hpp"

namespace oracles {

struct LpOracleResult {
    bool feasible = false;
    double value = 0.0;
    Eigen::VectorXd solution;
};

// Exhaustive vertex enumeration for LPs whose variables all carry finite
// box bounds (so the feasible set is a bounded polyhedron and, if nonempty,
// attains its optimum at a vertex: a point where n of the inequalities hold
// with equality). Every n-subset of the stacked constraint rows is solved
// and checked for feasibility.
inline LpOracleResult solve_by_vertex_enumeration(const phiconv::lp::LinearProgram& lp) {
    using phiconv::lp::Relation;
    const int n = lp.num_vars();

    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    for (const auto& c : lp.constraints) {
        rows.push_back(c.row);
        rhs.push_back(c.rhs);
        if (c.rel == Relation::Eq) {  // equality contributes both faces
            rows.push_back(-c.row);
            rhs.push_back(-c.rhs);
        }
    }
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[j] = 1.0;
        rows.push_back(e);
        rhs.push_back(*lp.upper[static_cast<size_t>(j)]);
        rows.push_back(-e);
        rhs.push_back(-*lp.lower[static_cast<size_t>(j)]);
    }
    const int total = static_cast<int>(rows.size());

    auto feasible = [&](const Eigen::VectorXd& x) {
        for (const auto& c : lp.constraints) {
            const double lhs = c.row.dot(x);
            const bool ok = c.rel == Relation::LessEq      ? lhs <= c.rhs + 1e-7
                            : c.rel == Relation::GreaterEq ? lhs >= c.rhs - 1e-7
                                                           : std::abs(lhs - c.rhs) <= 1e-7;
            if (!ok) return false;
        }
        for (int j = 0; j < n; ++j)
            if (x[j] < *lp.lower[static_cast<size_t>(j)] - 1e-7 ||
                x[j] > *lp.upper[static_cast<size_t>(j)] + 1e-7)
                return false;
        return true;
    };

    LpOracleResult best;
    std::vector<int> pick(static_cast<size_t>(n));
    std::function<void(int, int)> recurse = [&](int start, int depth) {
        if (depth == n) {
            Eigen::MatrixXd a(n, n);
            Eigen::VectorXd b(n);
            for (int i = 0; i < n; ++i) {
                a.row(i) = rows[static_cast<size_t>(pick[static_cast<size_t>(i)])];
                b[i] = rhs[static_cast<size_t>(pick[static_cast<size_t>(i)])];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd x = lu.solve(b);
            if (!feasible(x)) return;
            const double v = lp.objective.dot(x);
            if (!best.feasible || v > best.value) {
                best.feasible = true;
                best.value = v;
                best.solution = x;
            }
            return;
        }
        for (int i = start; i < total; ++i) {
            pick[static_cast<size_t>(depth)] = i;
            recurse(i + 1, depth + 1);
        }
    };
    recurse(0, 0);
    return best;
}

// Monotone-chain convex hull; returns hull vertices in counterclockwise
// order (collinear points dropped).
inline std::vector<Eigen::Vector2d> convex_hull_2d(std::vector<Eigen::Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) { return a == b; }),
              pts.end());
    const auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    if (pts.size() < 3) return pts;
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const auto& p = pts[i];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

// Signed distance from the hull boundary: positive outside. For points of
// the hull the value is <= 0 (distance to the nearest edge line).
inline double signed_distance_to_hull(const std::vector<Eigen::Vector2d>& hull,
                                      const Eigen::Vector2d& p) {
    if (hull.size() == 1) return (p - hull[0]).norm();
    double max_side = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < hull.size(); ++i) {
        const Eigen::Vector2d a = hull[i];
        const Eigen::Vector2d b = hull[(i + 1) % hull.size()];
        Eigen::Vector2d edge = b - a;
        Eigen::Vector2d outward(edge.y(), -edge.x());  // right normal of a ccw polygon
        outward.normalize();
        max_side = std::max(max_side, outward.dot(p - a));
    }
    return max_side;
}

inline bool point_in_hull_2d(const std::vector<Eigen::Vector2d>& hull, const Eigen::Vector2d& p,
                             double tol = 1e-9) {
    return signed_distance_to_hull(hull, p) <= tol;
}

}  // namespace oracles
