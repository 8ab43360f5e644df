#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "phiconv/errors.hpp"

namespace phiconv::lp {

enum class Relation { LessEq, Eq, GreaterEq };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct Constraint {
    Eigen::VectorXd row;
    Relation rel;
    double rhs;
};

/// A dense LP in maximization form with optional per-variable bounds.
struct LinearProgram {
    Eigen::VectorXd objective;  // maximized
    std::vector<Constraint> constraints;
    std::vector<std::optional<double>> lower;  // empty vector means all free below
    std::vector<std::optional<double>> upper;

    int num_vars() const { return static_cast<int>(objective.size()); }

    /// Program with n variables, no constraints, free bounds.
    static LinearProgram with_vars(int n) {
        LinearProgram p;
        p.objective = Eigen::VectorXd::Zero(n);
        p.lower.assign(static_cast<size_t>(n), std::nullopt);
        p.upper.assign(static_cast<size_t>(n), std::nullopt);
        return p;
    }

    void add_constraint(Eigen::VectorXd row, Relation rel, double rhs) {
        constraints.push_back({std::move(row), rel, rhs});
    }

    void set_bounds(int var, std::optional<double> lo, std::optional<double> hi) {
        lower[static_cast<size_t>(var)] = lo;
        upper[static_cast<size_t>(var)] = hi;
    }
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd solution;  // original variable space, valid when Optimal
    double value = 0.0;        // objective at the solution, valid when Optimal
};

inline constexpr double kFeasTol = 1e-8;
inline constexpr double kPivotTol = 1e-10;
inline constexpr double kEnterTol = 1e-9;  // dual tolerance for entering columns

/// Two-phase dense simplex with Bland's anti-cycling rule. Deterministic:
/// identical inputs produce identical outcomes. When Optimal, the returned
/// solution satisfies every constraint and bound within kFeasTol.
LpOutcome solve(const LinearProgram& lp);

}  // namespace phiconv::lp
