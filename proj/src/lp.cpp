#include "phiconv/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phiconv::lp {

namespace {

// How an original variable maps into the nonnegative computational space.
struct VarMap {
    enum Kind { Shifted, Negated, Split } kind;
    int col0 = -1;
    int col1 = -1;      // second column for Split
    double shift = 0.0; // x = shift + y (Shifted) or x = shift - y (Negated)
};

struct Standardized {
    Eigen::MatrixXd rows;        // m x ncols structural part
    std::vector<Relation> rel;   // after rhs sign normalization
    Eigen::VectorXd rhs;         // >= 0
    Eigen::VectorXd cost;        // ncols, transformed objective
    std::vector<VarMap> vmap;
    int ncols = 0;
};

void validate(const LinearProgram& lp) {
    const int n = lp.num_vars();
    if (n == 0) throw IllFormed("program with zero variables");
    if (!lp.objective.allFinite()) throw IllFormed("non-finite objective");
    if (lp.lower.size() != static_cast<size_t>(n) || lp.upper.size() != static_cast<size_t>(n))
        throw IllFormed("bounds arrays do not match variable count");
    for (const auto& c : lp.constraints) {
        if (c.row.size() != n) throw IllFormed("constraint row of wrong dimension");
        if (!c.row.allFinite() || !std::isfinite(c.rhs)) throw IllFormed("non-finite constraint");
    }
    for (int j = 0; j < n; ++j) {
        if (lp.lower[static_cast<size_t>(j)] && !std::isfinite(*lp.lower[static_cast<size_t>(j)]))
            throw IllFormed("non-finite lower bound");
        if (lp.upper[static_cast<size_t>(j)] && !std::isfinite(*lp.upper[static_cast<size_t>(j)]))
            throw IllFormed("non-finite upper bound");
    }
}

// Shifts/negates/splits variables to be >= 0; turns two-sided bounds into
// extra <= rows; normalizes all rhs to be nonnegative.
std::optional<Standardized> standardize(const LinearProgram& lp) {
    const int n = lp.num_vars();
    Standardized s;
    s.vmap.resize(static_cast<size_t>(n));
    struct BoundRow {
        int col;
        double rhs;
    };
    std::vector<BoundRow> bound_rows;

    for (int j = 0; j < n; ++j) {
        const auto& lo = lp.lower[static_cast<size_t>(j)];
        const auto& hi = lp.upper[static_cast<size_t>(j)];
        VarMap& vm = s.vmap[static_cast<size_t>(j)];
        if (lo && hi) {
            if (*lo > *hi + kFeasTol) return std::nullopt;  // empty box
            vm.kind = VarMap::Shifted;
            vm.shift = *lo;
            vm.col0 = s.ncols++;
            bound_rows.push_back({vm.col0, std::max(0.0, *hi - *lo)});
        } else if (lo) {
            vm.kind = VarMap::Shifted;
            vm.shift = *lo;
            vm.col0 = s.ncols++;
        } else if (hi) {
            vm.kind = VarMap::Negated;
            vm.shift = *hi;
            vm.col0 = s.ncols++;
        } else {
            vm.kind = VarMap::Split;
            vm.col0 = s.ncols++;
            vm.col1 = s.ncols++;
        }
    }

    const int m = static_cast<int>(lp.constraints.size()) + static_cast<int>(bound_rows.size());
    s.rows = Eigen::MatrixXd::Zero(m, s.ncols);
    s.rel.resize(static_cast<size_t>(m));
    s.rhs.resize(m);

    auto emit = [&](int r, const Eigen::VectorXd& row, Relation rel, double rhs) {
        double b = rhs;
        for (int j = 0; j < n; ++j) {
            const VarMap& vm = s.vmap[static_cast<size_t>(j)];
            const double a = row[j];
            if (a == 0.0) continue;
            switch (vm.kind) {
                case VarMap::Shifted:
                    s.rows(r, vm.col0) += a;
                    b -= a * vm.shift;
                    break;
                case VarMap::Negated:
                    s.rows(r, vm.col0) -= a;
                    b -= a * vm.shift;
                    break;
                case VarMap::Split:
                    s.rows(r, vm.col0) += a;
                    s.rows(r, vm.col1) -= a;
                    break;
            }
        }
        if (b < 0.0) {
            s.rows.row(r) = -s.rows.row(r);
            b = -b;
            rel = rel == Relation::LessEq ? Relation::GreaterEq
                  : rel == Relation::GreaterEq ? Relation::LessEq
                                               : Relation::Eq;
        }
        s.rel[static_cast<size_t>(r)] = rel;
        s.rhs[r] = b;
    };

    int r = 0;
    for (const auto& c : lp.constraints) emit(r++, c.row, c.rel, c.rhs);
    for (const auto& br : bound_rows) {
        // already in computational space: y_col <= rhs with rhs >= 0
        s.rows(r, br.col) = 1.0;
        s.rel[static_cast<size_t>(r)] = Relation::LessEq;
        s.rhs[r] = br.rhs;
        ++r;
    }

    s.cost = Eigen::VectorXd::Zero(s.ncols);
    for (int j = 0; j < n; ++j) {
        const VarMap& vm = s.vmap[static_cast<size_t>(j)];
        const double c = lp.objective[j];
        switch (vm.kind) {
            case VarMap::Shifted: s.cost[vm.col0] += c; break;
            case VarMap::Negated: s.cost[vm.col0] -= c; break;
            case VarMap::Split:
                s.cost[vm.col0] += c;
                s.cost[vm.col1] -= c;
                break;
        }
    }
    return s;
}

// Bland-guarded tableau simplex, maximizing. The untouched initial matrix is
// kept alongside the pivoted tableau; the final basic solution is re-solved
// against it so accumulated pivot drift never reaches the caller.
class Tableau {
public:
    Tableau(Eigen::MatrixXd body, Eigen::VectorXd rhs, std::vector<int> basis, int ntot)
        : a0_(body), b0_(rhs), t_(body.rows(), ntot + 1), basis_(std::move(basis)), ntot_(ntot) {
        t_.leftCols(ntot) = body;
        t_.col(ntot) = rhs;
        live_rows_.resize(static_cast<size_t>(body.rows()));
        for (size_t i = 0; i < live_rows_.size(); ++i) live_rows_[i] = static_cast<int>(i);
    }

    int rows() const { return static_cast<int>(t_.rows()); }
    const std::vector<int>& basis() const { return basis_; }
    double entry(int i, int j) const { return t_(i, j); }

    void set_enterable(std::vector<bool> enterable) { enterable_ = std::move(enterable); }

    void install_cost(const Eigen::VectorXd& cost) {
        cost_ = cost;
        refresh_objective();
    }

    // Returns true on optimality, false on unboundedness.
    bool run() {
        const int max_iter = 20000 + 200 * (rows() + ntot_);
        int refreshed_for = -1;
        int degenerate_streak = 0;
        for (int iter = 0; iter < max_iter; ++iter) {
            if (iter > 0 && iter % 64 == 0) refresh_objective();

            int enter = -1;
            for (int j = 0; j < ntot_; ++j) {
                if (!enterable_.empty() && !enterable_[static_cast<size_t>(j)]) continue;
                if (obj_[j] < -kEnterTol) {
                    enter = j;
                    break;  // smallest index
                }
            }
            if (enter < 0) return true;

            // Ratio test. Among rows within a whisker of the minimal ratio
            // prefer the largest pivot element for stability; after a long
            // degenerate stall fall back to Bland's smallest-basis-index
            // rule, which guarantees escape from any cycle.
            const bool bland = degenerate_streak > 2 * (rows() + ntot_);
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < rows(); ++i) {
                const double a = t_(i, enter);
                if (a <= kPivotTol) continue;
                const double ratio = t_(i, ntot_) / a;
                if (ratio < best_ratio - 1e-12) {
                    best_ratio = ratio;
                    leave = i;
                } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
                    best_ratio = std::min(best_ratio, ratio);
                    const bool better =
                        bland ? basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)]
                              : a > t_(leave, enter);
                    if (better) leave = i;
                }
            }
            if (leave < 0) {
                // Unboundedness may be an artifact of objective-row drift;
                // reprice once from scratch and only trust a repeat verdict.
                if (refreshed_for != enter) {
                    refresh_objective();
                    refreshed_for = enter;
                    continue;
                }
                return false;  // unbounded along enter
            }
            degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;
            pivot(leave, enter);
        }
        throw IllFormed("simplex iteration limit exceeded");
    }

    double objective_value() const { return obj_[ntot_]; }

    // Basic solution recomputed from the pristine initial data: solve
    // A0[live, basis] * x_B = b0[live] with a fresh factorization.
    Eigen::VectorXd primal(int ncols) const {
        const int m = rows();
        Eigen::MatrixXd basis_matrix(m, m);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            rhs[i] = b0_[live_rows_[static_cast<size_t>(i)]];
            for (int k = 0; k < m; ++k)
                basis_matrix(i, k) = a0_(live_rows_[static_cast<size_t>(i)],
                                         basis_[static_cast<size_t>(k)]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
        Eigen::VectorXd xb;
        if (lu.isInvertible()) {
            xb = lu.solve(rhs);
        } else {
            xb.resize(m);  // drifted to singularity: fall back to tableau values
            for (int i = 0; i < m; ++i) xb[i] = t_(i, ntot_);
        }
        Eigen::VectorXd y = Eigen::VectorXd::Zero(ncols);
        for (int i = 0; i < m; ++i) {
            const int b = basis_[static_cast<size_t>(i)];
            if (b < ncols) y[b] = std::max(0.0, xb[i]);
        }
        return y;
    }

    void drop_row(int i) {
        const int last = rows() - 1;
        if (i != last) {
            t_.row(i) = t_.row(last);
            basis_[static_cast<size_t>(i)] = basis_[static_cast<size_t>(last)];
            live_rows_[static_cast<size_t>(i)] = live_rows_[static_cast<size_t>(last)];
        }
        t_.conservativeResize(last, Eigen::NoChange);
        basis_.pop_back();
        live_rows_.pop_back();
    }

    void pivot(int leave, int enter) {
        t_.row(leave) /= t_(leave, enter);
        for (int i = 0; i < rows(); ++i) {
            if (i == leave) continue;
            const double f = t_(i, enter);
            if (f != 0.0) t_.row(i) -= f * t_.row(leave);
        }
        const double fo = obj_[enter];
        if (fo != 0.0) obj_ -= fo * t_.row(leave).transpose();
        basis_[static_cast<size_t>(leave)] = enter;
    }

private:
    void refresh_objective() {
        obj_ = Eigen::VectorXd::Zero(ntot_ + 1);
        obj_.head(ntot_) = -cost_;
        for (int i = 0; i < rows(); ++i) {
            const double cb = cost_[basis_[static_cast<size_t>(i)]];
            if (cb != 0.0) obj_ += cb * t_.row(i).transpose();
        }
    }

    Eigen::MatrixXd a0_;          // initial body, never pivoted
    Eigen::VectorXd b0_;          // initial rhs
    Eigen::MatrixXd t_;
    Eigen::VectorXd obj_;
    Eigen::VectorXd cost_;
    std::vector<int> basis_;
    std::vector<int> live_rows_;  // original row index per tableau row
    std::vector<bool> enterable_;
    int ntot_;
};

Eigen::VectorXd map_back(const Standardized& s, const Eigen::VectorXd& y, int n) {
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) {
        const VarMap& vm = s.vmap[static_cast<size_t>(j)];
        switch (vm.kind) {
            case VarMap::Shifted: x[j] = vm.shift + y[vm.col0]; break;
            case VarMap::Negated: x[j] = vm.shift - y[vm.col0]; break;
            case VarMap::Split: x[j] = y[vm.col0] - y[vm.col1]; break;
        }
    }
    return x;
}

void verify_feasible(const LinearProgram& lp, const Eigen::VectorXd& x) {
    for (const auto& c : lp.constraints) {
        const double lhs = c.row.dot(x);
        const bool ok = c.rel == Relation::LessEq      ? lhs <= c.rhs + kFeasTol
                        : c.rel == Relation::GreaterEq ? lhs >= c.rhs - kFeasTol
                                                       : std::abs(lhs - c.rhs) <= kFeasTol;
        if (!ok) throw IllFormed("simplex produced an infeasible optimum");
    }
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (lp.lower[static_cast<size_t>(j)] && x[j] < *lp.lower[static_cast<size_t>(j)] - kFeasTol)
            throw IllFormed("simplex violated a lower bound");
        if (lp.upper[static_cast<size_t>(j)] && x[j] > *lp.upper[static_cast<size_t>(j)] + kFeasTol)
            throw IllFormed("simplex violated an upper bound");
    }
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
    validate(lp);
    auto std_opt = standardize(lp);
    if (!std_opt) return {LpStatus::Infeasible, {}, 0.0};
    Standardized& s = *std_opt;

    const int m = static_cast<int>(s.rhs.size());
    int n_slack = 0, n_art = 0;
    for (const auto rel : s.rel) {
        if (rel == Relation::LessEq) ++n_slack;
        else if (rel == Relation::GreaterEq) { ++n_slack; ++n_art; }
        else ++n_art;
    }
    const int ntot = s.ncols + n_slack + n_art;

    Eigen::MatrixXd body = Eigen::MatrixXd::Zero(m, ntot);
    body.leftCols(s.ncols) = s.rows;
    std::vector<int> basis(static_cast<size_t>(m));
    std::vector<bool> is_art(static_cast<size_t>(ntot), false);
    int next_slack = s.ncols;
    int next_art = s.ncols + n_slack;
    for (int i = 0; i < m; ++i) {
        switch (s.rel[static_cast<size_t>(i)]) {
            case Relation::LessEq:
                body(i, next_slack) = 1.0;
                basis[static_cast<size_t>(i)] = next_slack++;
                break;
            case Relation::GreaterEq:
                body(i, next_slack) = -1.0;
                ++next_slack;
                body(i, next_art) = 1.0;
                is_art[static_cast<size_t>(next_art)] = true;
                basis[static_cast<size_t>(i)] = next_art++;
                break;
            case Relation::Eq:
                body(i, next_art) = 1.0;
                is_art[static_cast<size_t>(next_art)] = true;
                basis[static_cast<size_t>(i)] = next_art++;
                break;
        }
    }

    Tableau tab(std::move(body), s.rhs, std::move(basis), ntot);

    if (n_art > 0) {
        Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ntot);
        for (int j = 0; j < ntot; ++j)
            if (is_art[static_cast<size_t>(j)]) phase1[j] = -1.0;
        tab.install_cost(phase1);
        if (!tab.run()) throw IllFormed("phase-1 simplex reported unbounded");
        if (tab.objective_value() < -kFeasTol) return {LpStatus::Infeasible, {}, 0.0};

        // Drive leftover artificials out of the basis. Pivot on the largest
        // eligible entry (a near-zero pivot would wreck conditioning); when
        // the whole structural part of the row is negligible it is redundant
        // and gets dropped instead.
        for (int i = tab.rows() - 1; i >= 0; --i) {
            const int b = tab.basis()[static_cast<size_t>(i)];
            if (!is_art[static_cast<size_t>(b)]) continue;
            int pivot_col = -1;
            double best = 1e-7;
            for (int j = 0; j < ntot; ++j) {
                if (is_art[static_cast<size_t>(j)]) continue;
                if (std::abs(tab.entry(i, j)) > best) {
                    best = std::abs(tab.entry(i, j));
                    pivot_col = j;
                }
            }
            if (pivot_col >= 0) tab.pivot(i, pivot_col);
            else tab.drop_row(i);
        }
    }

    std::vector<bool> enterable(static_cast<size_t>(ntot), true);
    for (int j = 0; j < ntot; ++j)
        if (is_art[static_cast<size_t>(j)]) enterable[static_cast<size_t>(j)] = false;
    tab.set_enterable(std::move(enterable));

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(ntot);
    phase2.head(s.ncols) = s.cost;
    tab.install_cost(phase2);
    if (!tab.run()) return {LpStatus::Unbounded, {}, 0.0};

    const Eigen::VectorXd y = tab.primal(s.ncols);
    Eigen::VectorXd x = map_back(s, y, lp.num_vars());
    verify_feasible(lp, x);
    const double value = lp.objective.dot(x);
    return {LpStatus::Optimal, std::move(x), value};
}

}  // namespace phiconv::lp
