#include "phiconv/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "phiconv/rng.hpp"

namespace phiconv {

namespace {

void check_same_ground(const PhiSpace& space, const ExtendedFunction& f) {
    if (space.ground() != f.parent())
        throw DimensionMismatch("function lives on a different ground set");
}

}  // namespace

double conjugate(const PhiSpace& space, const ExtendedFunction& f, const PhiVector& c) {
    check_same_ground(space, f);
    space.check_dims(c);
    const Eigen::VectorXd vals = space.evaluate_all(c);
    double best = -std::numeric_limits<double>::infinity();
    for (int x : f.finite_points()) best = std::max(best, vals[x] - f.value(x));
    return best;
}

std::vector<int> argmax_set(const PhiSpace& space, const ExtendedFunction& f, const PhiVector& c,
                            double tol) {
    const double star = conjugate(space, f, c);
    const Eigen::VectorXd vals = space.evaluate_all(c);
    std::vector<int> out;
    for (int x : f.finite_points())
        if (vals[x] - f.value(x) >= star - tol) out.push_back(x);
    return out;
}

WellPosednessReport well_posedness(const PhiSpace& space, const ExtendedFunction& f,
                                   const PhiVector& c, double gap_tol) {
    check_same_ground(space, f);
    space.check_dims(c);
    WellPosednessReport report;
    report.perturbation = c;

    const Eigen::VectorXd vals = space.evaluate_all(c);
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    for (int x : f.finite_points()) {
        const double v = f.value(x) - vals[x];
        if (v < best) {
            second = best;
            best = v;
        } else if (v < second) {
            second = v;
        }
    }
    report.gap = second - best;  // +inf when only one finite point
    for (int x : f.finite_points())
        if (f.value(x) - vals[x] <= best + gap_tol) report.minimizers.push_back(x);
    report.well_posed = report.minimizers.size() == 1 && report.gap > gap_tol;
    return report;
}

Eigen::VectorXd sample_phi_ball(const PhiSpace& space, double radius, Rng& rng) {
    const int m = space.dimension();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Eigen::VectorXd dir;
        if (space.norm_kind() == NormKind::CoeffL2) dir = rng.normal_vector(m);
        else dir = rng.box_vector(m);
        const double norm = space.phi_norm(PhiVector{dir});
        if (norm <= 1e-12) continue;
        dir /= norm;
        const double scale = radius * std::pow(rng.u01(), 1.0 / m);
        return dir * scale;
    }
    throw Error("could not sample a nonzero direction in the Phi ball");
}

ExposingResult exposing_perturbation(const PhiSpace& space, const ExtendedFunction& f,
                                     const PhiVector& c0, double epsilon, int budget,
                                     std::uint64_t seed, double gap_tol) {
    check_same_ground(space, f);
    space.check_dims(c0);
    if (!(epsilon > 0.0)) throw DimensionMismatch("epsilon must be positive");
    const int m = space.dimension();

    ExposingResult result;
    auto report0 = well_posedness(space, f, c0, gap_tol);
    if (report0.well_posed) {
        result.found = true;
        result.psi = PhiVector{Eigen::VectorXd::Zero(m)};
        result.report = std::move(report0);
        return result;
    }

    auto try_candidate = [&](const Eigen::VectorXd& psi) -> bool {
        ++result.trials;
        PhiVector shifted{c0.coeffs + psi};
        auto report = well_posedness(space, f, shifted, gap_tol);
        if (report.well_posed) {
            result.found = true;
            result.psi = PhiVector{psi};
            result.report = std::move(report);
            return true;
        }
        return false;
    };

    // Deterministic stage: aim the perturbation at a current minimizer x0 by
    // projecting -d(., x0) onto the span; that function has its strict
    // maximum at x0, so adding a small multiple favors x0 in f - (phi+psi).
    const int x0 = report0.minimizers.front();
    Eigen::VectorXd target(space.ground()->size());
    for (int x = 0; x < space.ground()->size(); ++x) target[x] = -space.ground()->distance(x, x0);
    Eigen::VectorXd proj =
        space.eval_matrix().transpose().completeOrthogonalDecomposition().solve(target);
    const double proj_norm = space.phi_norm(PhiVector{proj});
    if (proj_norm > 1e-12) {
        const Eigen::VectorXd unit = proj / proj_norm;
        double eps = epsilon;
        for (int halving = 0; halving < 20 && result.trials < budget; ++halving, eps *= 0.5) {
            if (try_candidate(eps * unit)) return result;
            if (try_candidate(-eps * unit)) return result;
        }
    }

    // Randomized fallback on the ||.||_Phi sphere with a shrinking radius.
    for (std::uint64_t trial = 0; result.trials < budget; ++trial) {
        Rng rng = Rng::stream(seed, trial);
        const double eps = epsilon * std::pow(0.5, static_cast<double>(trial % 8));
        Eigen::VectorXd dir;
        if (space.norm_kind() == NormKind::CoeffL2) dir = rng.normal_vector(m);
        else dir = rng.box_vector(m);
        const double norm = space.phi_norm(PhiVector{dir});
        if (norm <= 1e-12) {
            ++result.trials;
            continue;
        }
        if (try_candidate(dir * (eps / norm))) return result;
    }
    return result;  // exhausted
}

IllPosedStatistic ill_posed_fraction(const PhiSpace& space, const ExtendedFunction& f,
                                     double radius, int n_samples, std::uint64_t seed,
                                     double gap_tol) {
    if (n_samples < 1) throw DimensionMismatch("n_samples must be at least 1");
    check_same_ground(space, f);
    IllPosedStatistic stat;
    stat.n_samples = n_samples;
    for (int k = 0; k < n_samples; ++k) {
        Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(k));
        Eigen::VectorXd c = sample_phi_ball(space, radius, rng);
        auto report = well_posedness(space, f, PhiVector{c}, gap_tol);
        if (!report.well_posed) {
            ++stat.n_ill_posed;
            stat.ill_posed_samples.push_back(std::move(c));
        }
    }
    stat.fraction = static_cast<double>(stat.n_ill_posed) / n_samples;
    return stat;
}

GateauxReport gateaux_probe(const PhiSpace& space, const ExtendedFunction& f, const PhiVector& c,
                            const PhiVector& h, const std::vector<double>& step_schedule,
                            double rel_tol) {
    check_same_ground(space, f);
    space.check_dims(c);
    space.check_dims(h);
    GateauxReport report;
    report.steps = step_schedule.empty()
                       ? std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6}
                       : step_schedule;

    auto wp = well_posedness(space, f, c);
    report.well_posed = wp.well_posed;
    const double base = conjugate(space, f, c);
    for (double t : report.steps) {
        PhiVector cp{c.coeffs + t * h.coeffs};
        PhiVector cn{c.coeffs - t * h.coeffs};
        report.quotients_pos.push_back((conjugate(space, f, cp) - base) / t);
        report.quotients_neg.push_back((conjugate(space, f, cn) - base) / t);
    }
    const double qp = report.quotients_pos.back();
    const double qn = report.quotients_neg.back();
    report.onesided_disagreement = std::abs(qp + qn);

    if (report.well_posed) {
        report.minimizer = wp.minimizers.front();
        report.expected = space.evaluate(h, report.minimizer);
        report.final_error = std::abs(qp - report.expected);
        report.status = report.final_error <= rel_tol * (1.0 + std::abs(report.expected))
                            ? GateauxReport::Status::SmoothConfirmed
                            : GateauxReport::Status::SmoothFailed;
    } else {
        report.status = report.onesided_disagreement > 10.0 * rel_tol
                            ? GateauxReport::Status::NonsmoothConfirmed
                            : GateauxReport::Status::NonsmoothNotDetected;
    }
    return report;
}

MaxRuleReport max_rule_check(const PhiSpace& space, const ExtendedFunction& f1,
                             const ExtendedFunction& f2, const PhiVector& c, double probe_step,
                             double tol) {
    check_same_ground(space, f1);
    check_same_ground(space, f2);
    space.check_dims(c);
    const int m = space.dimension();

    MaxRuleReport report;
    report.h_value = conjugate(space, f1, c);
    report.g_value = conjugate(space, f2, c);
    const double l0 = std::max(report.h_value, report.g_value);
    if (report.h_value > report.g_value + tol) report.active = "f1";
    else if (report.g_value > report.h_value + tol) report.active = "f2";
    else report.active = "tie";

    auto l_at = [&](const Eigen::VectorXd& coeffs) {
        PhiVector v{coeffs};
        return std::max(conjugate(space, f1, v), conjugate(space, f2, v));
    };

    report.l_derivative = Eigen::VectorXd::Zero(m);
    report.l_differentiable = true;
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
        e[i] = 1.0;
        const double qp = (l_at(c.coeffs + probe_step * e) - l0) / probe_step;
        const double qn = (l_at(c.coeffs - probe_step * e) - l0) / probe_step;
        if (std::abs(qp + qn) > tol) report.l_differentiable = false;
        report.l_derivative[i] = qp;
    }
    if (!report.l_differentiable) {
        report.pass = true;  // the max rule only constrains differentiable points
        return report;
    }

    auto matches = [&](const ExtendedFunction& f) {
        auto wp = well_posedness(space, f, c);
        if (!wp.well_posed) return false;
        const int xhat = wp.minimizers.front();
        for (int i = 0; i < m; ++i)
            if (std::abs(report.l_derivative[i] - space.eval_matrix()(i, xhat)) > tol) return false;
        return true;
    };
    report.matches_f1 = report.active != "f2" && matches(f1);
    report.matches_f2 = report.active != "f1" && matches(f2);
    report.pass = report.matches_f1 || report.matches_f2;
    return report;
}

double support_function(const std::vector<Eigen::VectorXd>& C, const Eigen::VectorXd& x) {
    if (C.empty()) throw EmptySet("support function of the empty set");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& q : C) {
        if (q.size() != x.size()) throw DimensionMismatch("support-function dimension mismatch");
        best = std::max(best, q.dot(x));
    }
    return best;
}

double inf_convolution(const ExtendedFunction& f, const std::vector<Eigen::VectorXd>& C, int x) {
    const GroundPtr& grid = f.parent();
    if (!grid->has_coords()) throw MissingCoords("inf-convolution needs a coordinate grid");
    if (C.empty()) throw EmptySet("inf-convolution against the empty dual set");
    grid->check_point(x);
    const Eigen::MatrixXd& coords = grid->coords();
    const int n = grid->size();
    const int d = grid->dim();

    // Quantized coordinate lookup; grid points closer than the quantum
    // collapse, which is harmless at desk scale.
    auto key_of = [d](const Eigen::VectorXd& v) {
        std::vector<long long> key(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) key[static_cast<size_t>(i)] = std::llround(v[i] * 1e9);
        return key;
    };
    std::map<std::vector<long long>, int> index;
    for (int i = 0; i < n; ++i) index.emplace(key_of(coords.row(i)), i);

    double best = std::numeric_limits<double>::infinity();
    const Eigen::VectorXd xc = coords.row(x);
    for (int y = 0; y < n; ++y) {
        const Eigen::VectorXd yc = coords.row(y);
        auto it = index.find(key_of(xc - yc));
        if (it == index.end()) continue;  // x - y off the grid: +inf
        if (!f.is_finite(it->second)) continue;
        const double sigma = support_function(C, yc);
        best = std::min(best, f.value(it->second) + sigma);
    }
    return best;
}

}  // namespace phiconv
