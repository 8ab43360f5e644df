#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phiconv/ground.hpp"
#include "phiconv/phi_space.hpp"

namespace phiconv {

/// Nonconvex conjugate f~(c) = max over finite points of phi_c(x) - f(x).
/// Convex and 1-Lipschitz in phi for the sup norm.
double conjugate(const PhiSpace& space, const ExtendedFunction& f, const PhiVector& c);

/// Points attaining the conjugate within tol (finite points only).
std::vector<int> argmax_set(const PhiSpace& space, const ExtendedFunction& f, const PhiVector& c,
                            double tol = 1e-9);

/// Minimizer structure of f - phi_c. On a finite ground set a strict and a
/// strong minimum coincide; well-posed means the minimizer is unique with a
/// value gap above tolerance.
struct WellPosednessReport {
    PhiVector perturbation;       // the phi under test (coefficients of c)
    std::vector<int> minimizers;  // argmin of f - phi_c over finite points
    double gap = 0.0;             // second-smallest minus smallest value
    bool well_posed = false;
};

inline constexpr double kGapTol = 1e-9;

WellPosednessReport well_posedness(const PhiSpace& space, const ExtendedFunction& f,
                                   const PhiVector& c, double gap_tol = kGapTol);

/// Result of the exposing-perturbation search: either a psi in the span
/// with ||psi||_Phi <= epsilon making f - (phi + psi) well posed, or
/// `exhausted` after the trial budget (a result, not an error).
struct ExposingResult {
    bool found = false;
    PhiVector psi;
    WellPosednessReport report;
    int trials = 0;
};

/// Two-stage search: a deterministic tie-break toward a current minimizer
/// (the span projection of -d(., x0), both signs, geometrically shrinking
/// radius), then seeded random directions on the ||.||_Phi unit sphere.
ExposingResult exposing_perturbation(const PhiSpace& space, const ExtendedFunction& f,
                                     const PhiVector& c0, double epsilon, int budget = 1000,
                                     std::uint64_t seed = 0, double gap_tol = kGapTol);

/// Fraction of directions sampled uniformly from the ||.||_Phi ball of the
/// given radius for which f - phi is ill posed.
struct IllPosedStatistic {
    int n_samples = 0;
    int n_ill_posed = 0;
    double fraction = 0.0;
    std::vector<Eigen::VectorXd> ill_posed_samples;
};

IllPosedStatistic ill_posed_fraction(const PhiSpace& space, const ExtendedFunction& f,
                                     double radius, int n_samples, std::uint64_t seed,
                                     double gap_tol = kGapTol);

/// Uniform sample from the ||.||_Phi ball (exposed for tests and the CLI).
Eigen::VectorXd sample_phi_ball(const PhiSpace& space, double radius, class Rng& rng);

/// One-sided finite-difference probe of the conjugate at c along h.
/// When f - phi_c is well posed with minimizer xhat, the quotients must
/// converge to the Dirac pairing <delta_xhat, h> = h(xhat); when ill posed
/// the +h and -h quotients fail to be negatives of each other.
struct GateauxReport {
    enum class Status {
        SmoothConfirmed,        // well posed and quotients converged to h(xhat)
        SmoothFailed,           // well posed but convergence tolerance missed
        NonsmoothConfirmed,     // ill posed and one-sided quotients disagree
        NonsmoothNotDetected,   // ill posed but disagreement below tolerance
    };
    Status status = Status::SmoothFailed;
    bool well_posed = false;
    int minimizer = -1;
    double expected = 0.0;                // h(xhat) when well posed
    std::vector<double> steps;
    std::vector<double> quotients_pos;    // along +h
    std::vector<double> quotients_neg;    // along -h
    double final_error = 0.0;             // |q_pos(last) - expected|
    double onesided_disagreement = 0.0;   // |q_pos(last) + q_neg(last)|
};

GateauxReport gateaux_probe(const PhiSpace& space, const ExtendedFunction& f, const PhiVector& c,
                            const PhiVector& h, const std::vector<double>& step_schedule = {},
                            double rel_tol = 1e-6);

/// Max-rule check for L = max(f1~, f2~): when L is differentiable at c along
/// the basis directions, its derivative must agree with that of an active
/// conjugate.
struct MaxRuleReport {
    double h_value = 0.0;  // f1~(c)
    double g_value = 0.0;  // f2~(c)
    std::string active;    // "f1", "f2" or "tie"
    bool l_differentiable = false;
    Eigen::VectorXd l_derivative;  // per basis direction, when differentiable
    bool matches_f1 = false;
    bool matches_f2 = false;
    bool pass = false;  // not differentiable, or the derivative matches an active side
};

MaxRuleReport max_rule_check(const PhiSpace& space, const ExtendedFunction& f1,
                             const ExtendedFunction& f2, const PhiVector& c,
                             double probe_step = 1e-7, double tol = 1e-5);

/// Support function sigma_C(x) = max over C of <q, x>.
double support_function(const std::vector<Eigen::VectorXd>& C, const Eigen::VectorXd& x);

/// Inf-convolution (f (inf-conv) sigma_C)(x) = min over grid points y of
/// f(x - y) + sigma_C(y); differences falling off the grid contribute +inf.
/// The grid is the coordinate ground set of f; x is a grid point id.
double inf_convolution(const ExtendedFunction& f, const std::vector<Eigen::VectorXd>& C, int x);

}  // namespace phiconv
