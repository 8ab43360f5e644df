#pragma once

#include <optional>

#include "phiconv/lp.hpp"
#include "phiconv/phi_space.hpp"

namespace phiconv {

/// Strictness threshold shared by every exposure / separation decision:
/// an LP optimum above this (under the coefficient box normalization)
/// counts as a strict inequality.
inline constexpr double kStrictTol = 1e-7;

/// Witness that a point lies outside a Phi-convex hull: a direction h in
/// the span and a threshold r with h <= r - margin on the hull generators
/// and h >= r + margin at the separated point.
struct SeparationCertificate {
    PhiVector direction;
    double threshold = 0.0;
    double margin = 0.0;
};

struct MembershipOutcome {
    bool inside = true;
    double lp_gap = 0.0;  // optimum of the separation LP
    std::optional<SeparationCertificate> certificate;
};

/// Decides x in conv_Phi(A) = {x : phi(x) <= sup_A phi for all phi in the
/// span} by one LP: maximize t subject to phi_c(x) - phi_c(a) >= t for all
/// a in A, with ||c||_inf <= 1 on the coefficients. Outside iff t* exceeds
/// the strictness threshold.
MembershipOutcome hull_membership(const PhiSpace& space, const PointSubset& A, int x,
                                  double strict_tol = kStrictTol);

/// {x in ambient : x in conv_Phi(A)}. Extensive, monotone and idempotent.
PointSubset phi_convex_hull(const PhiSpace& space, const PointSubset& A,
                            const PointSubset& ambient, double strict_tol = kStrictTol);

/// True iff conv_Phi(X) within the ambient equals X. By convention the
/// ambient itself is always Phi-convex.
bool is_phi_convex(const PhiSpace& space, const PointSubset& X, const PointSubset& ambient,
                   double strict_tol = kStrictTol);

/// Certificate for a point outside the hull; NotSeparable when it is inside.
SeparationCertificate separate_from_hull(const PhiSpace& space, const PointSubset& A, int x,
                                         double strict_tol = kStrictTol);

}  // namespace phiconv
