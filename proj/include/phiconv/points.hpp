#pragma once

#include <string>
#include <vector>

#include "phiconv/hull.hpp"
#include "phiconv/phi_space.hpp"

namespace phiconv {

/// Witness that a direction attains a strict maximum on the examined set at
/// `point`, with the LP margin under the coefficient box normalization.
/// A singleton set has no competitors; its witness is flagged vacuous and
/// carries an infinite margin and a zero direction.
struct ExposureWitness {
    int point = -1;
    PhiVector direction;
    double margin = 0.0;
    bool vacuous = false;
};

/// Is `a` Phi-between x and y: every phi dominated at x and y by its value
/// at a takes equal values at all three points. Decided by two LPs.
bool is_phi_between(const PhiSpace& space, int a, int x, int y, double strict_tol = kStrictTol);

/// Phi-extremal points of B: points that are Phi-between no pair of points
/// of B other than (a, a). O(|B|^2) betweenness scan per candidate.
PointSubset phi_extremal_points(const PhiSpace& space, const PointSubset& B,
                                double strict_tol = kStrictTol);

/// Phi-exposed points of C with their exposing witnesses.
std::vector<ExposureWitness> phi_exposed_points(const PhiSpace& space, const PointSubset& C,
                                                double strict_tol = kStrictTol);

/// The point ids of phi_exposed_points.
PointSubset phi_exposed_set(const PhiSpace& space, const PointSubset& C,
                            double strict_tol = kStrictTol);

/// Exposed points for the affine dictionary (constants + coordinates).
std::vector<ExposureWitness> affine_exposed_points(const PointSubset& C,
                                                   double strict_tol = kStrictTol);

/// Classical extreme points of C: k is extreme iff k lies outside the
/// convex hull of C minus k (affine-dictionary membership LP).
PointSubset classical_extreme_points(const PointSubset& C, double strict_tol = kStrictTol);

/// Exp (linear dictionary), AExp (affine dictionary) and Ext (classical
/// test) on one coordinate set, with the chain inclusions checked.
struct PointClassReport {
    std::vector<ExposureWitness> exposed_linear;
    std::vector<ExposureWitness> exposed_affine;
    std::vector<int> exp_ids, aexp_ids, ext_ids;
    bool exp_subset_aexp = false;
    bool aexp_subset_ext = false;
    bool chain_ok = false;
};

PointClassReport compare_point_classes(const PointSubset& C, double strict_tol = kStrictTol);

enum class ReconstructionMode { Extremal, Exposed };

/// Checks K = conv_Phi(P) for P the Phi-extremal or Phi-exposed points of a
/// Phi-convex K with a separating dictionary. HypothesisViolated when the
/// preconditions fail (that signals the theorem does not apply, not a bug).
struct ReconstructionReport {
    ReconstructionMode mode = ReconstructionMode::Exposed;
    std::vector<int> points;       // P
    std::vector<int> hull;         // conv_Phi(P) in the ambient
    bool nonempty = false;
    bool hull_equals_k = false;
    std::vector<int> missing;      // K \ hull
    std::vector<int> extra;        // hull \ K
    bool pass() const { return nonempty && hull_equals_k; }
};

ReconstructionReport reconstruction_check(const PhiSpace& space, const PointSubset& K,
                                          const PointSubset& ambient, ReconstructionMode mode,
                                          double strict_tol = kStrictTol);

/// Computes K = conv_Phi(A) and reports whether PhiExt(K) is contained in A
/// (on finite sets the closure of A is A itself).
struct MilmanReport {
    std::vector<int> hull;          // K
    std::vector<int> extremal;      // PhiExt(K)
    std::vector<int> violations;    // extremal points outside A
    bool pass() const { return violations.empty(); }
};

MilmanReport milman_converse_check(const PhiSpace& space, const PointSubset& A,
                                   const PointSubset& ambient, double strict_tol = kStrictTol);

/// Continuous-geometry diagnostic for the stadium body conv(two unit disks
/// at (-1,0) and (1,0)): the corner (1,1) is extreme (it is the midpoint of
/// no two distinct boundary points) yet no support direction exposes it --
/// every sampled direction whose maximizer set contains the corner has a
/// maximizer set of large diameter, so the maximum is never strict there.
struct StadiumReport {
    int num_angles = 0;
    int num_boundary_samples = 0;
    bool corner_is_midpoint = false;      // midpoint extreme test (expect false)
    int angles_containing_corner = 0;     // directions whose maximizer set has (1,1)
    double min_maximizer_diameter = 0.0;  // over those directions
    bool corner_exposed = false;          // any direction with maximizer set ~ {(1,1)}
    bool pass() const {
        return !corner_is_midpoint && !corner_exposed && angles_containing_corner > 0 &&
               min_maximizer_diameter >= 0.5;
    }
};

StadiumReport stadium_exposure_diagnostic(int num_angles = 10000, int boundary_samples = 4000,
                                          double value_tol = 1e-9);

}  // namespace phiconv
