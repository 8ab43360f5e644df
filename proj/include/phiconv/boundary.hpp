#pragma once

#include <string>
#include <vector>

#include "phiconv/phi_space.hpp"

namespace phiconv {

/// One generator +-dirac(x) of the dual ball.
struct DualGenerator {
    int sign = +1;  // +1 or -1
    int point = -1;
    Eigen::VectorXd coords;
};

/// V-representation of the dual unit ball of (Phi, ||.||_inf on K): the
/// polytope conv(+-dirac(x) : x in K) in dictionary-dual coordinates.
/// Value type; safe to copy and to read concurrently.
class DualPolytope {
public:
    DualPolytope(const PhiSpace& space, PointSubset k);

    const std::vector<DualGenerator>& generators() const { return generators_; }
    const PointSubset& base_points() const { return k_; }
    int dimension() const { return m_; }
    bool has_constants() const { return has_constants_; }
    bool separates() const { return separates_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    /// max over generators of <g, c>: the support function of the polytope,
    /// equal to the sup norm of phi_c on K.
    double support(const PhiVector& c) const;

private:
    PointSubset k_;
    int m_ = 0;
    std::vector<DualGenerator> generators_;  // +dirac(x) then -dirac(x), ascending x
    bool has_constants_ = false;
    bool separates_ = false;
    std::vector<std::string> warnings_;
};

/// Builds conv(+-dirac(x) : x in K). Emits warnings (not errors) when the
/// dictionary fails to separate K or lacks constants.
DualPolytope dual_ball(const PhiSpace& space, const PointSubset& K);

/// {x in K : dirac(x) is a vertex of the polytope}. The vertex test asks,
/// per generator, whether it is a convex combination of the generators that
/// differ from it as vectors (an LP feasibility question).
PointSubset choquet_boundary(const DualPolytope& poly);

/// True iff every generator of the polytope lies in conv(+-dirac(L)),
/// equivalently the sup norm of every phi in the span is attained on L.
bool is_norming_subset(const DualPolytope& poly, const PointSubset& L);

/// The unique minimal closed norming subset. On a finite K this is the
/// Choquet boundary; requires constants and separation (HypothesisViolated
/// otherwise, matching the existence theorem's hypotheses).
PointSubset shilov_boundary(const DualPolytope& poly);

/// Weak*-exposed generators with exposing directions, normalized by the
/// sup norm on K (encoded as <g'', c> <= 1 over all generators g'').
struct ExposedGenerator {
    int sign = +1;
    int point = -1;
    PhiVector direction;
    double margin = 0.0;
    bool degenerate = false;  // another generator coincides with it as a vector
};

std::vector<ExposedGenerator> weakstar_exposed_generators(const DualPolytope& poly,
                                                          double strict_tol = 1e-7);

}  // namespace phiconv
