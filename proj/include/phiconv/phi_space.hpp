#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "phiconv/ground.hpp"

namespace phiconv {

enum class NormKind { SupOnK, CoeffL1, CoeffL2 };

std::string to_string(NormKind k);

/// Coefficient vector identifying one function in the span of the dictionary.
struct PhiVector {
    Eigen::VectorXd coeffs;
};

/// Coordinates of a dual functional with respect to the dictionary basis;
/// the Dirac mass at x has coordinates (phi_1(x), ..., phi_m(x)).
struct DualVector {
    Eigen::VectorXd coords;
};

/// Outcome of the point-separation test: either the dictionary separates
/// every pair, or a violating pair is reported.
struct SeparationResult {
    bool separates = false;
    int witness_x = -1;
    int witness_y = -1;
};

/// The function class Phi as a finite-dimensional span of dictionary rows
/// evaluated on a ground set, together with its norm and the bound constant
/// alpha relating the configured norm to the sup norm on the ground set.
///
/// Immutable after construction; concurrent reads are safe.
class PhiSpace {
public:
    static constexpr double kRankTol = 1e-9;

    PhiSpace(GroundPtr ground, Eigen::MatrixXd eval_matrix, NormKind norm_kind = NormKind::SupOnK);

    // Dictionary factories. `linear` and `affine` need coordinates; `distance`
    // and `rbf` evaluate against anchor points of the ground set.
    static PhiSpace linear(GroundPtr ground, NormKind norm = NormKind::SupOnK);
    static PhiSpace affine(GroundPtr ground, NormKind norm = NormKind::SupOnK);
    static PhiSpace distance(GroundPtr ground, const std::vector<int>& anchors,
                             NormKind norm = NormKind::SupOnK);
    static PhiSpace rbf(GroundPtr ground, const std::vector<int>& anchors, double gamma,
                        NormKind norm = NormKind::SupOnK);
    static PhiSpace table(GroundPtr ground, Eigen::MatrixXd rows,
                          NormKind norm = NormKind::SupOnK);

    const GroundPtr& ground() const { return ground_; }
    const Eigen::MatrixXd& eval_matrix() const { return eval_; }
    int dimension() const { return static_cast<int>(eval_.rows()); }
    int num_points() const { return static_cast<int>(eval_.cols()); }
    NormKind norm_kind() const { return norm_kind_; }
    double alpha() const { return alpha_; }
    bool has_constants() const { return has_constants_; }
    int row_rank() const { return row_rank_; }

    /// phi_c(x) = sum_i c_i phi_i(x). The same dot-product expression backs
    /// the Dirac pairing, so <dirac(x), c> == evaluate(c, x) exactly.
    double evaluate(const PhiVector& c, int x) const;

    /// Values of phi_c at every ground point (length n).
    Eigen::VectorXd evaluate_all(const PhiVector& c) const;

    /// max_x |phi_c(x)| over the ground set.
    double sup_norm(const PhiVector& c) const;

    /// The configured dictionary norm ||c||_Phi.
    double phi_norm(const PhiVector& c) const;

    DualVector dirac(int x) const;

    /// Pairing <q, c> in dual coordinates.
    static double pair(const DualVector& q, const PhiVector& c);

    SeparationResult separates_points(double tol = 1e-9) const;

    void check_dims(const PhiVector& c) const;

private:
    GroundPtr ground_;
    Eigen::MatrixXd eval_;  // m x n
    NormKind norm_kind_;
    double alpha_ = 1.0;
    bool has_constants_ = false;
    int row_rank_ = 0;
};

}  // namespace phiconv
