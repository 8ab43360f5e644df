#include "phiconv/phi_space.hpp"

#include <cmath>

#include "phiconv/rng.hpp"

namespace phiconv {

std::string to_string(NormKind k) {
    switch (k) {
        case NormKind::SupOnK: return "sup";
        case NormKind::CoeffL1: return "l1";
        case NormKind::CoeffL2: return "l2";
    }
    return "?";
}

PhiSpace::PhiSpace(GroundPtr ground, Eigen::MatrixXd eval_matrix, NormKind norm_kind)
    : ground_(std::move(ground)), eval_(std::move(eval_matrix)), norm_kind_(norm_kind) {
    if (!ground_) throw Error("null ground set");
    if (eval_.rows() == 0) throw DimensionMismatch("dictionary needs at least one row");
    if (eval_.cols() != ground_->size())
        throw DimensionMismatch("eval matrix columns must match ground set size");
    if (!eval_.allFinite()) throw DimensionMismatch("eval matrix has non-finite entries");

    const int m = dimension();
    const int n = num_points();

    // alpha relates the configured norm to the sup norm on the ground set:
    // alpha * ||c||_Phi >= max_x |phi_c(x)| for every c.
    //   sup norm:  alpha = 1 (the norms coincide).
    //   l1:        alpha = max_{i,x} |phi_i(x)|        (triangle inequality, tight).
    //   l2:        alpha = max_x ||dirac(x)||_2        (Cauchy-Schwarz, tight).
    switch (norm_kind_) {
        case NormKind::SupOnK: alpha_ = 1.0; break;
        case NormKind::CoeffL1: alpha_ = eval_.cwiseAbs().maxCoeff(); break;
        case NormKind::CoeffL2: alpha_ = eval_.colwise().norm().maxCoeff(); break;
    }

    // Rank and constants test via column-pivoted QR on the rows, with the
    // all-ones row appended to decide whether constants lie in the span.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(eval_.transpose());
    qr.setThreshold(kRankTol);
    row_rank_ = static_cast<int>(qr.rank());

    Eigen::MatrixXd augmented(m + 1, n);
    augmented.topRows(m) = eval_;
    augmented.row(m) = Eigen::RowVectorXd::Ones(n);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr2(augmented.transpose());
    qr2.setThreshold(kRankTol);
    has_constants_ = static_cast<int>(qr2.rank()) == row_rank_;

    // Spot-check the alpha bound on the basis and a few fixed random
    // combinations; a failure here is a construction bug, not user error.
    Rng rng(0x5eedULL);
    for (int trial = 0; trial < m + 8; ++trial) {
        PhiVector c;
        if (trial < m) {
            c.coeffs = Eigen::VectorXd::Zero(m);
            c.coeffs[trial] = 1.0;
        } else {
            c.coeffs = rng.box_vector(m);
        }
        if (sup_norm(c) > alpha_ * phi_norm(c) + 1e-9)
            throw Error("alpha bound violated at construction");
    }
}

PhiSpace PhiSpace::linear(GroundPtr ground, NormKind norm) {
    const Eigen::MatrixXd& x = ground->coords();
    return PhiSpace(ground, x.transpose(), norm);
}

PhiSpace PhiSpace::affine(GroundPtr ground, NormKind norm) {
    const Eigen::MatrixXd& x = ground->coords();
    Eigen::MatrixXd rows(x.cols() + 1, x.rows());
    rows.row(0) = Eigen::RowVectorXd::Ones(x.rows());
    rows.bottomRows(x.cols()) = x.transpose();
    return PhiSpace(ground, std::move(rows), norm);
}

PhiSpace PhiSpace::distance(GroundPtr ground, const std::vector<int>& anchors, NormKind norm) {
    if (anchors.empty()) throw EmptySet("distance dictionary needs at least one anchor");
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(anchors.size()), ground->size());
    for (size_t i = 0; i < anchors.size(); ++i) {
        ground->check_point(anchors[i]);
        for (int x = 0; x < ground->size(); ++x)
            rows(static_cast<Eigen::Index>(i), x) = -ground->distance(x, anchors[i]);
    }
    return PhiSpace(std::move(ground), std::move(rows), norm);
}

PhiSpace PhiSpace::rbf(GroundPtr ground, const std::vector<int>& anchors, double gamma,
                       NormKind norm) {
    if (anchors.empty()) throw EmptySet("rbf dictionary needs at least one anchor");
    if (!(gamma > 0.0)) throw DimensionMismatch("rbf gamma must be positive");
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(anchors.size()), ground->size());
    for (size_t i = 0; i < anchors.size(); ++i) {
        ground->check_point(anchors[i]);
        for (int x = 0; x < ground->size(); ++x) {
            const double d = ground->distance(x, anchors[i]);
            rows(static_cast<Eigen::Index>(i), x) = std::exp(-gamma * d * d);
        }
    }
    return PhiSpace(std::move(ground), std::move(rows), norm);
}

PhiSpace PhiSpace::table(GroundPtr ground, Eigen::MatrixXd rows, NormKind norm) {
    return PhiSpace(std::move(ground), std::move(rows), norm);
}

void PhiSpace::check_dims(const PhiVector& c) const {
    if (c.coeffs.size() != dimension())
        throw DimensionMismatch("coefficient vector of length " + std::to_string(c.coeffs.size()) +
                                " against dictionary of dimension " + std::to_string(dimension()));
    if (!c.coeffs.allFinite()) throw DimensionMismatch("non-finite coefficients");
}

double PhiSpace::evaluate(const PhiVector& c, int x) const {
    check_dims(c);
    ground_->check_point(x);
    return eval_.col(x).dot(c.coeffs);
}

Eigen::VectorXd PhiSpace::evaluate_all(const PhiVector& c) const {
    check_dims(c);
    // Per-column dot products keep every evaluation path bit-identical with
    // evaluate() and the Dirac pairing.
    Eigen::VectorXd out(num_points());
    for (int x = 0; x < num_points(); ++x) out[x] = eval_.col(x).dot(c.coeffs);
    return out;
}

double PhiSpace::sup_norm(const PhiVector& c) const {
    return evaluate_all(c).cwiseAbs().maxCoeff();
}

double PhiSpace::phi_norm(const PhiVector& c) const {
    check_dims(c);
    switch (norm_kind_) {
        case NormKind::SupOnK: return sup_norm(c);
        case NormKind::CoeffL1: return c.coeffs.lpNorm<1>();
        case NormKind::CoeffL2: return c.coeffs.norm();
    }
    return 0.0;
}

DualVector PhiSpace::dirac(int x) const {
    ground_->check_point(x);
    return DualVector{eval_.col(x)};
}

double PhiSpace::pair(const DualVector& q, const PhiVector& c) {
    if (q.coords.size() != c.coeffs.size()) throw DimensionMismatch("dual/primal length mismatch");
    return q.coords.dot(c.coeffs);
}

SeparationResult PhiSpace::separates_points(double tol) const {
    const int n = num_points();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if ((eval_.col(x) - eval_.col(y)).cwiseAbs().maxCoeff() <= tol)
                return {false, x, y};
    return {true, -1, -1};
}

}  // namespace phiconv
