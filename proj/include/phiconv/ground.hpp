#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "phiconv/errors.hpp"

namespace phiconv {

/// A finite metric space: the ambient set S and its subsets K live here.
///
/// Construction validates the metric (symmetry, zero diagonal, nonnegativity,
/// triangle inequality within an absolute tolerance of 1e-9). Instances are
/// immutable after construction and shared by reference between modules, so
/// concurrent reads are safe.
class GroundSet {
public:
    static constexpr double kMetricTol = 1e-9;

    /// Euclidean ground set from a list of coordinate vectors (all of equal
    /// dimension). The metric matrix is derived from the coordinates.
    static std::shared_ptr<const GroundSet> from_coords(std::vector<Eigen::VectorXd> coords);

    /// Ground set from an explicit symmetric distance matrix.
    static std::shared_ptr<const GroundSet> from_metric(Eigen::MatrixXd metric);

    /// Ground set carrying both coordinates and an explicit metric; the two
    /// must agree entrywise within tolerance.
    static std::shared_ptr<const GroundSet> from_coords_and_metric(
        std::vector<Eigen::VectorXd> coords, Eigen::MatrixXd metric);

    int size() const { return static_cast<int>(metric_.rows()); }
    bool has_coords() const { return has_coords_; }

    /// Coordinate dimension; 0 when no coordinates are attached.
    int dim() const { return has_coords_ ? static_cast<int>(coords_.cols()) : 0; }

    double distance(int i, int j) const {
        check_point(i);
        check_point(j);
        return metric_(i, j);
    }

    /// Row-per-point coordinate matrix (n x d). Throws when absent.
    const Eigen::MatrixXd& coords() const {
        if (!has_coords_) throw MissingCoords("ground set carries no coordinates");
        return coords_;
    }

    const Eigen::MatrixXd& metric() const { return metric_; }

    void check_point(int id) const {
        if (id < 0 || id >= size())
            throw UnknownPoint("point id " + std::to_string(id) + " outside ground set of size " +
                               std::to_string(size()));
    }

private:
    GroundSet(Eigen::MatrixXd coords, bool has_coords, Eigen::MatrixXd metric);

    Eigen::MatrixXd coords_;  // n x d, empty when has_coords_ is false
    bool has_coords_ = false;
    Eigen::MatrixXd metric_;  // n x n
};

using GroundPtr = std::shared_ptr<const GroundSet>;

/// A subset of a ground set with deterministic ascending-id iteration.
class PointSubset {
public:
    PointSubset(GroundPtr parent, std::vector<int> members);

    /// The full ground set as a subset.
    static PointSubset full(GroundPtr parent);

    const GroundPtr& parent() const { return parent_; }
    const std::vector<int>& ids() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool empty() const { return members_.empty(); }
    bool contains(int id) const;

    /// Members except one id (which need not be present).
    PointSubset without(int id) const;

    bool is_subset_of(const PointSubset& other) const;

    friend bool operator==(const PointSubset& a, const PointSubset& b) {
        return a.members_ == b.members_;
    }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

private:
    GroundPtr parent_;
    std::vector<int> members_;  // sorted, unique
};

/// A proper extended real-valued function f : S -> R u {+inf}.
/// Infinity is a mask, not a sentinel value, so arithmetic stays total.
class ExtendedFunction {
public:
    /// Everywhere-finite function from a value vector.
    ExtendedFunction(GroundPtr parent, Eigen::VectorXd values);

    /// Function with the given finite mask (false => +inf; the stored value
    /// at masked points is ignored). Throws ImproperFunction when no point
    /// is finite.
    ExtendedFunction(GroundPtr parent, Eigen::VectorXd values, std::vector<bool> finite);

    /// The indicator i_K: 0 on the subset, +inf elsewhere.
    static ExtendedFunction indicator(const PointSubset& subset);

    const GroundPtr& parent() const { return parent_; }
    int size() const { return static_cast<int>(values_.size()); }
    bool is_finite(int id) const {
        parent_->check_point(id);
        return finite_[static_cast<size_t>(id)];
    }

    /// Finite value at a point; throws if the point is masked.
    double value(int id) const;

    /// Value with +inf for masked points.
    double value_or_inf(int id) const;

    const Eigen::VectorXd& raw_values() const { return values_; }
    const std::vector<bool>& finite_mask() const { return finite_; }

    std::vector<int> finite_points() const;

private:
    GroundPtr parent_;
    Eigen::VectorXd values_;
    std::vector<bool> finite_;
};

/// Builds and validates a ground set from optional coordinates and an
/// optional explicit metric (at least one must be present).
GroundPtr build_ground_set(const std::optional<std::vector<Eigen::VectorXd>>& coords,
                           const std::optional<Eigen::MatrixXd>& metric);

/// The function x -> -d(x, k): zero at k and strictly negative elsewhere,
/// so its strict maximum over any subset containing k sits exactly at k.
ExtendedFunction distance_function(GroundPtr g, int k);

}  // namespace phiconv
