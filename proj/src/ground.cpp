#include "phiconv/ground.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace phiconv {

namespace {

void validate_metric(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    if (n == 0 || m.cols() != n) throw MetricViolation("metric matrix must be square and nonempty");
    if (!m.allFinite()) throw MetricViolation("metric matrix contains non-finite entries");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (m(i, i) != 0.0)
            throw MetricViolation("nonzero diagonal entry at point " + std::to_string(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            if (m(i, j) < 0.0)
                throw MetricViolation("negative distance d(" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            if (std::abs(m(i, j) - m(j, i)) > GroundSet::kMetricTol) {
                std::ostringstream os;
                os << "asymmetric distances d(" << i << "," << j << ")=" << m(i, j) << " vs d(" << j
                   << "," << i << ")=" << m(j, i);
                throw MetricViolation(os.str());
            }
            if (i != j && m(i, j) == 0.0)
                throw MetricViolation("zero distance between distinct points " + std::to_string(i) +
                                      " and " + std::to_string(j));
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                if (m(i, j) > m(i, k) + m(k, j) + GroundSet::kMetricTol) {
                    std::ostringstream os;
                    os << "triangle inequality fails: d(" << i << "," << j << ")=" << m(i, j)
                       << " > d(" << i << "," << k << ") + d(" << k << "," << j
                       << ")=" << m(i, k) + m(k, j);
                    throw MetricViolation(os.str());
                }
}

Eigen::MatrixXd metric_from_coords(const Eigen::MatrixXd& coords) {
    const auto n = coords.rows();
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d = (coords.row(i) - coords.row(j)).norm();
            m(i, j) = d;
            m(j, i) = d;
        }
    }
    return m;
}

Eigen::MatrixXd pack_coords(const std::vector<Eigen::VectorXd>& coords) {
    if (coords.empty()) throw MissingCoords("empty coordinate list");
    const auto d = coords.front().size();
    Eigen::MatrixXd packed(static_cast<Eigen::Index>(coords.size()), d);
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].size() != d)
            throw DimensionMismatch("coordinate vectors of unequal dimension");
        if (!coords[i].allFinite()) throw MetricViolation("non-finite coordinate");
        packed.row(static_cast<Eigen::Index>(i)) = coords[i];
    }
    return packed;
}

}  // namespace

GroundSet::GroundSet(Eigen::MatrixXd coords, bool has_coords, Eigen::MatrixXd metric)
    : coords_(std::move(coords)), has_coords_(has_coords), metric_(std::move(metric)) {}

std::shared_ptr<const GroundSet> GroundSet::from_coords(std::vector<Eigen::VectorXd> coords) {
    Eigen::MatrixXd packed = pack_coords(coords);
    Eigen::MatrixXd metric = metric_from_coords(packed);
    validate_metric(metric);
    return std::shared_ptr<const GroundSet>(
        new GroundSet(std::move(packed), true, std::move(metric)));
}

std::shared_ptr<const GroundSet> GroundSet::from_metric(Eigen::MatrixXd metric) {
    validate_metric(metric);
    return std::shared_ptr<const GroundSet>(
        new GroundSet(Eigen::MatrixXd(), false, std::move(metric)));
}

std::shared_ptr<const GroundSet> GroundSet::from_coords_and_metric(
    std::vector<Eigen::VectorXd> coords, Eigen::MatrixXd metric) {
    Eigen::MatrixXd packed = pack_coords(coords);
    if (metric.rows() != packed.rows())
        throw DimensionMismatch("metric size does not match number of points");
    Eigen::MatrixXd derived = metric_from_coords(packed);
    if (((derived - metric).cwiseAbs().maxCoeff()) > kMetricTol)
        throw MetricViolation("explicit metric disagrees with euclidean distances");
    validate_metric(metric);
    return std::shared_ptr<const GroundSet>(
        new GroundSet(std::move(packed), true, std::move(metric)));
}

GroundPtr build_ground_set(const std::optional<std::vector<Eigen::VectorXd>>& coords,
                           const std::optional<Eigen::MatrixXd>& metric) {
    if (coords && metric) return GroundSet::from_coords_and_metric(*coords, *metric);
    if (coords) return GroundSet::from_coords(*coords);
    if (metric) return GroundSet::from_metric(*metric);
    throw MissingCoords("neither coordinates nor a metric supplied");
}

PointSubset::PointSubset(GroundPtr parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
    if (!parent_) throw Error("null ground set");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int id : members_) parent_->check_point(id);
}

PointSubset PointSubset::full(GroundPtr parent) {
    std::vector<int> ids(static_cast<size_t>(parent->size()));
    for (int i = 0; i < parent->size(); ++i) ids[static_cast<size_t>(i)] = i;
    return PointSubset(std::move(parent), std::move(ids));
}

bool PointSubset::contains(int id) const {
    return std::binary_search(members_.begin(), members_.end(), id);
}

PointSubset PointSubset::without(int id) const {
    std::vector<int> rest;
    rest.reserve(members_.size());
    for (int m : members_)
        if (m != id) rest.push_back(m);
    return PointSubset(parent_, std::move(rest));
}

bool PointSubset::is_subset_of(const PointSubset& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

ExtendedFunction::ExtendedFunction(GroundPtr parent, Eigen::VectorXd values)
    : parent_(std::move(parent)),
      values_(std::move(values)),
      finite_(static_cast<size_t>(values_.size()), true) {
    if (!parent_) throw Error("null ground set");
    if (values_.size() != parent_->size())
        throw DimensionMismatch("function table size does not match ground set");
    if (!values_.allFinite()) throw ImproperFunction("non-finite value in finite function table");
}

ExtendedFunction::ExtendedFunction(GroundPtr parent, Eigen::VectorXd values,
                                   std::vector<bool> finite)
    : parent_(std::move(parent)), values_(std::move(values)), finite_(std::move(finite)) {
    if (!parent_) throw Error("null ground set");
    if (values_.size() != parent_->size() ||
        finite_.size() != static_cast<size_t>(parent_->size()))
        throw DimensionMismatch("function table size does not match ground set");
    bool any_finite = false;
    for (size_t i = 0; i < finite_.size(); ++i) {
        if (finite_[i]) {
            any_finite = true;
            if (!std::isfinite(values_[static_cast<Eigen::Index>(i)]))
                throw ImproperFunction("non-finite value at unmasked point " + std::to_string(i));
        }
    }
    if (!any_finite) throw ImproperFunction("function is +inf everywhere");
}

ExtendedFunction ExtendedFunction::indicator(const PointSubset& subset) {
    if (subset.empty()) throw EmptySet("indicator of the empty set is improper");
    const auto n = subset.parent()->size();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
    std::vector<bool> finite(static_cast<size_t>(n), false);
    for (int id : subset) finite[static_cast<size_t>(id)] = true;
    return ExtendedFunction(subset.parent(), std::move(values), std::move(finite));
}

double ExtendedFunction::value(int id) const {
    parent_->check_point(id);
    if (!finite_[static_cast<size_t>(id)])
        throw ImproperFunction("value requested at +inf point " + std::to_string(id));
    return values_[id];
}

double ExtendedFunction::value_or_inf(int id) const {
    parent_->check_point(id);
    return finite_[static_cast<size_t>(id)] ? values_[id]
                                            : std::numeric_limits<double>::infinity();
}

std::vector<int> ExtendedFunction::finite_points() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (finite_[static_cast<size_t>(i)]) out.push_back(i);
    return out;
}

ExtendedFunction distance_function(GroundPtr g, int k) {
    g->check_point(k);
    Eigen::VectorXd values(g->size());
    for (int x = 0; x < g->size(); ++x) values[x] = -g->distance(x, k);
    return ExtendedFunction(std::move(g), std::move(values));
}

}  // namespace phiconv
