#include <doctest.h>

#include <cmath>

#include "phiconv/ground.hpp"
#include "phiconv/problem.hpp"
#include "phiconv/rng.hpp"

using namespace phiconv;

namespace {

GroundPtr line(std::initializer_list<double> xs) {
    std::vector<Eigen::VectorXd> pts;
    for (double x : xs) {
        Eigen::VectorXd p(1);
        p << x;
        pts.push_back(p);
    }
    return GroundSet::from_coords(pts);
}

GroundPtr plane(std::initializer_list<std::pair<double, double>> xys) {
    std::vector<Eigen::VectorXd> pts;
    for (auto [x, y] : xys) {
        Eigen::VectorXd p(2);
        p << x, y;
        pts.push_back(p);
    }
    return GroundSet::from_coords(pts);
}

}  // namespace

TEST_CASE("collinear euclidean ground set") {
    GroundPtr g = line({0, 1, 2});
    CHECK(g->size() == 3);
    CHECK(g->distance(0, 2) == doctest::Approx(2.0));
    CHECK(g->distance(0, 0) == 0.0);
}

TEST_CASE("explicit two-point metric") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    GroundPtr g = GroundSet::from_metric(m);
    CHECK(g->size() == 2);
    CHECK_FALSE(g->has_coords());
    CHECK(g->distance(0, 1) == 1.0);
}

TEST_CASE("metric violations rejected") {
    Eigen::MatrixXd asym(2, 2);
    asym << 0, 3, 1, 0;
    CHECK_THROWS_AS(GroundSet::from_metric(asym), MetricViolation);

    Eigen::MatrixXd negative(2, 2);
    negative << 0, -1, -1, 0;
    CHECK_THROWS_AS(GroundSet::from_metric(negative), MetricViolation);

    Eigen::MatrixXd triangle(3, 3);
    triangle << 0, 1, 5, 1, 0, 1, 5, 1, 0;  // d(0,2) > d(0,1) + d(1,2)
    CHECK_THROWS_AS(GroundSet::from_metric(triangle), MetricViolation);

    Eigen::MatrixXd diag(2, 2);
    diag << 0.5, 1, 1, 0;
    CHECK_THROWS_AS(GroundSet::from_metric(diag), MetricViolation);
}

TEST_CASE("coords with consistent metric accepted, inconsistent rejected") {
    std::vector<Eigen::VectorXd> pts;
    Eigen::VectorXd a(1), b(1);
    a << 0;
    b << 1;
    pts = {a, b};
    Eigen::MatrixXd ok(2, 2);
    ok << 0, 1, 1, 0;
    CHECK(GroundSet::from_coords_and_metric(pts, ok)->has_coords());

    Eigen::MatrixXd bad(2, 2);
    bad << 0, 2, 2, 0;
    CHECK_THROWS_AS(GroundSet::from_coords_and_metric(pts, bad), MetricViolation);
}

TEST_CASE("distance_function values on the line") {
    GroundPtr g = line({0, 1, 2});
    ExtendedFunction f = distance_function(g, 1);
    CHECK(f.value(0) == doctest::Approx(-1.0));
    CHECK(f.value(1) == 0.0);
    CHECK(f.value(2) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(distance_function(g, 7), UnknownPoint);
}

TEST_CASE("distance_function at a unit-square corner") {
    GroundPtr g = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    ExtendedFunction f = distance_function(g, 0);
    CHECK(f.value(0) == 0.0);
    CHECK(f.value(1) == doctest::Approx(-1.0));
    CHECK(f.value(2) == doctest::Approx(-1.0));
    CHECK(f.value(3) == doctest::Approx(-std::sqrt(2.0)));
}

TEST_CASE("distance_function attains its strict maximum exactly at the anchor") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + rng.index(10);
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.box_vector(3, -5, 5));
        GroundPtr g = GroundSet::from_coords(pts);
        for (int k = 0; k < n; ++k) {
            ExtendedFunction f = distance_function(g, k);
            for (int x = 0; x < n; ++x) {
                if (x == k) CHECK(f.value(x) == 0.0);
                else CHECK(f.value(x) < 0.0);
            }
        }
    }
}

TEST_CASE("extended function needs one finite value") {
    GroundPtr g = line({0, 1});
    Eigen::VectorXd vals(2);
    vals << 1.0, 2.0;
    CHECK_THROWS_AS(ExtendedFunction(g, vals, {false, false}), ImproperFunction);

    ExtendedFunction f(g, vals, {true, false});
    CHECK(f.value(0) == 1.0);
    CHECK(std::isinf(f.value_or_inf(1)));
    CHECK_THROWS_AS(f.value(1), ImproperFunction);
    CHECK(f.finite_points() == std::vector<int>{0});
}

TEST_CASE("indicator function masks the complement") {
    GroundPtr g = line({0, 1, 2});
    ExtendedFunction ik = ExtendedFunction::indicator(PointSubset(g, {0, 2}));
    CHECK(ik.value(0) == 0.0);
    CHECK(ik.value(2) == 0.0);
    CHECK_FALSE(ik.is_finite(1));
}

TEST_CASE("point subsets are sorted, deduplicated and validated") {
    GroundPtr g = line({0, 1, 2});
    PointSubset s(g, {2, 0, 2});
    CHECK(s.ids() == std::vector<int>{0, 2});
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.is_subset_of(PointSubset::full(g)));
    CHECK_FALSE(PointSubset::full(g).is_subset_of(s));
    CHECK_THROWS_AS(PointSubset(g, {3}), UnknownPoint);
}

TEST_CASE("ground serialization round-trips bit-for-bit") {
    Rng rng(99);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(rng.box_vector(2, -3, 3));
    GroundPtr g = GroundSet::from_coords(pts);

    auto j = ground_to_json(*g);
    GroundPtr back = ground_from_json(j);
    REQUIRE(back->size() == g->size());
    REQUIRE(back->has_coords());
    for (int i = 0; i < g->size(); ++i) {
        for (int c = 0; c < g->dim(); ++c) CHECK(back->coords()(i, c) == g->coords()(i, c));
        for (int k = 0; k < g->size(); ++k) CHECK(back->metric()(i, k) == g->metric()(i, k));
    }
}
