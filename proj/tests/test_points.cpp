#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "phiconv/points.hpp"
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

GroundPtr plane(const std::vector<std::pair<double, double>>& xys) {
    std::vector<Eigen::VectorXd> pts;
    for (auto [x, y] : xys) {
        Eigen::VectorXd p(2);
        p << x, y;
        pts.push_back(p);
    }
    return GroundSet::from_coords(pts);
}

}  // namespace

TEST_CASE("betweenness trivial and line cases") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    CHECK(is_phi_between(space, 1, 1, 1));
    // affine phi dominated at both endpoints by its middle value is constant
    CHECK(is_phi_between(space, 1, 0, 2));
    // phi = -x satisfies the constraints at a=0 with phi(0) > phi(1)
    CHECK_FALSE(is_phi_between(space, 0, 1, 2));
}

TEST_CASE("betweenness is symmetric in x and y") {
    Rng rng(11);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(rng.box_vector(2));
        GroundPtr g = GroundSet::from_coords(pts);
        PhiSpace space = PhiSpace::affine(g);
        for (int a = 0; a < 5; ++a)
            for (int x = 0; x < 5; ++x)
                for (int y = x; y < 5; ++y)
                    CHECK(is_phi_between(space, a, x, y) == is_phi_between(space, a, y, x));
    }
}

TEST_CASE("degenerate betweenness matches the domination characterization") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    // is_phi_between(a, a, y): true iff every phi with phi(y) <= phi(a) is equal there.
    // The affine span always contains phi with phi(y) < phi(a), so false for y != a.
    CHECK_FALSE(is_phi_between(space, 0, 0, 1));
    CHECK_FALSE(is_phi_between(space, 2, 2, 0));
    CHECK(is_phi_between(space, 1, 1, 1));

    // on a span, that condition is equivalent to delta_a = delta_y, which a
    // non-separating dictionary can realize for distinct points: x^2 cannot
    // tell -1 from 1
    GroundPtr sym = line({-1, 0, 1});
    Eigen::MatrixXd sq(1, 3);
    sq << 1, 0, 1;
    PhiSpace squares = PhiSpace::table(sym, sq);
    CHECK(is_phi_between(squares, 2, 2, 0));  // delta same: x^2(-1) = x^2(1)
    CHECK(is_phi_between(squares, 0, 0, 2));
    CHECK_FALSE(is_phi_between(squares, 2, 2, 1));  // x^2 separates 1 from 0
}

TEST_CASE("extremal points on the line are the endpoints") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    CHECK(phi_extremal_points(space, PointSubset::full(g)).ids() == std::vector<int>{0, 2});
    CHECK(phi_extremal_points(space, PointSubset(g, {1})).ids() == std::vector<int>{1});
}

TEST_CASE("extremal points of corners plus center are the corners") {
    GroundPtr g = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
    PhiSpace space = PhiSpace::linear(g);
    CHECK(phi_extremal_points(space, PointSubset::full(g)).ids() ==
          std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("exposed points on the line with witnesses") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    auto witnesses = phi_exposed_points(space, PointSubset::full(g));
    REQUIRE(witnesses.size() == 2);
    CHECK(witnesses[0].point == 0);
    CHECK(witnesses[1].point == 2);
    // phi = x exposes 2 with margin 1 at box-normalized coefficients
    CHECK(witnesses[1].margin == doctest::Approx(1.0));
    for (const auto& w : witnesses) {
        const Eigen::VectorXd vals = space.evaluate_all(w.direction);
        for (int y = 0; y < 3; ++y)
            if (y != w.point) CHECK(vals[w.point] >= vals[y] + w.margin - 1e-9);
    }
}

TEST_CASE("singleton exposure is vacuous with infinite margin") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    auto witnesses = phi_exposed_points(space, PointSubset(g, {1}));
    REQUIRE(witnesses.size() == 1);
    CHECK(witnesses[0].point == 1);
    CHECK(witnesses[0].vacuous);
    CHECK(std::isinf(witnesses[0].margin));
}

TEST_CASE("full distance dictionary exposes every point") {
    Rng rng(13);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(rng.box_vector(2, -3, 3));
    GroundPtr g = GroundSet::from_coords(pts);
    std::vector<int> all_ids;
    for (int i = 0; i < 8; ++i) all_ids.push_back(i);
    PhiSpace space = PhiSpace::distance(g, all_ids);  // a -d(.,k) row per point
    CHECK(phi_exposed_set(space, PointSubset::full(g)).size() == 8);
}

TEST_CASE("affine exposure of simplex vertices, constants-only exposes nothing") {
    GroundPtr g = plane({{0, 0}, {1, 0}, {0, 1}});
    auto witnesses = affine_exposed_points(PointSubset::full(g));
    CHECK(witnesses.size() == 3);

    PhiSpace constants = PhiSpace::table(g, Eigen::MatrixXd::Ones(1, 3));
    CHECK(phi_exposed_points(constants, PointSubset::full(g)).empty());
}

TEST_CASE("exposure witnesses stay witnesses under positive scaling") {
    GroundPtr g = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.25, 0.5}});
    PhiSpace space = PhiSpace::linear(g);
    auto witnesses = phi_exposed_points(space, PointSubset::full(g));
    REQUIRE_FALSE(witnesses.empty());
    for (const auto& w : witnesses) {
        for (double lambda : {0.5, 3.0}) {
            PhiVector scaled{lambda * w.direction.coeffs};
            const Eigen::VectorXd vals = space.evaluate_all(scaled);
            for (int y = 0; y < g->size(); ++y)
                if (y != w.point)
                    CHECK(vals[w.point] >= vals[y] + lambda * w.margin - 1e-9);
        }
    }
}

TEST_CASE("exposed points are extremal on random instances") {
    Rng rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 4 + rng.index(6);
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.box_vector(2, -2, 2));
        GroundPtr g = GroundSet::from_coords(pts);
        PhiSpace space = trial % 2 == 0 ? PhiSpace::affine(g)
                                        : PhiSpace::rbf(g, {0, 1, 2}, 0.7);
        PointSubset c = PointSubset::full(g);
        CHECK(phi_exposed_set(space, c).is_subset_of(phi_extremal_points(space, c)));
    }
}

TEST_CASE("point classes on random planar sets match the classical hull oracle") {
    Rng rng(19);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 5 + rng.index(8);
        std::vector<std::pair<double, double>> coords;
        std::vector<Eigen::Vector2d> pts;
        for (int i = 0; i < n; ++i) {
            const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
            coords.emplace_back(x, y);
            pts.emplace_back(x, y);
        }
        GroundPtr g = plane(coords);
        auto classes = compare_point_classes(PointSubset::full(g));
        CHECK(classes.chain_ok);
        CHECK(classes.exp_ids == classes.aexp_ids);
        CHECK(classes.aexp_ids == classes.ext_ids);

        auto hull = oracles::convex_hull_2d(pts);
        std::vector<int> oracle_vertices;
        for (int i = 0; i < n; ++i)
            for (const auto& h : hull)
                if ((h - pts[static_cast<size_t>(i)]).norm() < 1e-12) {
                    oracle_vertices.push_back(i);
                    break;
                }
        std::sort(oracle_vertices.begin(), oracle_vertices.end());
        CHECK(classes.ext_ids == oracle_vertices);
    }
}

TEST_CASE("interior points of a segment are in no class") {
    GroundPtr g = plane({{0, 0}, {1, 1}, {0.5, 0.5}, {0.25, 0.25}});
    auto classes = compare_point_classes(PointSubset::full(g));
    const std::vector<int> ends{0, 1};
    CHECK(classes.exp_ids == ends);
    CHECK(classes.aexp_ids == ends);
    CHECK(classes.ext_ids == ends);
}

TEST_CASE("reconstruction on the line and a singleton") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);

    auto rec = reconstruction_check(space, all, all, ReconstructionMode::Extremal);
    CHECK(rec.pass());
    CHECK(rec.points == std::vector<int>{0, 2});

    auto rec2 = reconstruction_check(space, all, all, ReconstructionMode::Exposed);
    CHECK(rec2.pass());
    CHECK(rec2.points == std::vector<int>{0, 2});

    PointSubset singleton(g, {1});
    auto rec3 = reconstruction_check(space, singleton, all, ReconstructionMode::Exposed);
    CHECK(rec3.pass());
    CHECK(rec3.points == std::vector<int>{1});
    CHECK(rec3.hull == std::vector<int>{1});
}

TEST_CASE("reconstruction on a square grid recovers the corners") {
    std::vector<std::pair<double, double>> coords;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) coords.emplace_back(i, j);
    GroundPtr g = plane(coords);
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);
    auto rec = reconstruction_check(space, all, all, ReconstructionMode::Exposed);
    CHECK(rec.pass());
    CHECK(rec.points == std::vector<int>{0, 2, 6, 8});
}

TEST_CASE("reconstruction hypotheses are enforced") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);
    // {0, 2} is not Phi-convex under the affine dictionary
    CHECK_THROWS_AS(
        reconstruction_check(space, PointSubset(g, {0, 2}), all, ReconstructionMode::Exposed),
        HypothesisViolated);

    PhiSpace constants = PhiSpace::table(g, Eigen::MatrixXd::Ones(1, 3));
    CHECK_THROWS_AS(reconstruction_check(constants, all, all, ReconstructionMode::Exposed),
                    HypothesisViolated);
}

TEST_CASE("milman converse on small instances") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);

    CHECK(milman_converse_check(space, PointSubset(g, {0, 1, 2}), all).pass());
    CHECK(milman_converse_check(space, all, all).pass());

    auto rep = milman_converse_check(space, PointSubset(g, {0, 2}), all);
    CHECK(rep.pass());
    CHECK(rep.extremal == std::vector<int>{0, 2});

    // polygon grid: vertex generators recover themselves
    std::vector<std::pair<double, double>> coords;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) coords.emplace_back(i, j);
    GroundPtr grid = GroundSet::from_coords([&] {
        std::vector<Eigen::VectorXd> pts;
        for (auto [x, y] : coords) {
            Eigen::VectorXd p(2);
            p << x, y;
            pts.push_back(p);
        }
        return pts;
    }());
    PhiSpace affine = PhiSpace::affine(grid);
    auto rep2 = milman_converse_check(affine, PointSubset(grid, {0, 2, 6, 8}),
                                      PointSubset::full(grid));
    CHECK(rep2.pass());
}

TEST_CASE("stadium corner is extreme but never exposed") {
    StadiumReport report = stadium_exposure_diagnostic(10000, 4000, 1e-9);
    CHECK_FALSE(report.corner_is_midpoint);
    CHECK(report.angles_containing_corner > 0);
    CHECK(report.min_maximizer_diameter >= 0.5);
    CHECK_FALSE(report.corner_exposed);
    CHECK(report.pass());
}

TEST_CASE("points errors") {
    GroundPtr g = line({0, 1});
    PhiSpace space = PhiSpace::affine(g);
    CHECK_THROWS_AS(phi_extremal_points(space, PointSubset(g, {})), EmptySet);
    CHECK_THROWS_AS(phi_exposed_points(space, PointSubset(g, {})), EmptySet);
    Eigen::MatrixXd metric(2, 2);
    metric << 0, 1, 1, 0;
    GroundPtr no_coords = GroundSet::from_metric(metric);
    CHECK_THROWS_AS(affine_exposed_points(PointSubset::full(no_coords)), MissingCoords);
    CHECK_THROWS_AS(compare_point_classes(PointSubset::full(no_coords)), MissingCoords);
}
