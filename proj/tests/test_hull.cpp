#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phiconv/hull.hpp"
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

TEST_CASE("a point is in the hull of any set containing it") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    CHECK(hull_membership(space, PointSubset(g, {1, 2}), 1).inside);
}

TEST_CASE("middle point is in the affine hull of the endpoints") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    auto res = hull_membership(space, PointSubset(g, {0, 2}), 1);
    CHECK(res.inside);
    CHECK(res.lp_gap <= kStrictTol);
}

TEST_CASE("endpoint escapes the hull of the other two under the linear dictionary") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::linear(g);  // single row phi(x) = x
    auto res = hull_membership(space, PointSubset(g, {0, 1}), 2);
    REQUIRE_FALSE(res.inside);
    REQUIRE(res.certificate.has_value());
    // phi(2) = 2 > 1 = sup over {0,1}; box-normalized optimum is 1
    CHECK(res.lp_gap == doctest::Approx(1.0));
    CHECK(res.certificate->direction.coeffs[0] == doctest::Approx(1.0));
    CHECK(res.certificate->margin > 0.0);
}

TEST_CASE("hull enumeration on the line") {
    GroundPtr g = line({0, 1, 2});
    PointSubset all = PointSubset::full(g);
    PhiSpace affine = PhiSpace::affine(g);

    CHECK(phi_convex_hull(affine, all, all) == all);
    CHECK(phi_convex_hull(affine, PointSubset(g, {0, 2}), all) == all);

    // two anchored distance rows: -d(.,0) and -d(.,2)
    PhiSpace dist = PhiSpace::distance(g, {0, 2});
    PointSubset a(g, {0, 2});
    PointSubset hull = phi_convex_hull(dist, a, all);
    // oracle: per-point membership decisions must match the set
    for (int x : all) CHECK(hull.contains(x) == hull_membership(dist, a, x).inside);
}

TEST_CASE("is_phi_convex on the line") {
    GroundPtr g = line({0, 1, 2});
    PointSubset all = PointSubset::full(g);
    PhiSpace affine = PhiSpace::affine(g);
    CHECK(is_phi_convex(affine, all, all));
    CHECK_FALSE(is_phi_convex(affine, PointSubset(g, {0, 2}), all));
    CHECK(is_phi_convex(affine, PointSubset(g, {1}), all));
    CHECK_THROWS_AS(is_phi_convex(affine, PointSubset(g, {0, 2}), PointSubset(g, {0, 1})),
                    NotSubset);
}

TEST_CASE("separation certificate on the line") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::linear(g);
    auto cert = separate_from_hull(space, PointSubset(g, {0, 1}), 2);
    CHECK(cert.threshold == doctest::Approx(1.5));
    CHECK(cert.margin == doctest::Approx(0.5));
    CHECK_THROWS_AS(separate_from_hull(space, PointSubset(g, {0, 1}), 0), NotSeparable);
}

TEST_CASE("fourth square corner separated from the first three") {
    GroundPtr g = plane({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    PhiSpace space = PhiSpace::linear(g);
    auto cert = separate_from_hull(space, PointSubset(g, {0, 1, 2}), 3);
    // the separating direction must look along (1,1)
    const Eigen::VectorXd& c = cert.direction.coeffs;
    CHECK(c[0] > 0.0);
    CHECK(c[1] > 0.0);
    CHECK(c[0] == doctest::Approx(c[1]));

    const Eigen::VectorXd vals = space.evaluate_all(cert.direction);
    for (int a : {0, 1, 2}) CHECK(vals[a] <= cert.threshold - cert.margin + 1e-12);
    CHECK(vals[3] >= cert.threshold + cert.margin - 1e-12);
}

TEST_CASE("hull is extensive, monotone and idempotent on random instances") {
    Rng rng(77);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + rng.index(8);
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.box_vector(2, -2, 2));
        GroundPtr g = GroundSet::from_coords(pts);
        PointSubset all = PointSubset::full(g);
        PhiSpace space = trial % 2 == 0 ? PhiSpace::affine(g) : PhiSpace::distance(g, {0, 1});

        std::vector<int> a_ids, b_ids;
        for (int i = 0; i < n; ++i) {
            if (rng.u01() < 0.4) a_ids.push_back(i);
            if (rng.u01() < 0.4) b_ids.push_back(i);
        }
        if (a_ids.empty()) a_ids.push_back(rng.index(n));
        std::vector<int> ab = a_ids;
        ab.insert(ab.end(), b_ids.begin(), b_ids.end());
        PointSubset a(g, a_ids), ab_set(g, ab);

        PointSubset hull_a = phi_convex_hull(space, a, all);
        CHECK(a.is_subset_of(hull_a));                                    // extensive
        CHECK(hull_a.is_subset_of(phi_convex_hull(space, ab_set, all)));  // monotone
        CHECK(phi_convex_hull(space, hull_a, all) == hull_a);             // idempotent
    }
}

TEST_CASE("affine hull membership agrees with the planar point-in-polygon oracle") {
    Rng rng(2718);
    // random vertices plus an ambient grid over the bounding box
    std::vector<std::pair<double, double>> coords;
    std::vector<Eigen::Vector2d> vertex_pts;
    const int n_vertices = 7;
    for (int i = 0; i < n_vertices; ++i) {
        const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
        coords.emplace_back(x, y);
        vertex_pts.emplace_back(x, y);
    }
    const int grid = 9;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            coords.emplace_back(-1.2 + 2.4 * i / (grid - 1), -1.2 + 2.4 * j / (grid - 1));

    GroundPtr g = plane(coords);
    PhiSpace space = PhiSpace::affine(g);
    PointSubset all = PointSubset::full(g);
    std::vector<int> gen_ids;
    for (int i = 0; i < n_vertices; ++i) gen_ids.push_back(i);
    PointSubset hull = phi_convex_hull(space, PointSubset(g, gen_ids), all);

    auto classical = oracles::convex_hull_2d(vertex_pts);
    int compared = 0;
    for (int x = 0; x < g->size(); ++x) {
        Eigen::Vector2d p(g->coords()(x, 0), g->coords()(x, 1));
        const double sd = oracles::signed_distance_to_hull(classical, p);
        if (std::abs(sd) < 1e-6) continue;  // skip boundary-grazing grid points
        CHECK(hull.contains(x) == (sd < 0.0));
        ++compared;
    }
    CHECK(compared > 60);
}

TEST_CASE("membership decisions are invariant under positive row scaling") {
    Rng rng(515);
    GroundPtr g = plane({{0, 0}, {2, 0}, {0, 2}, {0.5, 0.5}, {3, 3}});
    PointSubset all = PointSubset::full(g);
    Eigen::MatrixXd rows = PhiSpace::affine(g).eval_matrix();
    PhiSpace base = PhiSpace::table(g, rows);
    for (double lambda : {0.03, 1.0, 40.0}) {
        PhiSpace scaled = PhiSpace::table(g, lambda * rows);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<int> ids;
            for (int i = 0; i < g->size(); ++i)
                if (rng.u01() < 0.5) ids.push_back(i);
            if (ids.empty()) ids.push_back(0);
            PointSubset a(g, ids);
            for (int x : all)
                CHECK(hull_membership(base, a, x).inside ==
                      hull_membership(scaled, a, x).inside);
        }
    }
}

TEST_CASE("emitted certificates satisfy their invariant") {
    Rng rng(626);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 5 + rng.index(6);
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < n; ++i) pts.push_back(rng.box_vector(2, -2, 2));
        GroundPtr g = GroundSet::from_coords(pts);
        PhiSpace space = PhiSpace::affine(g);
        std::vector<int> ids;
        for (int i = 0; i < n / 2; ++i) ids.push_back(i);
        PointSubset a(g, ids);
        for (int x = n / 2; x < n; ++x) {
            auto res = hull_membership(space, a, x);
            if (res.inside) continue;
            const auto& cert = *res.certificate;
            const Eigen::VectorXd vals = space.evaluate_all(cert.direction);
            CHECK(cert.margin > 0.0);
            for (int p : a) CHECK(vals[p] <= cert.threshold - cert.margin + 1e-12);
            CHECK(vals[x] >= cert.threshold + cert.margin - 1e-12);
        }
    }
}

TEST_CASE("hull errors") {
    GroundPtr g = line({0, 1, 2});
    PhiSpace space = PhiSpace::affine(g);
    CHECK_THROWS_AS(hull_membership(space, PointSubset(g, {}), 0), EmptySet);
    CHECK_THROWS_AS(phi_convex_hull(space, PointSubset(g, {0, 2}), PointSubset(g, {0, 1})),
                    NotSubset);
}
