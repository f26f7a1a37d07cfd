#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcat/comparison.hpp"
#include "hcat/error.hpp"
#include "hcat/instances.hpp"

using namespace hcat;
constexpr double pi = std::numbers::pi;

TEST_CASE("CAT suite has no violations on the CAT(0) and CAT(1) instances") {
    std::vector<std::pair<SpacePtr, double>> cases = {
        {std::make_shared<ModelSpace>(Kappa{0}), 0.0},  {make_tripod(), 0.0},
        {make_random_tree(15, 42), 0.0},                {make_cone3(), 0.0},
        {std::make_shared<ModelSpace>(Kappa{-1}), -1.0}, {std::make_shared<ModelSpace>(Kappa{1}), 1.0},
        {make_tripod_cone(), 0.0},
    };
    for (auto& [sp, k] : cases) {
        CAPTURE(sp->kind());
        CAPTURE(k);
        auto rep = verify_cat(*sp, Kappa{k}, 1000, 2024, 1e-9);
        CHECK(rep.samples == 1000);
        CHECK(rep.violations == 0);
    }
    // Hyperbolic plane is also CAT(0).
    auto rep = verify_cat(ModelSpace(Kappa{-1}), Kappa{0}, 500, 3, 1e-9);
    CHECK(rep.violations == 0);
}

TEST_CASE("sphere against a hyperbolic comparison fails (negative control)") {
    auto rep = verify_cat(ModelSpace(Kappa{1}), Kappa{-1}, 1000, 2024, 1e-9);
    CHECK(rep.violations > 0);
    CHECK(rep.worst_slack > 1e-3);
}

TEST_CASE("verify_cat is deterministic under the seed") {
    auto tree = make_random_tree(15, 42);
    auto a = verify_cat(*tree, Kappa{0}, 300, 5, 1e-9);
    auto b = verify_cat(*tree, Kappa{0}, 300, 5, 1e-9);
    CHECK(a.worst_slack == b.worst_slack);
}

TEST_CASE("CAT(0) inequality on enumerated tripod configurations") {
    // Brute force over a lattice of leg positions using the squared form
    // d^2(g_t, y) <= (1-t) d^2(x0,y) + t d^2(x1,y) - t(1-t) d^2(x0,x1).
    auto tri = make_tripod();
    std::vector<Point> pts{tri->vertex(0)};
    for (int leg = 0; leg < 3; ++leg)
        for (int k = 1; k <= 4; ++k) pts.push_back(tri->on_edge(leg, 0.25 * k));
    double worst = -1;
    for (const auto& x0 : pts)
        for (const auto& x1 : pts)
            for (const auto& y : pts)
                for (double t : {0.1, 0.3, 0.5, 0.8}) {
                    Point g = tri->geodesic(x0, x1, t);
                    double lhs = std::pow(tri->dist(g, y), 2);
                    double rhs = (1 - t) * std::pow(tri->dist(x0, y), 2) + t * std::pow(tri->dist(x1, y), 2) -
                                 t * (1 - t) * std::pow(tri->dist(x0, x1), 2);
                    worst = std::max(worst, lhs - rhs);
                }
    CHECK(worst <= 1e-12);
}

TEST_CASE("angle monotonicity") {
    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(i / 20.0);

    ModelSpace e(Kappa{0});
    auto flat = verify_angle_monotonicity(e, e.polar(0, 0), e.polar(1, 0.3), e.polar(2, 1.7), grid, grid);
    CHECK(flat.violations == 0);
    CHECK(flat.worst_slack <= 1e-12);

    auto tri = make_tripod();
    auto legs = verify_angle_monotonicity(*tri, tri->vertex(0), tri->vertex(1), tri->vertex(2), grid, grid);
    CHECK(legs.violations == 0);
    CHECK(std::fabs(legs.worst_slack) <= 1e-15);

    ModelSpace h(Kappa{-1});
    CounterRng rng(4);
    for (int i = 0; i < 10; ++i) {
        Point x = h.sample(rng), y = h.sample(rng), z = h.sample(rng);
        auto rep = verify_angle_monotonicity(h, Kappa{0}, x, y, z, grid, grid);
        CHECK(rep.violations == 0);
    }
    // Positively curved surface judged with kappa = 0: angles decrease.
    ModelSpace s(Kappa{1});
    auto neg = verify_angle_monotonicity(s, Kappa{0}, s.polar(0, 0), s.polar(1.2, 0), s.polar(1.2, 2.0), grid, grid);
    CHECK(neg.violations > 0);
}

TEST_CASE("kappa independence of comparison angles") {
    ModelSpace e(Kappa{0});
    Point x = e.polar(0, 0);
    Point y = e.polar(1, 1);
    auto same = verify_kappa_independence(e, x, {{y, y}}, Kappa{0}, Kappa{0});
    CHECK(same.fitted_c == 0.0);

    ModelSpace s(Kappa{1});
    Point n = s.polar(0, 0);
    std::vector<std::pair<Point, Point>> pairs;
    CounterRng rng(12);
    for (int i = 0; i < 30; ++i)
        pairs.push_back({s.polar(0.1, rng.uniform(0, 2 * pi)), s.polar(0.1, rng.uniform(0, 2 * pi))});
    auto rep = verify_kappa_independence(s, n, pairs, Kappa{1}, Kappa{0});
    CHECK(rep.report.violations == 0);
    CHECK(rep.fitted_c > 0.0);
    CHECK(rep.fitted_c < 1.0);
    // ratios stay bounded and settle as points shrink
    CHECK(std::fabs(rep.c_by_scale.back() - rep.c_by_scale[rep.c_by_scale.size() - 2]) < 0.05 * rep.fitted_c);
    CHECK_THROWS_AS(verify_kappa_independence(s, n, pairs, Kappa{0}, Kappa{1}), Error);
}

TEST_CASE("angle triangle inequality between geodesics on every instance") {
    std::vector<SpacePtr> spaces{std::make_shared<ModelSpace>(Kappa{0}), std::make_shared<ModelSpace>(Kappa{1}),
                                 std::make_shared<ModelSpace>(Kappa{-1}), make_tripod(), make_random_tree(15, 42),
                                 make_cone3()};
    for (const auto& sp : spaces) {
        CAPTURE(sp->kind());
        CounterRng rng(8);
        int done = 0;
        for (int i = 0; i < 200 && done < 60; ++i) {
            Point x = sp->sample(rng);
            Point y[3] = {sp->sample(rng), sp->sample(rng), sp->sample(rng)};
            bool bad = false;
            for (auto& p : y)
                if (sp->dist(x, p) < 1e-3) bad = true;
            if (bad || !(sp->regular_radius(x) > 1e-3)) continue;
            ++done;
            auto a02 = geodesic_angle(*sp, x, y[0], y[2]);
            auto a01 = geodesic_angle(*sp, x, y[0], y[1]);
            auto a12 = geodesic_angle(*sp, x, y[1], y[2]);
            CHECK(a02.value <= a01.value + a12.value + 1e-9);
            CHECK(std::fabs(a02.value - *a02.closed_form) < 1e-7);
        }
        CHECK(done >= 30);
    }
}
