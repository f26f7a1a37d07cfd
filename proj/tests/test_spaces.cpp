#include <cmath>
#include <numbers>
#include <tuple>

#include "doctest.h"
#include "hcat/error.hpp"
#include "hcat/instances.hpp"
#include "hcat/space_ops.hpp"
#include "oracles.hpp"

using namespace hcat;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<SpacePtr> all_instances() {
    return {std::make_shared<ModelSpace>(Kappa{0}), std::make_shared<ModelSpace>(Kappa{1}),
            std::make_shared<ModelSpace>(Kappa{-1}), make_tripod(), make_random_tree(15, 42),
            make_cone3(), make_tripod_cone()};
}

}  // namespace

TEST_CASE("documented distances") {
    auto tri = make_tripod();
    Point p = tri->on_edge(0, 0.4), q = tri->on_edge(1, 0.7);
    CHECK(std::fabs(tri->dist(p, q) - 1.1) < 1e-15);

    auto cone = make_tripod_cone();
    Point x1 = cone->make(1, {-1, 0, 0}), y1 = cone->make(1, {-1, 1, 0});
    CHECK(std::fabs(cone->dist(x1, y1) - 2.0) < 1e-15);
    CHECK(std::fabs(cone->dist(cone->make(2, {-1, 0, 0}), cone->make(3, {-1, 0, 0})) - 1.0) < 1e-15);
}

TEST_CASE("documented midpoints") {
    ModelSpace e(Kappa{0});
    Point m = e.midpoint(e.make({Kappa{0}, {0, 0, 0}}), e.make({Kappa{0}, {2, 0, 0}}));
    CHECK(m.c[0] == 1.0);
    CHECK(m.c[1] == 0.0);

    auto tri = make_tripod();
    Point hub = tri->midpoint(tri->on_edge(0, 0.8), tri->on_edge(1, 0.8));
    CHECK(tri->dist(hub, tri->vertex(0)) == 0.0);

    ModelSpace s(Kappa{1});
    Point a = s.polar(pi / 2, 0.0), b = s.polar(pi / 2, pi / 2);
    Point mid = s.midpoint(a, b);
    CHECK(std::fabs(mid.c[2]) < 1e-15);
    CHECK(std::fabs(std::atan2(mid.c[1], mid.c[0]) - pi / 4) < 1e-14);
}

TEST_CASE("metric axioms and constant speed geodesics on every instance") {
    for (const auto& sp : all_instances()) {
        CAPTURE(sp->kind());
        CounterRng rng(1234, sp->id() % 7);
        for (int i = 0; i < 300; ++i) {
            Point x = sp->sample(rng), y = sp->sample(rng), z = sp->sample(rng);
            double dxy = sp->dist(x, y), dyx = sp->dist(y, x);
            CHECK(std::fabs(dxy - dyx) <= 1e-12);
            CHECK(sp->dist(x, x) <= 1e-12);
            CHECK(dxy <= sp->dist(x, z) + sp->dist(z, y) + 1e-12);
            double t = rng.uniform(), s = rng.uniform();
            Point gt = sp->geodesic(x, y, t), gs = sp->geodesic(x, y, s);
            CHECK(std::fabs(sp->dist(gt, gs) - std::fabs(t - s) * dxy) <= 1e-10);
            CHECK(sp->dist(sp->geodesic(x, y, 0.0), x) <= 1e-12);
            CHECK(sp->dist(sp->geodesic(x, y, 1.0), y) <= 1e-12);
            // r_y >= r_x - d(x,y)
            CHECK(sp->cat_radius(y) >= sp->cat_radius(x) - dxy - 1e-12);
        }
    }
}

TEST_CASE("graph distances match a Bellman-Ford oracle") {
    CounterRng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + static_cast<int>(rng.index(8));
        std::vector<GraphEdge> edges;
        std::vector<std::tuple<int, int, double>> raw;
        for (int v = 1; v < n; ++v) {
            int u = static_cast<int>(rng.index(v));
            double L = rng.uniform(0.2, 2.0);
            edges.push_back({u, v, L});
            raw.emplace_back(u, v, L);
        }
        for (int extra = 0; extra < 2; ++extra) {
            int u = static_cast<int>(rng.index(n)), v = static_cast<int>(rng.index(n));
            if (u == v) continue;
            double L = rng.uniform(0.5, 3.0);
            edges.push_back({u, v, L});
            raw.emplace_back(u, v, L);
        }
        GraphSpace g(GraphGeometry(n, edges));
        auto ref = oracle::graph_apsp(n, raw);
        for (int i = 0; i < 50; ++i) {
            int e1 = static_cast<int>(rng.index(edges.size())), e2 = static_cast<int>(rng.index(edges.size()));
            double s1 = rng.uniform() * edges[e1].length, s2 = rng.uniform() * edges[e2].length;
            // Oracle: insert the two points as new vertices and rerun.
            auto r2 = raw;
            int P = n, Q = n + 1;
            auto split = [&](int e, double s, int id) {
                auto [u, v, L] = raw[e];
                r2.emplace_back(u, id, s);
                r2.emplace_back(id, v, L - s);
            };
            split(e1, s1, P);
            split(e2, s2, Q);
            if (e1 == e2) r2.emplace_back(P, Q, std::fabs(s1 - s2));
            double want = oracle::graph_apsp(n + 2, r2)[P][Q];
            double got = g.dist(g.on_edge(e1, s1), g.on_edge(e2, s2));
            CHECK(std::fabs(got - want) < 1e-12);
        }
        (void)ref;
    }
}

TEST_CASE("cone distances match planar unrolling") {
    auto cone = make_cone3();
    CounterRng rng(5);
    for (int i = 0; i < 200; ++i) {
        Point p = cone->sample(rng), q = cone->sample(rng);
        double th = cone->base().dist(cone->base_pos(p), cone->base_pos(q));
        double want = oracle::cone_dist(cone->radius(p), cone->radius(q), th);
        CHECK(std::fabs(cone->dist(p, q) - want) < 1e-12);
    }
}

TEST_CASE("cone geodesics from the apex never branch") {
    auto cone = make_cone3();
    CounterRng rng(8);
    Point o = cone->apex();
    for (int i = 0; i < 100; ++i) {
        Point a = cone->sample(rng), b = cone->sample(rng);
        if (cone->dist(a, b) < 1e-9) continue;
        for (double t : {0.1, 0.37, 0.5, 0.9, 1.0}) {
            Point ga = cone->geodesic(o, a, t), gb = cone->geodesic(o, b, t);
            CHECK(cone->dist(ga, gb) > 0.0);
        }
    }
    CHECK(cone->nonbranching_from(o));
}

TEST_CASE("midpoint certificates") {
    ModelSpace e(Kappa{0});
    Point x = e.make({Kappa{0}, {0, 0, 0}}), y = e.make({Kappa{0}, {2, 0, 0}});
    Point m = e.make({Kappa{0}, {1, 0.1, 0}});
    auto c = certify_midpoint(e, x, y, m, 0.1);
    CHECK(c.bound == doctest::Approx(0.1));
    CHECK(std::fabs(c.deviation - 0.1) < 1e-15);
    CHECK(c.holds);

    CHECK(std::fabs(midpoint_constant(Kappa{1}, 1.0) - 1.0 / std::sqrt(std::cos(0.5))) < 1e-15);
    CHECK(midpoint_constant(Kappa{-1}, 5.0) == 1.0);

    CHECK_THROWS_AS(certify_midpoint(e, x, y, e.make({Kappa{0}, {1, 0.5, 0}}), 0.1), Error);

    // Tripod: scan candidates around the hub and check every certificate.
    auto tri = make_tripod();
    Point a = tri->on_edge(0, 0.5), b = tri->on_edge(1, 0.5);
    auto hub = certify_midpoint(*tri, a, b, tri->vertex(0));
    CHECK(hub.epsilon == 0.0);
    CHECK(hub.holds);
    for (int leg = 0; leg < 3; ++leg)
        for (int k = 1; k <= 40; ++k) {
            Point cand = tri->on_edge(leg, 0.01 * k);
            auto cert = certify_midpoint(*tri, a, b, cand);
            CHECK(cert.holds);
        }
}

TEST_CASE("positive curvature midpoint certificates on the sphere") {
    ModelSpace s(Kappa{1});
    CounterRng rng(31);
    for (int i = 0; i < 200; ++i) {
        Point x = s.sample(rng), y = s.sample(rng);
        Point m = s.midpoint(x, y);
        Point cand = s.exp(m, rng.uniform(0, 2 * pi), rng.uniform(0, 0.05));
        auto cert = certify_midpoint(s, x, y, cand);
        CHECK(cert.holds);
    }
}

TEST_CASE("contraction ratio") {
    ModelSpace e(Kappa{0});
    CounterRng rng(41);
    for (int i = 0; i < 20; ++i) {
        Point x = e.sample(rng), y = e.sample(rng), z = e.sample(rng);
        CHECK(std::fabs(contraction_ratio(e, x, y, z, rng.uniform(0.1, 0.9)) - 1.0) < 1e-12);
    }
    auto tri = make_tripod();
    CHECK(std::fabs(contraction_ratio(*tri, tri->vertex(0), tri->on_edge(0, 0.7), tri->on_edge(2, 0.3), 0.4) - 1.0) < 1e-14);

    // Dense sampling over B_0.3 on the unit sphere: ratios sit just above 1.
    ModelSpace s(Kappa{1});
    Point x = s.polar(0, 0);
    double lo = 10, hi = 0;
    for (int i = 0; i < 2000; ++i) {
        Point y = s.polar(rng.uniform(0.01, 0.3), rng.uniform(0, 2 * pi));
        Point z = s.polar(rng.uniform(0.01, 0.3), rng.uniform(0, 2 * pi));
        if (s.dist(y, z) < 1e-3) continue;
        double r = contraction_ratio(s, x, y, z, 0.5);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo >= 1.0 - 1e-12);
    CHECK(hi <= 1.05);
}

TEST_CASE("directions and shooting agree with geodesics") {
    for (const auto& sp : all_instances()) {
        CAPTURE(sp->kind());
        CounterRng rng(99, sp->id() % 5);
        int done = 0;
        for (int i = 0; i < 400 && done < 100; ++i) {
            Point x = sp->sample(rng), y = sp->sample(rng);
            double d = sp->dist(x, y);
            double h = std::min({sp->regular_radius(x), d}) * 0.25;
            if (!(h > 1e-6)) continue;
            ++done;
            GraphPos dir = sp->direction(x, y);
            Point z = sp->shoot(x, dir, h);
            Point w = sp->geodesic(x, y, h / d);
            CHECK(sp->dist(z, w) < 1e-9);
            auto T = sp->tangent_cone(x);
            // direction of z seen from x equals the direction of y
            GraphPos dz = sp->direction(x, z);
            CHECK(T->base().dist(dz, dir) < 1e-9);
        }
        CHECK(done > 20);
    }
}

TEST_CASE("tangent cone shapes") {
    auto tri = make_tripod();
    CHECK(tri->tangent_cone(tri->vertex(0))->base().vertex_count() == 3);
    CHECK(tri->tangent_cone(tri->on_edge(0, 0.5))->base().vertex_count() == 2);
    auto cone = make_cone3();
    CHECK(cone->tangent_cone(cone->apex()).get() == cone.get());
    CHECK(cone->tangent_cone(cone->make(1, {-1, 0, 0}))->base().edges().size() == 2);
    CHECK(std::fabs(cone->tangent_cone(cone->make(1, {0, 0, 0.5}))->base().girth() - 2 * pi) < 1e-12);
    ModelSpace h(Kappa{-1});
    CHECK(h.tangent_cone(h.polar(0.3, 1))->base().edges().size() == 1);
}

TEST_CASE("cross-space use is rejected") {
    auto t1 = make_tripod(), t2 = make_tripod();
    try {
        t1->dist(t1->vertex(0), t2->vertex(1));
        FAIL("expected CrossSpace");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CrossSpace);
    }
}
