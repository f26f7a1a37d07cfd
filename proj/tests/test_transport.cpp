#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hcat/error.hpp"
#include "hcat/instances.hpp"
#include "hcat/transport.hpp"

using namespace hcat;

namespace {

GraphPtr unit_edge() { return std::make_shared<MetricGraph>(GraphGeometry(2, {{0, 1, 1.0}}), std::vector<double>{1.0}); }

// hub 0, leaves 1 (A), 2 (B), 3 (C)
GraphPtr tripod(double a = 1, double b = 1, double c = 1) {
    return std::make_shared<MetricGraph>(GraphGeometry(4, {{0, 1, a}, {0, 2, b}, {0, 3, c}}), std::vector<double>{});
}

// Independent value of int g b(f) dmu for piecewise-linear data: on each
// piece g is affine and f has a constant slope, so the trapezoid rule with
// the chord slope of f is exact.
double chord_current(const EdgeFlow& b, const GraphFunction& g, const GraphFunction& f) {
    const auto& G = *b.graph();
    long double t = 0;
    for (int e = 0; e < G.edge_count(); ++e) {
        std::vector<double> cuts{0.0};
        for (double k : g.kinks(e)) cuts.push_back(k);
        for (double k : f.kinks(e)) cuts.push_back(k);
        cuts.push_back(G.length(e));
        std::sort(cuts.begin(), cuts.end());
        long double s = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], c = cuts[i + 1];
            if (c - a < 1e-15) continue;
            long double chord = ((long double)f.at(e, c) - f.at(e, a)) / (c - a);
            s += chord * 0.5L * ((long double)g.at(e, a) + g.at(e, c)) * (c - a);
        }
        t += b.value(e) * s;
    }
    return double(t);
}

}  // namespace

TEST_CASE("derivation norms") {
    auto g = unit_edge();
    EdgeFlow b(g, {1.0});
    CHECK(derivation_norm(b, {0, 0, 0.5}) == 1.0);
    CHECK(derivation_norm(EdgeFlow(g, {0.0}), {0, 0, 0.5}) == 0.0);
    CHECK(derivation_norm_via_landmarks(b, {0, 0, 0.3}, {g->geometry().vertex_pos(0), g->geometry().vertex_pos(1)}) == 1.0);
    CHECK_THROWS_AS(derivation_norm(b, g->geometry().vertex_pos(0)), Error);
    try {
        b.apply(constant_function(1), g->geometry().vertex_pos(1));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NodePoint);
    }

    auto t = tripod();
    EdgeFlow ab(t, {-1.0, 1.0, 0.0});  // A -> hub -> B
    auto leafC = distance_to(t, t->geometry().vertex_pos(3));
    CHECK(ab.apply(leafC, {2, 0, 0.5}) == 0.0);
    CHECK(std::fabs(ab.apply(leafC, {0, 0, 0.5})) == 1.0);
    CHECK(std::fabs(ab.apply(leafC, {1, 0, 0.5})) == 1.0);
    std::vector<GraphPos> leaves{t->geometry().vertex_pos(1), t->geometry().vertex_pos(2), t->geometry().vertex_pos(3)};
    for (int e = 0; e < 3; ++e)
        CHECK(derivation_norm_via_landmarks(ab, {e, 0, 0.4}, leaves) == derivation_norm(ab, {e, 0, 0.4}));

    // spread landmarks approach the norm from below
    auto rg = random_metric_graph(12, 4, 3);
    auto rb = random_flow(rg, 3);
    CounterRng rng(4);
    std::vector<GraphPos> marks;
    for (int i = 0; i < 40; ++i) marks.push_back(rg->space()->pos(rg->space()->sample(rng)));
    for (int e = 0; e < rg->edge_count(); ++e) {
        GraphPos x{e, 0, 0.37 * rg->length(e)};
        double exact = derivation_norm(rb, x);
        double est = derivation_norm_via_landmarks(rb, x, marks);
        CHECK(est <= exact + 1e-12);
        CHECK(est >= exact - 5e-2);
    }
}

TEST_CASE("Leibniz rule") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = random_metric_graph(6 + seed % 5, seed % 4, seed);
        auto b = random_flow(g, seed);
        auto f = random_pl_function(g, seed * 2 + 1);
        auto h = random_pl_function(g, seed * 2 + 2);
        auto fh = product(f, h);
        CounterRng rng(seed, 9);
        for (int i = 0; i < 100; ++i) {
            int e = static_cast<int>(rng.index(g->edge_count()));
            double s = rng.uniform(0.01, 0.99) * g->length(e);
            GraphPos x{e, 0, s};
            double lhs = b.apply(fh, x);
            double rhs = f.at(e, s) * b.apply(h, x) + h.at(e, s) * b.apply(f, x);
            CHECK(std::fabs(lhs - rhs) <= 1e-12);
            // centred difference, exact for the quadratic pieces of the product
            double d = 1e-5;
            double fd = (fh.at(e, s + d) - fh.at(e, s - d)) / (2 * d) * b.value(e) / g->density(e);
            bool near_kink = false;
            for (double k : fh.kinks(e)) near_kink |= std::fabs(k - s) < 2e-5;
            if (!near_kink) CHECK(std::fabs(lhs - fd) < 1e-9);
        }
    }
}

TEST_CASE("currents of derivations") {
    auto g = unit_edge();
    EdgeFlow b(g, {1.0});
    auto T = current_from_derivation(b);
    CHECK(std::fabs(T(constant_function(1), distance_to(g, g->geometry().vertex_pos(0))) - 1.0) < 1e-15);
    auto Z = current_from_derivation(EdgeFlow(g, {0.0}));
    CHECK(Z.mass() == 0.0);
    CHECK(Z(constant_function(1), distance_to(g, g->geometry().vertex_pos(0))) == 0.0);

    auto t = tripod();
    EdgeFlow ab(t, {-1.0, 1.0, 0.0});
    auto Tab = current_from_derivation(ab);
    // f = dist to leaf A grows along the flow on both legs: T = f(B) - f(A) = 2
    CHECK(std::fabs(Tab(constant_function(1), distance_to(t, t->geometry().vertex_pos(1))) - 2.0) < 1e-15);
    CHECK(std::fabs(Tab(constant_function(1), distance_to(t, t->geometry().vertex_pos(0)))) < 1e-15);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto G = random_metric_graph(8, 3, seed + 40);
        auto bb = random_flow(G, seed);
        auto cur = current_from_derivation(bb);
        CHECK(cur.mass_identity_defect() < 1e-12);
        for (int k = 0; k < 3; ++k) {
            auto gg = random_pl_function(G, seed * 10 + k);
            auto ff = random_pl_function(G, seed * 10 + k + 5);
            CHECK(std::fabs(cur(gg, ff) - chord_current(bb, gg, ff)) < 1e-12);
            // boundary pairing against -div
            double lhs = cur(constant_function(1), ff);
            auto div = bb.divergence();
            double rhs = 0;
            for (int v = 0; v < G->node_count(); ++v) rhs -= ff.value(G->geometry(), G->geometry().vertex_pos(v)) * div[v];
            CHECK(std::fabs(lhs - rhs) < 1e-12);
            // mass bound |T(g, f)| <= Lip(f) int |g| d||T||, with Lip(dist) = 1
            auto dist = distance_to(G, G->geometry().vertex_pos(k));
            double bound = 0;
            auto md = cur.mass_density();
            for (int e = 0; e < G->edge_count(); ++e) {
                auto absg = product(gg, gg);
                bound += md[e] * std::sqrt(edge_integral(e, 0, G->length(e), absg, smooth_function(
                    [](int, double s) { return s; }, [](int, double) { return 1.0; })) * G->length(e));
            }
            CHECK(std::fabs(cur(gg, dist)) <= bound + 1e-12);
        }
    }

    // smooth integrands go through the adaptive rule
    auto sinf = smooth_function([](int, double s) { return std::sin(s); }, [](int, double s) { return std::cos(s); });
    CHECK(std::fabs(edge_integral(0, 0.0, 1.0, sinf, sinf) - 0.5 * std::sin(1.0) * std::sin(1.0)) < 1e-13);
    CHECK(std::fabs(edge_integral(0, 1.0, 0.0, sinf, sinf) + 0.5 * std::sin(1.0) * std::sin(1.0)) < 1e-13);
}

TEST_CASE("curve currents") {
    auto t = tripod(1, 2, 3);
    auto path = make_flow_path(t, 1, {0, 1}, 1.0);
    auto dh = distance_to(t, t->geometry().vertex_pos(0));
    CHECK(std::fabs(curve_current_eval(*path.curve, constant_function(1), dh) - (-1.0 + 2.0)) < 1e-14);
    // boundary identity on random functions
    auto f = random_pl_function(t, 5);
    double f0 = f.value(t->geometry(), t->geometry().vertex_pos(1));
    double f1 = f.value(t->geometry(), t->geometry().vertex_pos(2));
    CHECK(std::fabs(curve_current_eval(*path.curve, constant_function(1), f) - (f1 - f0)) < 1e-14);
    // closed curve
    auto tri = std::make_shared<MetricGraph>(GraphGeometry(3, {{0, 1, 1}, {1, 2, 1.5}, {2, 0, 0.7}}), std::vector<double>{});
    auto loop = make_flow_path(tri, 0, {0, 1, 2}, 1.0);
    CHECK(loop.end == loop.start);
    CHECK(std::fabs(curve_current_eval(*loop.curve, constant_function(1), random_pl_function(tri, 2))) < 1e-14);
    // the generic scheme agrees with exact integration
    auto g = random_pl_function(t, 8);
    auto sp = t->space();
    auto gp = [&](const Point& p) { return g.value(t->geometry(), sp->pos(p)); };
    auto fp = [&](const Point& p) { return f.value(t->geometry(), sp->pos(p)); };
    auto lim = curve_current_eval(*path.curve, gp, fp);
    CHECK(std::fabs(lim.value - curve_current_eval(*path.curve, g, f)) < 1e-6);

    auto e = std::make_shared<ModelSpace>(Kappa{0});
    SampledCurve seg(e, {0, 1}, {e->make({Kappa{0}, {0, 0, 0}}), e->make({Kappa{0}, {1, 0, 0}})});
    auto x = [](const Point& p) { return p.c[0]; };
    CHECK(std::fabs(curve_current_eval(seg, [](const Point&) { return 1.0; }, [](const Point& p) { return 2.5 * p.c[0]; }).value - 2.5) < 1e-12);
    CHECK(std::fabs(curve_current_eval(seg, x, x).value - 0.5) < 1e-9);
}

TEST_CASE("superposition examples") {
    auto g = unit_edge();
    auto d = superpose(EdgeFlow(g, {1.0}));
    REQUIRE(d.paths.size() == 1);
    CHECK(d.paths[0].weight == 1.0);
    CHECK(d.cycles.empty());

    // Y graph: leaves 1, 2 feed leaf 3 through hub 0
    auto y = tripod();
    auto dy = superpose(EdgeFlow(y, {-0.3, -0.7, 1.0}));
    REQUIRE(dy.paths.size() == 2);
    CHECK(dy.paths[0].weight == 0.7);
    CHECK(dy.paths[1].weight == 0.3);
    auto m = dy.edge_mass();
    CHECK(m[0] == 0.3);
    CHECK(m[1] == 0.7);
    CHECK(std::fabs(m[2] - 1.0) < 1e-15);

    auto tri = std::make_shared<MetricGraph>(GraphGeometry(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}), std::vector<double>{});
    EdgeFlow circ(tri, {0.5, 0.5, 0.5});
    auto dc = superpose(circ);
    CHECK(dc.paths.empty());
    REQUIRE(dc.cycles.size() == 1);
    CHECK(dc.cycles[0].weight == 0.5);
    for (double x : current_from_derivation(circ).boundary()) CHECK(x == 0.0);
}

TEST_CASE("superposition on random flows") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto g = random_metric_graph(5 + seed % 10, seed % 6, seed + 1000);
        auto b = random_flow(g, seed + 7);
        auto T = current_from_derivation(b);
        for (TieBreak tb : {TieBreak::Lexicographic, TieBreak::Reverse}) {
            auto d = superpose(b, tb);
            auto mass = d.edge_mass(), flow = d.edge_flow();
            auto md = T.mass_density();
            for (int e = 0; e < g->edge_count(); ++e) {
                CHECK(std::fabs(mass[e] - md[e]) <= 1e-12);
                CHECK(std::fabs(flow[e] - b.value(e)) <= 1e-12);
            }
            auto bd = d.boundary(), tb2 = T.boundary();
            for (int v = 0; v < g->node_count(); ++v) CHECK(std::fabs(bd[v] - tb2[v]) <= 1e-12);
            // no cancellation: total mass of the path measure equals the mass of T
            double pm = 0;
            for (const auto* p : d.all()) {
                pm += p->weight * length(*p->curve);
                CHECK(p->length > 0);
                for (double s : speed_profile(*p->curve).speeds) CHECK(std::fabs(s - p->length) < 1e-12 * p->length);
            }
            CHECK(std::fabs(pm - T.mass()) < 1e-11);
            for (int k = 0; k < 20; ++k) {
                auto gg = random_pl_function(g, seed * 100 + k);
                auto ff = random_pl_function(g, seed * 100 + k + 50);
                CHECK(std::fabs(T(gg, ff) - d.current(gg, ff)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("L2 norms of derivations") {
    auto g = unit_edge();
    CHECK(derivation_norm_22(EdgeFlow(g, {0.0})).l2_norm == 0.0);
    CHECK(derivation_norm_22(EdgeFlow(g, {0.0})).div_l2 == 0.0);
    CHECK(derivation_norm_22(EdgeFlow(g, {1.0})).l2_norm == 1.0);
    auto t = tripod();
    auto n = derivation_norm_22(EdgeFlow(t, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
    CHECK(std::fabs(n.l2_norm - 1 / std::sqrt(3.0)) < 1e-15);
    CHECK(std::fabs(n.div_l2 - std::sqrt(1 + 3.0 / 9)) < 1e-15);
    // density enters as length / density
    auto w = std::make_shared<MetricGraph>(GraphGeometry(2, {{0, 1, 2.0}}), std::vector<double>{4.0});
    CHECK(std::fabs(derivation_norm_22(EdgeFlow(w, {3.0})).l2_norm - std::sqrt(9 * 2.0 / 4)) < 1e-15);
}
