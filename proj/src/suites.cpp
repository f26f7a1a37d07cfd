#include "hcat/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hcat/comparison.hpp"
#include "hcat/counterexample.hpp"
#include "hcat/curves.hpp"
#include "hcat/error.hpp"
#include "hcat/instances.hpp"
#include "hcat/io.hpp"
#include "hcat/parallel.hpp"
#include "hcat/tangent.hpp"

namespace hcat {

namespace {

constexpr double kPi = std::numbers::pi;

double pick(double given, double fallback) { return given > 0 ? given : fallback; }
int pick(int given, int fallback) { return given > 0 ? given : fallback; }

double max_of(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    return v.empty() ? 0.0 : m;
}

// The negative control either runs as an ordinary (failing) check, or, in a
// normal run, is recorded as detected when its slack exceeds the tolerance.
void control(Report& r, const SuiteOptions& o, const std::string& name, double slack, double tol) {
    if (o.negative_control)
        r.check("control." + name, slack, tol);
    else
        r.check("control." + name + ".detected", slack > tol ? 0.0 : 1.0, 0.0);
}

template <class F>
void guarded(Report& r, const std::string& name, F&& f) {
    try {
        f();
    } catch (const Error& e) {
        r.error(name, e.what());
    }
}

// Random tangent vector at x: sampled target inside the CAT ball, random scale.
TangentVector random_vector(SpacePtr s, const Point& x, CounterRng& rng) {
    for (int i = 0; i < 200; ++i) {
        Point y = s->sample(rng);
        double d = s->dist(x, y);
        if (d < 1e-3 || d >= s->cat_radius(x)) continue;
        return make_vector(s, x, y, rng.uniform(0.2, 2.0));
    }
    fail(ErrorCode::SamplingFailed, "no admissible tangent target");
}

Point good_base(SpacePtr s, CounterRng& rng) {
    for (int i = 0; i < 1000; ++i) {
        Point x = s->sample(rng);
        if (s->regular_radius(x) > 0.02) return x;
    }
    fail(ErrorCode::SamplingFailed, "no base point with a usable regular radius");
}

std::vector<double> unit_grid(int n) {
    std::vector<double> g;
    for (int i = 1; i <= n; ++i) g.push_back(double(i) / n);
    return g;
}

}  // namespace

std::vector<NamedSpace> bundled_spaces() {
    return {
        {"euclid", std::make_shared<ModelSpace>(Kappa{0}), 0.0},
        {"sphere", std::make_shared<ModelSpace>(Kappa{1}), 1.0},
        {"hyperbolic", std::make_shared<ModelSpace>(Kappa{-1}), -1.0},
        {"tripod", make_tripod(), 0.0},
        {"tree15", make_random_tree(15, 42), 0.0},
        {"cone3", make_cone3(), 0.0},
    };
}

GraphPtr bundled_tree15() { return tree_graph(*make_random_tree(15, 42)); }

std::vector<EdgeFlow> bundled_flows(int count, std::uint64_t seed) {
    std::vector<EdgeFlow> out;
    for (int k = 0; k < count; ++k) {
        std::uint64_t s = seed + k;
        auto g = random_metric_graph(5 + k % 10, k % 6, mix64(s) % 1000000);
        out.push_back(random_flow(g, mix64(s + 77)));
    }
    return out;
}

// ---------------------------------------------------------------- comparison

Report suite_cat(const std::vector<NamedSpace>& spaces, const SuiteOptions& o) {
    Report r("cat");
    double tol = pick(o.tol, 1e-9);
    std::size_t n = pick(o.n, 1000);
    if (o.negative_control) {
        auto rep = verify_cat(ModelSpace(Kappa{1}), Kappa{-1}, n, o.seed, tol);
        r.data()["control"] = {{"samples", rep.samples}, {"violations", rep.violations}};
        control(r, o, "sphere_vs_kappa_-1", rep.worst_slack, tol);
        return r;
    }
    for (const auto& s : spaces) {
        guarded(r, s.name + ".cat", [&] {
            auto rep = verify_cat(*s.space, Kappa{s.kappa}, n, o.seed, tol);
            r.check(s.name + ".cat", rep.worst_slack, tol);
            r.data()[s.name] = {{"kappa", s.kappa}, {"samples", rep.samples}, {"violations", rep.violations},
                                {"worst_slack", rep.worst_slack}};
        });
    }
    auto neg = verify_cat(ModelSpace(Kappa{1}), Kappa{-1}, n, o.seed, tol);
    r.data()["control"] = {{"samples", neg.samples}, {"violations", neg.violations}};
    control(r, o, "sphere_vs_kappa_-1", neg.worst_slack, tol);
    return r;
}

Report suite_angles(const std::vector<NamedSpace>& spaces, const SuiteOptions& o) {
    Report r("angles");
    double tol = pick(o.tol, 1e-9);
    int n = pick(o.n, 20);
    auto grid = unit_grid(20);
    auto sphere = std::make_shared<ModelSpace>(Kappa{1});
    auto sphere_control = [&] {
        auto rep = verify_angle_monotonicity(*sphere, Kappa{0}, sphere->polar(0, 0), sphere->polar(1.2, 0),
                                             sphere->polar(1.2, 2.0), grid, grid, tol);
        return rep.worst_slack;
    };
    if (o.negative_control) {
        control(r, o, "sphere_vs_kappa_0.monotone", sphere_control(), tol);
        return r;
    }
    for (const auto& s : spaces) {
        guarded(r, s.name + ".monotone", [&] {
            std::vector<double> slack(n);
            std::vector<std::pair<Point, Point>> pairs(n);
            std::vector<Point> bases(n);
            parallel_for(n, [&](std::size_t i) {
                CounterRng rng(o.seed, 0x616e + i);
                Point x = good_base(s.space, rng);
                auto v = random_vector(s.space, x, rng), w = random_vector(s.space, x, rng);
                auto rep = verify_angle_monotonicity(*s.space, Kappa{s.kappa}, x, v.target, w.target, grid, grid,
                                                     tol);
                slack[i] = rep.worst_slack;
                bases[i] = x;
                pairs[i] = {v.target, w.target};
            });
            r.check(s.name + ".monotone", max_of(slack), tol);
            // bounded ratio |angle_k - angle_(k-1)| / (d1 d2) under shrinking, around the first base
            std::vector<std::pair<Point, Point>> local;
            for (int i = 0; i < n; ++i) {
                if (s.space->dist(bases[0], pairs[i].first) >= s.space->cat_radius(bases[0])) continue;
                if (s.space->dist(bases[0], pairs[i].second) >= s.space->cat_radius(bases[0])) continue;
                local.push_back(pairs[i]);
            }
            auto ind = verify_kappa_independence(*s.space, bases[0], local, Kappa{s.kappa}, Kappa{s.kappa - 1}, 5,
                                                 tol);
            r.check(s.name + ".kappa_independence_violations", double(ind.report.violations), 0.0);
            r.data()[s.name] = {{"configurations", n}, {"fitted_c", ind.fitted_c}, {"c_by_scale", ind.c_by_scale}};
        });
    }
    control(r, o, "sphere_vs_kappa_0.monotone", sphere_control(), tol);
    return r;
}

// -------------------------------------------------------------- cone calculus

namespace {

struct CalcSample {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, g = 0;
    double fv_fd = 0, fv_ip = 0;
    double four_point = -1;
};

// One-sided difference quotient of d(., y) along v, extrapolated.
double fd_first_variation(SpacePtr s, const TangentVector& v, const Point& y) {
    const Point& x = v.base;
    double dxy = s->dist(x, y), dv = s->dist(x, v.target);
    double h0 = std::min({dxy, dv, s->regular_radius(x), s->cat_radius(x)}) / 16;
    LimitOptions lo;
    lo.noise = 1e-16 * (1 + dxy);
    auto est = richardson_limit(
        [&](double h) { return (s->dist(s->geodesic(x, v.target, h / dv), y) - dxy) / h; }, h0, lo);
    return -dxy * est.value * norm(v);
}

CalcSample calc_sample(SpacePtr sp, std::uint64_t seed, std::size_t i, bool four, bool fv) {
    CounterRng rng(seed, 0x63c + i);
    CalcSample out;
    Point x = good_base(sp, rng);
    auto v = random_vector(sp, x, rng), w = random_vector(sp, x, rng);
    double lam = rng.uniform(0.1, 3.0);
    double nv = norm(v), nw = norm(w);
    double d = cone_metric(v, w).value;
    double ip = scalar_product(v, w);
    auto zero = zero_vector(sp, x);
    out.a = std::fabs(cone_metric(scale(lam, v), zero).value - lam * nv) / (1 + lam * nv);
    double ip_fv = first_variation(v, w.target).value * w.scale;
    out.b = std::fabs(d * d - (nv * nv + nw * nw - 2 * ip_fv)) / (1 + nv * nv + nw * nw);
    double ang = std::min(geodesic_angle(*sp, x, v.target, w.target).value, kPi);
    out.c = std::fabs(ip - nv * nw * std::cos(ang)) / (1 + nv * nw);
    out.d = std::fabs(scalar_product(scale(lam, v), w) - lam * ip) / (1 + lam * nv * nw);
    out.e = std::fabs(ip) - nv * nw;
    double s = norm(oplus(v, w)).value;
    out.g = d * d + s * s - 2 * (nv * nv + nw * nw);
    // equality case on an aligned pair
    auto u = make_vector(sp, x, sp->geodesic(x, v.target, 0.5), rng.uniform(0.1, 2.0));
    double nu = norm(u);
    if (std::fabs(scalar_product(v, u) - nv * nu) <= 1e-8)
        out.f = cone_metric(scale(nu, v), scale(nv, u)).value;
    else
        out.f = 1.0;  // an aligned pair must saturate Cauchy-Schwarz
    if (four) {
        auto c3 = random_vector(sp, x, rng);
        auto mid = scale(0.5, oplus(w, c3));
        double lhs = std::pow(cone_metric(mid, v).value, 2);
        double ab = cone_metric(v, w).value, ac = cone_metric(v, c3).value, bc = cone_metric(w, c3).value;
        out.four_point = lhs - (0.5 * ab * ab + 0.5 * ac * ac - 0.25 * bc * bc);
    }
    if (fv) {
        auto eta = random_vector(sp, x, rng);
        double exact = scalar_product(v, make_vector(sp, x, eta.target, 1.0));
        double fd = fd_first_variation(sp, v, eta.target);
        out.fv_fd = std::fabs(first_variation(v, eta.target).value - fd);
        out.fv_ip = std::fabs(fd - exact);
    }
    return out;
}

double associativity_defect() {
    auto tri = make_tripod();
    Point hub = tri->vertex(0);
    auto a = make_vector(tri, hub, tri->vertex(1));
    auto b = make_vector(tri, hub, tri->vertex(2));
    auto c = make_vector(tri, hub, tri->vertex(3));
    auto left = oplus(to_vector(oplus(a, b)), c);
    auto right = oplus(a, to_vector(oplus(b, c)));
    return cone_metric(left, right).value;
}

}  // namespace

Report suite_cone_calc(const std::vector<NamedSpace>& spaces, const SuiteOptions& o) {
    Report r("cone-calc");
    double tol = pick(o.tol, 1e-8);
    int n = pick(o.n, 200);
    if (o.negative_control) {
        control(r, o, "tripod_oplus_associative", associativity_defect(), tol);
        return r;
    }
    for (const auto& s : spaces) {
        guarded(r, s.name + ".cone_calc", [&] {
            std::vector<CalcSample> out(n);
            parallel_for(n, [&](std::size_t i) { out[i] = calc_sample(s.space, o.seed, i, i < 40, i < 100); });
            auto col = [&](double CalcSample::*m, int limit) {
                std::vector<double> v;
                for (int i = 0; i < std::min(n, limit); ++i) v.push_back(out[i].*m);
                return max_of(v);
            };
            r.check(s.name + ".norm_homogeneity", col(&CalcSample::a, n), tol);
            r.check(s.name + ".polarisation", col(&CalcSample::b, n), tol);
            r.check(s.name + ".angle_cosine", col(&CalcSample::c, n), tol);
            r.check(s.name + ".pairing_homogeneity", col(&CalcSample::d, n), tol);
            r.check(s.name + ".cauchy_schwarz", col(&CalcSample::e, n), tol);
            r.check(s.name + ".equality_case", col(&CalcSample::f, n), 1e-6);
            r.check(s.name + ".oplus_parallelogram", col(&CalcSample::g, n), tol);
            r.check(s.name + ".tangent_cat0_four_point", col(&CalcSample::four_point, 40), 1e-7);
            r.check(s.name + ".first_variation_vs_fd", col(&CalcSample::fv_fd, 100), 1e-7);
            r.check(s.name + ".fd_vs_scalar_product", col(&CalcSample::fv_ip, 100), 1e-7);
        });
    }
    control(r, o, "tripod_oplus_associative", associativity_defect(), tol);
    return r;
}

// --------------------------------------------------------------------- curves

namespace {

// Sampled curve through a smooth one-parameter family of points: the
// geodesic fan from x to a geodesic [y, z], evaluated at 64 + 1 times.
SampledCurve smooth_curve(SpacePtr s, CounterRng& rng) {
    Point x = good_base(s, rng);
    auto v = random_vector(s, x, rng), w = random_vector(s, x, rng);
    std::vector<double> ts;
    std::vector<Point> ps;
    const int m = 64;
    for (int i = 0; i <= m; ++i) {
        double t = double(i) / m;
        ts.push_back(t);
        Point on = s->geodesic(v.target, w.target, t);
        ps.push_back(s->geodesic(x, on, 0.5 + 0.3 * std::sin(kPi * t)));
    }
    return SampledCurve(s, ts, ps);
}

double corner_defect() {
    auto e = std::make_shared<ModelSpace>(Kappa{0});
    SampledCurve corner(e, {0, 0.5, 1}, {e->make({Kappa{0}, {0, 0, 0}}), e->make({Kappa{0}, {1, 0, 0}}),
                                         e->make({Kappa{0}, {1, 1, 0}})});
    return check_antipodality(corner, 0.5).defect;
}

}  // namespace

Report suite_curves(const std::vector<NamedSpace>& spaces, const SuiteOptions& o) {
    Report r("curves");
    double tol = pick(o.tol, 1e-6);
    int n = pick(o.n, 50);
    if (o.negative_control) {
        control(r, o, "corner_antipodality", corner_defect(), tol);
        return r;
    }
    for (const auto& s : spaces) {
        guarded(r, s.name + ".antipodality", [&] {
            CounterRng crng(o.seed, 0x6375);
            SampledCurve c = smooth_curve(s.space, crng);
            std::vector<double> defect(n), speed(n);
            parallel_for(n, [&](std::size_t i) {
                CounterRng rng(o.seed, 0x7470 + i);
                double t;
                do t = rng.uniform(0.01, 0.99);
                while (c.is_knot(t) || std::fabs(t * 64 - std::round(t * 64)) < 1e-6);
                defect[i] = check_antipodality(c, t).defect;
                // one-sided derivative norms reproduce the metric speed
                speed[i] = std::fabs(norm(right_derivative(c, t)) - metric_speed(c, t)) / (1 + metric_speed(c, t));
            });
            r.check(s.name + ".antipodality", max_of(defect), tol);
            r.check(s.name + ".derivative_norm_is_speed", max_of(speed), 1e-9);
            auto prof = speed_profile(c);
            double sum = 0;
            for (std::size_t i = 0; i < c.segments(); ++i) sum += c.segment_length(i);
            r.check(s.name + ".length", std::fabs(prof.length - sum) / (1 + sum), 1e-12);
        });
    }
    control(r, o, "corner_antipodality", corner_defect(), tol);
    return r;
}

// ----------------------------------------------------------------- barycenter

namespace {

std::vector<Point> probes_for(const DiscreteMeasure& mu, int count, std::uint64_t seed) {
    CounterRng rng(seed, 0x7072);
    const auto& s = mu.space();
    std::vector<Point> out;
    for (int k = 0; k < count; ++k) {
        if (k % 2 == 0) {
            out.push_back(s->sample(rng));
        } else {
            const Point& a = mu.points()[rng.index(mu.size())];
            const Point& b = mu.points()[rng.index(mu.size())];
            out.push_back(s->geodesic(a, b, rng.uniform()));
        }
    }
    return out;
}

double wrong_candidate_slack() {
    auto tri = make_tripod();
    DiscreteMeasure mu(tri, {tri->vertex(1), tri->vertex(2), tri->vertex(3)}, {1, 1, 1});
    // a leg end posing as the barycenter
    return -variance_certificate(mu, tri->vertex(1), probes_for(mu, 100, 1));
}

DiscreteMeasure random_measure(SpacePtr s, CounterRng& rng) {
    int m = 2 + static_cast<int>(rng.index(6));
    std::vector<Point> pts;
    std::vector<double> w;
    for (int i = 0; i < m; ++i) {
        pts.push_back(s->sample(rng));
        w.push_back(rng.uniform(0.1, 2.0));
    }
    return DiscreteMeasure(s, pts, w);
}

}  // namespace

Report suite_barycenter(const SuiteOptions& o) {
    Report r("barycenter");
    double tol = pick(o.tol, 1e-8);
    int probes = pick(o.n, 100);
    if (o.negative_control) {
        control(r, o, "wrong_candidate.variance", wrong_candidate_slack(), 1e-9);
        return r;
    }
    BarycenterOptions bo;
    bo.tol = tol;
    bo.seed = o.seed;

    guarded(r, "tripod.hub", [&] {
        auto tri = make_tripod();
        DiscreteMeasure mu(tri, {tri->vertex(1), tri->vertex(2), tri->vertex(3)}, {1, 1, 1});
        auto res = solve_barycenter(mu, bo);
        r.check("tripod.hub", tri->dist(res.point, tri->vertex(0)), tol);
        r.check("tripod.probe_at_leg_end", std::fabs(variance_certificate(mu, res.point, {tri->vertex(1)}) - 2.0 / 3),
                1e-12);
    });

    guarded(r, "euclid.weighted_mean", [&] {
        auto e = std::make_shared<ModelSpace>(Kappa{0});
        std::vector<double> dev(20);
        parallel_for(20, [&](std::size_t i) {
            CounterRng rng(o.seed, 0x6575 + i);
            auto mu = random_measure(e, rng);
            double x = 0, y = 0;
            for (std::size_t k = 0; k < mu.size(); ++k) {
                x += mu.prob(k) * mu.points()[k].c[0];
                y += mu.prob(k) * mu.points()[k].c[1];
            }
            auto p = solve_barycenter(mu, bo).point;
            dev[i] = std::hypot(p.c[0] - x, p.c[1] - y);
        });
        r.check("euclid.weighted_mean", max_of(dev), 1e-10);
    });

    guarded(r, "edge.quadratic_oracle", [&] {
        // atoms on one edge of a path: the barycenter is the weighted mean offset
        auto g = std::make_shared<GraphSpace>(GraphGeometry(2, {{0, 1, 1.0}}), std::vector<std::string>{"u", "v"});
        DiscreteMeasure ex(g, {g->vertex(0), g->vertex(1)}, {0.7, 0.3});
        double worst = std::fabs(g->pos(solve_barycenter(ex, bo).point).offset - 0.3);
        CounterRng rng(o.seed, 0x7175);
        for (int k = 0; k < 20; ++k) {
            int m = 2 + static_cast<int>(rng.index(4));
            std::vector<Point> pts;
            std::vector<double> w;
            double num = 0, den = 0;
            for (int i = 0; i < m; ++i) {
                double s = rng.uniform(), wt = rng.uniform(0.1, 1.0);
                pts.push_back(g->on_edge(0, s));
                w.push_back(wt);
                num += wt * s;
                den += wt;
            }
            GraphPos p = g->pos(solve_barycenter(DiscreteMeasure(g, pts, w), bo).point);
            double off = p.edge < 0 ? (p.vertex == 0 ? 0.0 : 1.0) : p.offset;
            worst = std::max(worst, std::fabs(off - num / den));
        }
        r.check("edge.quadratic_oracle", worst, tol);
    });

    for (const auto& s : bundled_spaces()) {
        if (s.kappa > 0) continue;
        guarded(r, s.name + ".variance_certificate", [&] {
            std::vector<double> slack(10), uniq(10);
            parallel_for(10, [&](std::size_t i) {
                CounterRng rng(o.seed, 0x7663 + i);
                auto mu = random_measure(s.space, rng);
                auto res = solve_barycenter(mu, bo);
                slack[i] = -variance_certificate(mu, res.point, probes_for(mu, probes, o.seed + i));
                BarycenterOptions alt = bo;
                alt.seed = bo.seed + 1;
                alt.closed_form = false;
                uniq[i] = s.space->dist(res.point, solve_barycenter(mu, alt).point);
            });
            r.check(s.name + ".variance_certificate", max_of(slack), 1e-9);
            r.check(s.name + ".uniqueness", max_of(uniq), 2 * tol);
        });
    }
    control(r, o, "wrong_candidate.variance", wrong_candidate_slack(), 1e-9);
    return r;
}

Report barycenter_report(const DiscreteMeasure& mu, const SuiteOptions& o) {
    Report r("barycenter");
    double tol = pick(o.tol, 1e-8);
    int probes = pick(o.n, 100);
    if (o.negative_control) {
        control(r, o, "wrong_candidate.variance", wrong_candidate_slack(), 1e-9);
        return r;
    }
    guarded(r, "solve", [&] {
        BarycenterOptions bo;
        bo.tol = tol;
        bo.seed = o.seed;
        auto res = solve_barycenter(mu, bo);
        r.check("distance_bound", res.distance_bound, tol);
        r.check("variance_certificate", -variance_certificate(mu, res.point, probes_for(mu, probes, o.seed)), 1e-9);
        BarycenterOptions alt = bo;
        alt.seed = bo.seed + 1;
        alt.closed_form = false;
        r.check("uniqueness", mu.space()->dist(res.point, solve_barycenter(mu, alt).point), 2 * tol);
        auto& d = r.data();
        d["method"] = res.method;
        d["iterations"] = res.iterations;
        d["gap_bound"] = res.gap_bound;
        d["distance_bound"] = res.distance_bound;
        d["point"] = point_to_json(*mu.space(), res.point);
        d["point_text"] = mu.space()->describe(res.point);
        d["second_moment"] = mu.second_moment(res.point);
    });
    return r;
}

// ------------------------------------------------------------------ transport

namespace {

double cancelling_pair_slack() {
    auto g = std::make_shared<MetricGraph>(GraphGeometry(2, {{0, 1, 1.0}}), std::vector<double>{});
    EdgeFlow b(g, {1.0});
    PathDecomposition bad;
    bad.graph = g;
    bad.paths.push_back(make_flow_path(g, 0, {0}, 2.0));
    bad.paths.push_back(make_flow_path(g, 1, {0}, 1.0));
    return std::fabs(bad.edge_mass()[0] - current_from_derivation(b).mass_density()[0]);
}

nlohmann::json path_json(const MetricGraph& g, const FlowPath& p) {
    std::vector<std::string> nodes{g.names()[p.start]};
    int at = p.start;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const auto& e = g.geometry().edges()[p.edges[i]];
        at = p.forward[i] ? e.v : e.u;
        nodes.push_back(g.names()[at]);
    }
    return {{"nodes", nodes}, {"weight", p.weight}, {"length", p.length}};
}

}  // namespace

Report suite_superpose(const std::vector<EdgeFlow>& flows, const SuiteOptions& o) {
    Report r("superpose");
    if (o.negative_control) {
        control(r, o, "cancelling_pair.mass", cancelling_pair_slack(), 1e-12);
        return r;
    }
    double tol = pick(o.tol, 1e-9);
    int pairs = 20;
    std::vector<double> mass(flows.size()), flow(flows.size()), bnd(flows.size()), cur(flows.size()),
        total(flows.size());
    guarded(r, "superpose", [&] {
        parallel_for(flows.size(), [&](std::size_t k) {
            const EdgeFlow& b = flows[k];
            const auto& g = b.graph();
            auto T = current_from_derivation(b);
            auto md = T.mass_density();
            auto tb = T.boundary();
            for (TieBreak tie : {TieBreak::Lexicographic, TieBreak::Reverse}) {
                auto d = superpose(b, tie);
                auto m = d.edge_mass(), f = d.edge_flow(), bd = d.boundary();
                for (int e = 0; e < g->edge_count(); ++e) {
                    mass[k] = std::max(mass[k], std::fabs(m[e] - md[e]));
                    flow[k] = std::max(flow[k], std::fabs(f[e] - b.value(e)));
                }
                for (int v = 0; v < g->node_count(); ++v) bnd[k] = std::max(bnd[k], std::fabs(bd[v] - tb[v]));
                double pm = 0;
                for (const auto* p : d.all()) pm += p->weight * length(*p->curve);
                total[k] = std::max(total[k], std::fabs(pm - T.mass()) / (1 + T.mass()));
                for (int j = 0; j < pairs; ++j) {
                    std::uint64_t s = mix64(o.seed + 1000 * k + j);
                    auto gg = random_pl_function(g, s), ff = random_pl_function(g, s + 1);
                    cur[k] = std::max(cur[k], std::fabs(T(gg, ff) - d.current(gg, ff)));
                }
            }
        });
        r.check("edge_mass", max_of(mass), 1e-12);
        r.check("edge_flow", max_of(flow), 1e-12);
        r.check("boundary", max_of(bnd), 1e-12);
        r.check("total_mass", max_of(total), 1e-12);
        r.check("current_agreement", max_of(cur), tol);
        r.data()["flows"] = flows.size();
        r.data()["function_pairs_per_flow"] = pairs;
        if (flows.size() == 1) {
            const auto& g = *flows[0].graph();
            auto d = superpose(flows[0]);
            auto& out = r.data()["decomposition"];
            out["paths"] = nlohmann::json::array();
            out["cycles"] = nlohmann::json::array();
            for (const auto& p : d.paths) out["paths"].push_back(path_json(g, p));
            for (const auto& p : d.cycles) out["cycles"].push_back(path_json(g, p));
        }
    });
    control(r, o, "cancelling_pair.mass", cancelling_pair_slack(), 1e-12);
    return r;
}

// ------------------------------------------------------------------ embedding

namespace {

// Slack 0 when the cancelling decomposition is rejected, 1 otherwise.
double cancelling_embedding_slack(std::string* what) {
    auto g = std::make_shared<MetricGraph>(GraphGeometry(2, {{0, 1, 1.0}}), std::vector<double>{});
    EdgeFlow b(g, {1.0});
    PathDecomposition bad;
    bad.graph = g;
    bad.paths.push_back(make_flow_path(g, 0, {0}, 2.0));
    bad.paths.push_back(make_flow_path(g, 1, {0}, 1.0));
    try {
        build_embedding(b, bad);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::RigidityViolation) {
            if (what) *what = e.what();
            return 0.0;
        }
        throw;
    }
    return 1.0;
}

}  // namespace

Report suite_embed(const std::vector<EdgeFlow>& flows, int grid, const SuiteOptions& o) {
    Report r("embed");
    if (o.negative_control) {
        std::string what;
        if (cancelling_embedding_slack(&what) == 0.0)
            r.error("control.cancelling_decomposition", "RigidityViolation: " + what);
        else
            r.check("control.cancelling_decomposition", 0.0, 0.0);
        return r;
    }
    double tol = pick(o.tol, 1e-7);
    EmbeddingChecks worst;
    double tie = 0;
    guarded(r, "embed", [&] {
        for (std::size_t k = 0; k < flows.size(); ++k) {
            EmbeddingOptions eo;
            eo.grid = grid;
            eo.seed = o.seed + k;
            auto s = build_embedding(flows[k], eo);
            eo.tie = TieBreak::Reverse;
            auto t = build_embedding(flows[k], eo);
            tie = std::max(tie, section_distance(s, t));
            worst.dist_differential = std::max(worst.dist_differential, s.checks.dist_differential);
            worst.pointwise_norm = std::max(worst.pointwise_norm, s.checks.pointwise_norm);
            worst.halfline = std::max(worst.halfline, s.checks.halfline);
            worst.pushforward = std::max(worst.pushforward, s.checks.pushforward);
            worst.mass_identity = std::max(worst.mass_identity, s.checks.mass_identity);
            worst.points += s.checks.points;
            worst.landmark_evaluations += s.checks.landmark_evaluations;
            if (flows.size() == 1) {
                auto& pts = r.data()["points"];
                pts = nlohmann::json::array();
                for (const auto& p : s.points)
                    pts.push_back({{"edge", p.pos.edge},
                                   {"offset", p.pos.offset},
                                   {"norm", p.norm()},
                                   {"norm_slack", std::fabs(p.norm() - derivation_norm(flows[k], p.pos))},
                                   {"halfline_defect", p.rigidity.halfline_defect},
                                   {"atoms", p.atoms.size()}});
            }
        }
        r.check("differential_of_distance", worst.dist_differential, tol);
        r.check("pointwise_norm", worst.pointwise_norm, 1e-9);
        r.check("halfline_rigidity", worst.halfline, 1e-9);
        r.check("tie_break_independence", tie, tol);
        r.check("barycenter_pushforward", worst.pushforward, 1e-8);
        r.check("mass_identity", worst.mass_identity, 1e-12);
        r.data()["flows"] = flows.size();
        r.data()["grid_points"] = worst.points;
        r.data()["landmark_evaluations"] = worst.landmark_evaluations;
    });
    control(r, o, "cancelling_decomposition", cancelling_embedding_slack(nullptr) == 0.0 ? 1.0 : 0.0, 0.0);
    return r;
}

// -------------------------------------------------------------- Hilbertianity

namespace {

double l1_norm(const EdgeFlow& b) {
    double s = 0;
    for (int e = 0; e < b.graph()->edge_count(); ++e) s += std::fabs(b.value(e)) * b.graph()->length(e);
    return s;
}

double l1_parallelogram_slack(const GraphPtr& g, int pairs, std::uint64_t seed) {
    double worst = 0;
    for (int k = 0; k < pairs; ++k) {
        auto b1 = random_flow(g, mix64(seed + 2 * k)), b2 = random_flow(g, mix64(seed + 2 * k + 1));
        double n1 = l1_norm(b1), n2 = l1_norm(b2), ns = l1_norm(b1 + b2), nd = l1_norm(b1 - b2);
        double lhs = ns * ns + nd * nd, rhs = 2 * (n1 * n1 + n2 * n2);
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(lhs, rhs));
    }
    return worst;
}

}  // namespace

Report suite_hilbert(const GraphPtr& g, const std::vector<EdgeFlow>& flows, const SuiteOptions& o) {
    Report r("hilbert");
    double tol = pick(o.tol, 1e-8);
    int pairs = pick(o.n, 20);
    if (o.negative_control) {
        control(r, o, "l1_parallelogram", l1_parallelogram_slack(g, pairs, o.seed), tol);
        return r;
    }
    guarded(r, "hilbert", [&] {
        auto rep = hilbertianity_report(g, flows, pairs, o.seed);
        r.check("parallelogram_l2", rep.max_norm_slack, tol);
        r.check("parallelogram_integrated", rep.max_integrated_slack, 1e-7);
        r.check("pointwise_linearity", rep.max_linearity, 1e-7);
        r.data()["pairs"] = rep.pairs.size();
        r.data()["histogram_decades_from_1e-16"] = rep.histogram;
        auto& per = r.data()["per_pair"];
        per = nlohmann::json::array();
        for (const auto& p : rep.pairs)
            per.push_back({{"norm_slack", p.norm_slack},
                           {"integrated_slack", p.integrated_slack},
                           {"sum_defect", p.linearity.sum_defect},
                           {"distance_defect", p.linearity.distance_defect},
                           {"parallelogram_defect", p.linearity.parallelogram_defect}});
    });
    control(r, o, "l1_parallelogram", l1_parallelogram_slack(g, pairs, o.seed), tol);
    return r;
}

// ------------------------------------------------------------- counterexample

Report suite_counterexample(const SuiteOptions& o) {
    Report r("counterexample");
    auto c = lip_counterexample();
    if (o.negative_control) {
        control(r, o, "lip_parallelogram", std::fabs(c.lhs - c.rhs), 1e-9);
        return r;
    }
    r.check("lip_f", std::fabs(c.lip_f - 1), 0.0);
    r.check("lip_g", std::fabs(c.lip_g - 1), 0.0);
    r.check("lip_f_plus_g", std::fabs(c.lip_sum - 2), 0.0);
    r.check("lip_f_minus_g", std::fabs(c.lip_diff - 2), 0.0);
    r.check("lip_sides_8", std::fabs(c.lhs - 8), 0.0);
    r.check("lip_sides_4", std::fabs(c.rhs - 4), 0.0);
    r.check("derivation_parallelogram", std::fabs(c.derivation_lhs - c.derivation_rhs), 0.0);
    r.data() = {{"lip_f", c.lip_f},   {"lip_g", c.lip_g}, {"lip_sum", c.lip_sum},
                {"lip_diff", c.lip_diff}, {"lhs", c.lhs},   {"rhs", c.rhs}};
    control(r, o, "lip_parallelogram", std::fabs(c.lhs - c.rhs), 1e-9);
    return r;
}

}  // namespace hcat
