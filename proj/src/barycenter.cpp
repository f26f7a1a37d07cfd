#include "hcat/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hcat/error.hpp"

namespace hcat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq(double x) { return x * x; }

bool is_exact_tree(const Space& s) {
    auto* g = dynamic_cast<const GraphSpace*>(&s);
    return g && g->geometry().is_forest();
}

void require_cat0(const Space& s) {
    if (s.curvature_bound() > 0) fail(ErrorCode::NotCat0, "barycenters need a CAT(0) space, kappa > 0 here");
    if (auto* g = dynamic_cast<const GraphSpace*>(&s); g && !g->geometry().is_forest())
        fail(ErrorCode::NotCat0, "graph with cycles is only locally CAT(0)");
}

double objective(const DiscreteMeasure& mu, const Point& q) { return mu.second_moment(q); }

// Slope in {-1, 0, 1} of a piecewise linear distance on a short interval.
int slope_sign(double a, double b, double width) {
    if (!std::isfinite(a) || !std::isfinite(b)) return 0;
    double s = (b - a) / width;
    if (s > 0.5) return 1;
    if (s < -0.5) return -1;
    return 0;
}

std::vector<double> cuts(std::vector<double> v, double L) {
    v.push_back(0.0);
    v.push_back(L);
    std::vector<double> out;
    for (double x : v)
        if (std::isfinite(x) && x >= 0 && x <= L) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return b - a < 1e-13; }), out.end());
    return out;
}

// Every point where the distance from an edge point to `target` can change
// slope or reach the cap.
void add_breaks(std::vector<double>& out, const GraphGeometry& g, int e, const GraphPos& target, double cap) {
    const auto& ed = g.edges()[e];
    double L = ed.length;
    double du = g.dist(g.vertex_pos(ed.u), target);
    double dv = g.dist(g.vertex_pos(ed.v), target);
    out.push_back((L + dv - du) / 2);
    if (std::isfinite(cap)) {
        out.push_back(cap - du);
        out.push_back(L + dv - cap);
    }
    if (target.edge == e) {
        double a = target.offset;
        out.push_back(a);
        out.push_back((a - du) / 2);
        out.push_back((L + dv + a) / 2);
        if (std::isfinite(cap)) {
            out.push_back(a - cap);
            out.push_back(a + cap);
        }
    }
}

// Exact minimizer of the second moment on a tree: on each edge piece the
// objective is a quadratic in the offset.
Point tree_barycenter(const GraphSpace& s, const DiscreteMeasure& mu) {
    const auto& g = s.geometry();
    std::vector<GraphPos> pos;
    for (const auto& p : mu.points()) pos.push_back(s.pos(p));
    Point best = mu.points()[0];
    double best_f = objective(mu, best);
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        double L = g.edges()[e].length;
        std::vector<double> br;
        for (const auto& t : pos) add_breaks(br, g, e, t, std::numeric_limits<double>::infinity());
        auto c = cuts(br, L);
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            double a = c[k], b = c[k + 1];
            if (b - a < 1e-12) continue;
            double m = 0.5 * (a + b), q = 0.25 * (b - a);
            double A = 0, B = 0;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                double d0 = g.dist(g.edge_pos(e, m - q), pos[i]);
                double d1 = g.dist(g.edge_pos(e, m + q), pos[i]);
                if (!std::isfinite(d0)) fail(ErrorCode::InvalidArgument, "measure support is not connected");
                int sg = slope_sign(d0, d1, 2 * q);
                double cst = g.dist(g.edge_pos(e, m), pos[i]) - sg * m;
                A += mu.prob(i) * sg * sg;
                B += 2 * mu.prob(i) * sg * cst;
            }
            double sstar = A > 0 ? std::clamp(-B / (2 * A), a, b) : a;
            for (double cand : {sstar, a, b}) {
                Point p = s.on_edge(e, cand);
                double f = objective(mu, p);
                if (f < best_f) {
                    best_f = f;
                    best = p;
                }
            }
        }
    }
    return best;
}

double cone_value(const GraphCone& T, const std::vector<Point>& pts, const std::vector<double>& w,
                  const GraphPos& xi) {
    double g = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double r = T.radius(pts[i]);
        if (r == 0) continue;
        g += w[i] * r * std::cos(T.angle(xi, T.base_pos(pts[i])));
    }
    return g;
}

Point euclidean_mean(const ModelSpace& s, const DiscreteMeasure& mu) {
    double x = 0, y = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        x += mu.prob(i) * mu.points()[i].c[0];
        y += mu.prob(i) * mu.points()[i].c[1];
    }
    return s.make(ModelPoint{s.kappa(), {x, y, 0.0}});
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(SpacePtr space, std::vector<Point> points, std::vector<double> weights)
    : space_(std::move(space)), points_(std::move(points)), weights_(std::move(weights)), mass_(0) {
    if (!space_) fail(ErrorCode::InvalidArgument, "measure without a space");
    if (points_.empty()) fail(ErrorCode::InvalidArgument, "empty measure");
    if (points_.size() != weights_.size()) fail(ErrorCode::InvalidArgument, "atom and weight counts differ");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        space_->own(points_[i]);
        if (!(weights_[i] > 0) || !std::isfinite(weights_[i]))
            fail(ErrorCode::InvalidArgument, "atom weights must be positive");
        mass_ += weights_[i];
    }
}

double DiscreteMeasure::first_moment(const Point& q) const {
    double s = 0;
    for (std::size_t i = 0; i < size(); ++i) s += prob(i) * space_->dist(points_[i], q);
    return s;
}

double DiscreteMeasure::second_moment(const Point& q) const {
    double s = 0;
    for (std::size_t i = 0; i < size(); ++i) s += prob(i) * sq(space_->dist(points_[i], q));
    return s;
}

DiscreteMeasure fibre_measure(std::shared_ptr<const GraphCone> T, const std::vector<TangentVector>& atoms,
                              const std::vector<double>& weights) {
    std::vector<Point> pts;
    for (const auto& v : atoms) {
        if (!pts.empty() && v.space->dist(v.base, atoms[0].base) != 0.0)
            fail(ErrorCode::InvalidArgument, "fibre atoms at different base points");
        pts.push_back(to_cone(*T, v));
    }
    return DiscreteMeasure(T, std::move(pts), weights);
}

ConeBarycenter cone_barycenter(const GraphCone& T, const std::vector<Point>& pts, const std::vector<double>& w) {
    const auto& g = T.base();
    GraphPos best_xi = g.vertex_pos(0);
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](const GraphPos& xi) {
        double v = cone_value(T, pts, w, xi);
        if (v > best) {
            best = v;
            best_xi = xi;
        }
    };
    for (int v = 0; v < g.vertex_count(); ++v) consider(g.vertex_pos(v));
    for (const auto& p : pts)
        if (T.radius(p) > 0) consider(T.base_pos(p));

    std::vector<GraphPos> dirs;
    std::vector<double> rad;
    for (const auto& p : pts) {
        dirs.push_back(T.base_pos(p));
        rad.push_back(T.radius(p));
    }
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        double L = g.edges()[e].length;
        std::vector<double> br;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (rad[i] > 0) add_breaks(br, g, e, dirs[i], kPi);
        auto c = cuts(br, L);
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            double a = c[k], b = c[k + 1];
            if (b - a < 1e-12) continue;
            double m = 0.5 * (a + b), q = 0.25 * (b - a);
            // sum of w r cos(sigma s + c) = P cos s + Q sin s + const
            double P = 0, Q = 0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (rad[i] == 0) continue;
                double t0 = T.angle(g.edge_pos(e, m - q), dirs[i]);
                double t1 = T.angle(g.edge_pos(e, m + q), dirs[i]);
                int sg = slope_sign(t0, t1, 2 * q);
                if (sg == 0) continue;
                double cst = T.angle(g.edge_pos(e, m), dirs[i]) - sg * m;
                P += w[i] * rad[i] * std::cos(cst);
                Q -= w[i] * rad[i] * sg * std::sin(cst);
            }
            if (P == 0 && Q == 0) continue;
            double phi = std::atan2(Q, P);
            for (int j = -1; j <= 2; ++j) {
                double s = phi + 2 * kPi * j;
                if (s > a && s < b) consider(g.edge_pos(e, s));
            }
        }
    }
    if (best <= 0) return {T.apex(), best};
    return {T.make(best, best_xi), best};
}

ConeBarycenter tangent_barycenter(const DiscreteMeasure& mu, const Point& p) {
    const Space& s = *mu.space();
    auto T = s.tangent_cone(p);
    std::vector<Point> logs;
    std::vector<double> w;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        double d = s.dist(p, mu.points()[i]);
        logs.push_back(d == 0 ? T->apex() : T->make(d, s.direction(p, mu.points()[i])));
        w.push_back(mu.prob(i));
    }
    return cone_barycenter(*T, logs, w);
}

Point inductive_mean(const DiscreteMeasure& mu, int passes, std::uint64_t seed) {
    const Space& s = *mu.space();
    CounterRng rng(seed, 0x1d);
    std::vector<std::size_t> order(mu.size());
    std::iota(order.begin(), order.end(), 0);
    Point b = mu.points()[order[0]];
    double W = 0;
    for (int pass = 0; pass < passes; ++pass) {
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
        for (std::size_t k : order) {
            W += mu.prob(k);
            b = s.geodesic(b, mu.points()[k], mu.prob(k) / W);
        }
    }
    return b;
}

BarycenterResult solve_barycenter(const DiscreteMeasure& mu, const BarycenterOptions& opts) {
    const Space& s = *mu.space();
    require_cat0(s);
    if (!(opts.tol > 0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
    BarycenterResult res;
    auto finish = [&](const Point& p, int iters, const char* method) {
        auto z = tangent_barycenter(mu, p);
        double r = std::max(z.value, 0.0);
        res.point = p;
        res.distance_bound = r;
        res.gap_bound = r * r;
        res.iterations = iters;
        res.method = method;
        return res;
    };
    if (mu.size() == 1) return finish(mu.points()[0], 0, "single atom");

    if (opts.closed_form) {
        if (auto* m = dynamic_cast<const ModelSpace*>(&s); m && m->kappa().value == 0.0)
            return finish(euclidean_mean(*m, mu), 0, "weighted mean");
        if (is_exact_tree(s)) return finish(tree_barycenter(static_cast<const GraphSpace&>(s), mu), 0, "tree pieces");
        if (auto* c = dynamic_cast<const GraphCone*>(&s)) {
            std::vector<double> w;
            for (std::size_t i = 0; i < mu.size(); ++i) w.push_back(mu.prob(i));
            return finish(cone_barycenter(*c, mu.points(), w).point, 0, "cone maximization");
        }
    }

    // Warm start by inductive means, then step along the tangent barycenter
    // (the steepest descent direction of the second moment) with backtracking.
    Point p = inductive_mean(mu, opts.warm_passes, opts.seed);
    double f = objective(mu, p);
    double scale = 1.0;
    for (const auto& x : mu.points()) scale = std::max(scale, s.dist(x, mu.points()[0]));
    double floor = 1e-15 * scale;
    int stalled = 0;
    double last_r = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opts.max_iterations; ++it) {
        auto z = tangent_barycenter(mu, p);
        double r = std::max(z.value, 0.0);
        if (r <= floor) return finish(p, it, "inductive means + tangent steps");
        auto T = s.tangent_cone(p);
        GraphPos dir = T->base_pos(z.point);
        double h = r;
        if (!dynamic_cast<const ModelSpace*>(&s)) h = std::min(h, s.regular_radius(p));
        bool moved = false;
        for (int k = 0; k < 40 && h > 0; ++k, h *= 0.5) {
            Point q = s.shoot(p, dir, h);
            double fq = objective(mu, q);
            if (fq <= f) {
                bool descent = fq < f - 1e-12 * std::fabs(f);
                p = q;
                f = fq;
                moved = true;
                stalled = descent ? 0 : stalled + 1;
                break;
            }
        }
        if (!moved || r >= last_r) {
            // roundoff floor reached
            if (r <= opts.tol) return finish(p, it, "inductive means + tangent steps");
            if (!moved) ++stalled;
        }
        last_r = std::min(last_r, r);
        if (stalled >= opts.stall_passes) {
            if (r <= opts.tol) return finish(p, it, "inductive means + tangent steps");
            fail(ErrorCode::NonConvergence, "barycenter descent stalled above tolerance");
        }
    }
    auto z = tangent_barycenter(mu, p);
    if (z.value <= opts.tol) return finish(p, opts.max_iterations, "inductive means + tangent steps");
    fail(ErrorCode::NonConvergence, "barycenter iteration budget exhausted");
}

double variance_certificate(const DiscreteMeasure& mu, const Point& bar, const std::vector<Point>& probes) {
    const Space& s = *mu.space();
    double fb = mu.second_moment(bar);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& q : probes) worst = std::min(worst, mu.second_moment(q) - fb - sq(s.dist(q, bar)));
    return probes.empty() ? 0.0 : worst;
}

double jensen_check(const DiscreteMeasure& mu, const std::function<double(const Point&)>& phi, const Point& bar) {
    const Space& s = *mu.space();
    std::vector<Point> nodes = mu.points();
    nodes.push_back(bar);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            double a = phi(nodes[i]), b = phi(nodes[j]);
            double scale = 1e-10 * (1 + std::fabs(a) + std::fabs(b));
            for (double t : {0.125, 0.25, 0.5, 0.75, 0.875}) {
                double m = phi(s.geodesic(nodes[i], nodes[j], t));
                if (m > (1 - t) * a + t * b + scale) fail(ErrorCode::NotConvex, "function is not geodesically convex");
            }
        }
    double mean = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) mean += mu.prob(i) * phi(mu.points()[i]);
    return mean - phi(bar);
}

RigidityReport rigidity_check(const DiscreteMeasure& mu, const Point& p, double tol, const BarycenterOptions& opts) {
    const Space& s = *mu.space();
    Point bar = solve_barycenter(mu, opts).point;
    RigidityReport rep;
    double dbp = s.dist(bar, p);
    rep.threshold_slack = dbp - mu.first_moment(p);
    rep.triggered = rep.threshold_slack >= -tol;
    if (!rep.triggered) return rep;
    for (const auto& x : mu.points())
        rep.equality_defect =
            std::max(rep.equality_defect, std::fabs(s.dist(x, bar) - std::fabs(s.dist(x, p) - dbp)));
    if (s.nonbranching_from(p)) {
        rep.halfline_checked = true;
        std::vector<Point> nodes = mu.points();
        nodes.push_back(bar);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                rep.halfline_defect = std::max(rep.halfline_defect,
                                               std::fabs(s.dist(nodes[i], nodes[j]) -
                                                         std::fabs(s.dist(nodes[i], p) - s.dist(nodes[j], p))));
    }
    return rep;
}

}  // namespace hcat
