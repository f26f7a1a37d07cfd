#include "hcat/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

namespace {

constexpr double kCrossCheck = 1e-6;

constexpr double kUlp = 1e-15;

LimitOptions even_orders(double scale = 1.0) {
    LimitOptions o;
    o.noise = kUlp * (1.0 + scale);
    o.first_order = 2;
    o.order_step = 2;
    return o;
}

LimitOptions all_orders(double scale = 1.0) {
    LimitOptions o;
    o.noise = kUlp * (1.0 + scale);
    return o;
}

void same_base(const TangentVector& v, const TangentVector& w) {
    if (!v.space || !w.space || v.space->id() != w.space->id()) fail(ErrorCode::CrossSpace, "vectors in different spaces");
    if (v.space->dist(v.base, w.base) != 0.0) fail(ErrorCode::InvalidArgument, "vectors at different base points");
}

void cross_check(LimitEstimate& est, double exact, const char* what) {
    est.closed_form = exact;
    if (std::fabs(est.value - exact) > kCrossCheck * (1.0 + std::fabs(exact))) {
        std::ostringstream msg;
        msg << what << ": extrapolated " << est.value << " but tangent cone gives " << exact;
        fail(ErrorCode::NoConvergence, msg.str());
    }
}

}  // namespace

bool TangentVector::is_zero() const { return scale == 0.0 || space->dist(base, target) == 0.0; }

TangentVector make_vector(SpacePtr s, const Point& x, const Point& y, double scale) {
    if (!s) fail(ErrorCode::InvalidArgument, "null space");
    s->own(x);
    s->own(y);
    if (!(scale >= 0.0) || !std::isfinite(scale)) fail(ErrorCode::InvalidArgument, "scale must be finite and non-negative");
    double d = s->dist(x, y);
    Kappa k{s->curvature_bound()};
    if (d >= diameter(k)) fail(ErrorCode::AntipodalPoints, "target outside the uniqueness range");
    if (d > s->cat_radius(x) * (1 + 1e-12)) fail(ErrorCode::InvalidArgument, "target outside B_{r_x}(x)");
    return {std::move(s), x, y, scale};
}

TangentVector zero_vector(SpacePtr s, const Point& x) { return make_vector(std::move(s), x, x, 0.0); }

TangentVector scale(double lambda, const TangentVector& v) {
    if (!(lambda >= 0.0)) fail(ErrorCode::InvalidArgument, "negative scaling of a tangent vector");
    TangentVector out = v;
    out.scale *= lambda;
    return out;
}

double norm(const TangentVector& v) { return v.scale * v.space->dist(v.base, v.target); }

Point to_cone(const GraphCone& T, const TangentVector& v) {
    double r = norm(v);
    if (r == 0.0) return T.apex();
    return T.make(r, v.space->direction(v.base, v.target));
}

TangentVector from_cone(SpacePtr s, const Point& x, const GraphCone& T, const Point& c) {
    double r = T.radius(c);
    if (r == 0.0) return zero_vector(std::move(s), x);
    double h = 0.5 * std::min(s->regular_radius(x), s->cat_radius(x));
    Point y = s->shoot(x, T.base_pos(c), h);
    double d = s->dist(x, y);
    return make_vector(std::move(s), x, y, r / d);
}

Point flow(const TangentVector& v, double t) {
    double frac = t * v.scale;
    if (frac == 0.0) return v.base;
    if (frac > 1.0) fail(ErrorCode::InvalidArgument, "time beyond the representing geodesic");
    return v.space->geodesic(v.base, v.target, frac);
}

double initial_step(const Space& s, const Point& x, std::initializer_list<double> dists) {
    double h = std::min(s.cat_radius(x), s.regular_radius(x));
    for (double d : dists)
        if (d > 0) h = std::min(h, d);
    return h / 8.0;
}

LimitEstimate cone_metric(const TangentVector& v, const TangentVector& w) {
    same_base(v, w);
    const Space& s = *v.space;
    double nv = norm(v), nw = norm(w);
    LimitEstimate est;
    if (nv == 0.0 || nw == 0.0) {
        est.value = std::max(nv, nw);
        est.closed_form = est.value;
        return est;
    }
    double h0 = initial_step(s, v.base, {s.dist(v.base, v.target), s.dist(w.base, w.target)});
    double t0 = h0 / std::max(nv, nw);
    est = richardson_limit([&](double t) { return s.dist(flow(v, t), flow(w, t)) / t; }, t0,
                           even_orders(s.dist(v.base, v.target) + s.dist(w.base, w.target)));
    auto T = s.tangent_cone(v.base);
    cross_check(est, T->dist(to_cone(*T, v), to_cone(*T, w)), "cone metric");
    return est;
}

double scalar_product(const TangentVector& v, const TangentVector& w) {
    double nv = norm(v), nw = norm(w);
    if (nv == 0.0 || nw == 0.0) return 0.0;
    double d = cone_metric(v, w).value;
    return 0.5 * (nv * nv + nw * nw - d * d);
}

// ---------------------------------------------------------------- cone sums

ConeSum oplus(const TangentVector& v, const TangentVector& w) {
    same_base(v, w);
    const Space& s = *v.space;
    ConeSum out;
    out.space = v.space;
    out.base = v.base;
    out.cone = s.tangent_cone(v.base);
    const GraphCone& T = *out.cone;
    Point vc = to_cone(T, v), wc = to_cone(T, w);
    out.exact = T.scale(T.midpoint(vc, wc), 2.0);
    double nv = norm(v), nw = norm(w);
    if (nv == 0.0 && nw == 0.0) {
        out.norm.value = 0.0;
        out.norm.closed_form = 0.0;
        out.eps = {1.0};
        out.terms = {zero_vector(v.space, v.base)};
        return out;
    }
    double h0 = initial_step(s, v.base, {s.dist(v.base, v.target), s.dist(w.base, w.target)});
    double e0 = h0 / std::max(nv, nw);
    auto term = [&](double e) {
        Point m = s.midpoint(flow(v, e), flow(w, e));
        return make_vector(v.space, v.base, m, 2.0 / e);
    };
    out.norm = richardson_limit([&](double e) {
        out.eps.push_back(e);
        out.terms.push_back(term(e));
        return norm(out.terms.back());
    }, e0, even_orders(s.dist(v.base, v.target) + s.dist(w.base, w.target)));
    cross_check(out.norm, T.radius(*out.exact), "cone sum norm");
    return out;
}

ConeSum scale(double lambda, const ConeSum& s) {
    if (!(lambda >= 0.0)) fail(ErrorCode::InvalidArgument, "negative scaling of a cone sum");
    ConeSum out = s;
    out.factor *= lambda;
    out.norm.value *= lambda;
    out.norm.error_bound *= lambda;
    if (out.norm.closed_form) *out.norm.closed_form *= lambda;
    if (out.exact) out.exact = out.cone->scale(*out.exact, lambda);
    return out;
}

LimitEstimate norm(const ConeSum& s) { return s.norm; }

namespace {

// Extrapolates g(term_k) over the recorded eps sequence of a cone sum.
LimitEstimate over_terms(const ConeSum& s, const std::function<double(const TangentVector&)>& g) {
    std::size_t n = s.terms.size();
    if (n < 3) {
        LimitEstimate e;
        e.value = g(scale(s.factor, s.terms.back()));
        return e;
    }
    double e0 = s.eps.front();
    auto sample = [&](double e) {
        // the recorded sequence is exactly e0 * 2^-k
        std::size_t idx = static_cast<std::size_t>(std::llround(std::log2(e0 / e)));
        if (idx >= n) fail(ErrorCode::NoConvergence, "cone sum pairing needs more recorded steps");
        return g(scale(s.factor, s.terms[idx]));
    };
    LimitOptions o;
    o.first_order = 2;
    o.order_step = 2;
    o.rel_tol = 1e-7;
    o.halvings = static_cast<int>(n) - 1;
    o.max_halvings = static_cast<int>(n) - 1;
    return richardson_limit(sample, e0, o);
}

}  // namespace

LimitEstimate cone_metric(const ConeSum& s, const TangentVector& w) {
    if (!w.space || w.space->id() != s.space->id()) fail(ErrorCode::CrossSpace, "vector in another space");
    LimitEstimate est = over_terms(s, [&](const TangentVector& u) { return cone_metric(u, w).value; });
    const GraphCone& T = *s.cone;
    if (s.exact) cross_check(est, T.dist(*s.exact, to_cone(T, w)), "cone sum distance");
    return est;
}

LimitEstimate cone_metric(const ConeSum& a, const ConeSum& b) {
    LimitEstimate est = over_terms(a, [&](const TangentVector& u) { return cone_metric(b, u).value; });
    const GraphCone& T = *a.cone;
    if (a.exact && b.exact) cross_check(est, T.dist(*a.exact, *b.exact), "cone sum distance");
    return est;
}

double scalar_product(const ConeSum& s, const TangentVector& w) {
    double ns = s.norm.value, nw = norm(w);
    if (ns == 0.0 || nw == 0.0) return 0.0;
    double d = cone_metric(s, w).value;
    return 0.5 * (ns * ns + nw * nw - d * d);
}

TangentVector to_vector(const ConeSum& s) {
    if (s.exact) return from_cone(s.space, s.base, *s.cone, *s.exact);
    return scale(s.factor, s.terms.back());
}

// ---------------------------------------------------------------- variations

LimitEstimate first_variation(const TangentVector& v, const Point& y) {
    const Space& s = *v.space;
    s.own(y);
    double dxy = s.dist(v.base, y);
    if (dxy == 0.0) fail(ErrorCode::InvalidArgument, "first variation needs a target away from the base");
    if (dxy >= diameter(Kappa{s.curvature_bound()})) fail(ErrorCode::AntipodalPoints, "target at the diameter");
    double nv = norm(v);
    LimitEstimate est;
    if (nv == 0.0) {
        est.closed_form = 0.0;
        return est;
    }
    double t0 = initial_step(s, v.base, {s.dist(v.base, v.target), dxy}) / nv;
    est = richardson_limit([&](double t) { return (s.dist(flow(v, t), y) - dxy) / t; }, t0,
                           all_orders(dxy + s.dist(v.base, v.target)));
    est.value *= -dxy;
    est.error_bound *= dxy;
    auto T = s.tangent_cone(v.base);
    Point eta = T->make(dxy, s.direction(v.base, y));
    cross_check(est, T->inner(to_cone(*T, v), eta), "first variation");
    return est;
}

ScalarFunction distance_function(SpacePtr s, const Point& y) {
    s->own(y);
    double k = s->curvature_bound();
    return {[s, y](const Point& p) { return s->dist(p, y); }, k > 0 ? -10.0 * k : 0.0};
}

LimitEstimate differential(const ScalarFunction& f, const TangentVector& v) {
    const Space& s = *v.space;
    double nv = norm(v);
    LimitEstimate est;
    if (nv == 0.0) {
        est.closed_form = 0.0;
        return est;
    }
    double fx = f.f(v.base);
    double h0 = initial_step(s, v.base, {s.dist(v.base, v.target)});
    double t0 = h0 / nv;
    std::vector<std::pair<double, double>> quotients;
    est = richardson_limit([&](double t) {
        double q = (f.f(flow(v, t)) - fx) / t;
        quotients.push_back({t, q});
        return q;
    }, t0, all_orders(std::fabs(fx) + s.dist(v.base, v.target)));
    // Difference quotients of a K-convex function may only drop as t decreases,
    // up to the K correction.
    for (std::size_t i = 1; i < quotients.size(); ++i) {
        auto [tp, qp] = quotients[i - 1];
        auto [tc, qc] = quotients[i];
        double slack = 1e-9 * (1.0 + std::fabs(qp)) + 0.5 * std::max(0.0, -f.semiconvexity) * nv * nv * tp;
        if (qc > qp + slack) {
            std::ostringstream msg;
            msg << "difference quotient rose from " << qp << " to " << qc << " as the step shrank";
            fail(ErrorCode::NotSemiconvex, msg.str());
        }
        (void)tc;
    }
    return est;
}

double d_dist(const Point& y, const TangentVector& v) {
    const Space& s = *v.space;
    double dxy = s.dist(v.base, y);
    if (dxy == 0.0) return norm(v);
    if (norm(v) == 0.0) return 0.0;
    return -first_variation(v, y).value / dxy;
}

}  // namespace hcat
