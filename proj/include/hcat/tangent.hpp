#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hcat/limits.hpp"
#include "hcat/space.hpp"

namespace hcat {

// lambda * (G_x^y)'_0: the derivative at 0 of the geodesic from base to
// target on [0, 1], scaled by `scale`.
struct TangentVector {
    SpacePtr space;
    Point base;
    Point target;
    double scale = 0.0;

    bool is_zero() const;
};

TangentVector make_vector(SpacePtr s, const Point& x, const Point& y, double scale = 1.0);
TangentVector zero_vector(SpacePtr s, const Point& x);
TangentVector scale(double lambda, const TangentVector& v);
double norm(const TangentVector& v);

// Exact image of v in the tangent cone T_x (a point of that cone).
Point to_cone(const GraphCone& T, const TangentVector& v);
// Tangent vector at x whose image in T_x is the given cone point.
TangentVector from_cone(SpacePtr s, const Point& x, const GraphCone& T, const Point& c);

// Point at "time" t along the scaled geodesic of v: distance t |v| from x.
Point flow(const TangentVector& v, double t);

LimitEstimate cone_metric(const TangentVector& v, const TangentVector& w);
double scalar_product(const TangentVector& v, const TangentVector& w);

// v (+) w as the limit of 2/eps (G_x^{m_eps})'_0, m_eps the midpoint of the
// points at time eps along v and w.
struct ConeSum {
    SpacePtr space;
    Point base;
    std::vector<double> eps;               // decreasing
    std::vector<TangentVector> terms;      // 2/eps (G_x^{m_eps})'_0 for each eps
    LimitEstimate norm;
    std::shared_ptr<const GraphCone> cone;
    std::optional<Point> exact;            // 2 * midpoint in T_x
    double factor = 1.0;                   // pending positive scaling
};

ConeSum oplus(const TangentVector& v, const TangentVector& w);
ConeSum scale(double lambda, const ConeSum& s);
LimitEstimate norm(const ConeSum& s);
LimitEstimate cone_metric(const ConeSum& s, const TangentVector& w);
LimitEstimate cone_metric(const ConeSum& a, const ConeSum& b);
double scalar_product(const ConeSum& s, const TangentVector& w);
// Best single representative: exact when the cone sum is known in closed form.
TangentVector to_vector(const ConeSum& s);

// <v, eta'_0> by the first variation formula with eta = G_x^y.
LimitEstimate first_variation(const TangentVector& v, const Point& y);

struct ScalarFunction {
    std::function<double(const Point&)> f;
    double semiconvexity = 0.0;  // K: f is K-convex along unit speed geodesics near the base
};

ScalarFunction distance_function(SpacePtr s, const Point& y);

// d_x f(v) = lim (f(gamma_h) - f(x)) / h along the scaled geodesic of v.
LimitEstimate differential(const ScalarFunction& f, const TangentVector& v);
// Differential of dist_y at x in direction v.
double d_dist(const Point& y, const TangentVector& v);

// Shared step choice: t0 = min(r_x, local regular radius, distances)/8.
double initial_step(const Space& s, const Point& x, std::initializer_list<double> dists);

}  // namespace hcat
