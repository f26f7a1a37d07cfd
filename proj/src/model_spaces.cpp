#include "hcat/model_spaces.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

namespace {

constexpr double kSeriesCut = 1e-8;
constexpr double kAcosSlack = 1e-9;

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Lorentzian form with signature (+, +, -).
double mdot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void same_kappa(const ModelPoint& p, const ModelPoint& q) {
    if (p.kappa.value != q.kappa.value) fail(ErrorCode::CrossSpace, "model points with different curvature");
}

// Pulls p back onto the model after arithmetic drift.
ModelPoint project(ModelPoint p) {
    double k = p.kappa.value;
    auto& x = p.coords;
    if (k > 0) {
        double radius = 1.0 / std::sqrt(k);
        double n = std::sqrt(dot3(x, x));
        for (double& c : x) c *= radius / n;
    } else if (k < 0) {
        double radius = 1.0 / std::sqrt(-k);
        x[2] = std::sqrt(radius * radius + x[0] * x[0] + x[1] * x[1]);
    } else {
        x[2] = 0.0;
    }
    return p;
}

}  // namespace

double sn(Kappa k, double x) {
    double kv = k.value;
    if (kv == 0.0) return x;
    double z = kv * x * x;
    if (std::fabs(z) < kSeriesCut) return x * (1.0 - z / 6.0 + z * z / 120.0);
    if (kv > 0) {
        double s = std::sqrt(kv);
        return std::sin(s * x) / s;
    }
    double s = std::sqrt(-kv);
    return std::sinh(s * x) / s;
}

double cn(Kappa k, double x) {
    double kv = k.value;
    if (kv == 0.0) return 1.0;
    double z = kv * x * x;
    if (std::fabs(z) < kSeriesCut) return 1.0 - z / 2.0 + z * z / 24.0;
    if (kv > 0) return std::cos(std::sqrt(kv) * x);
    return std::cosh(std::sqrt(-kv) * x);
}

double versine(Kappa k, double x) {
    double h = sn(k, 0.5 * x);
    return 2.0 * h * h;
}

double diameter(Kappa k) {
    if (k.value <= 0.0) return std::numeric_limits<double>::infinity();
    return std::numbers::pi / std::sqrt(k.value);
}

double model_distance(const ModelPoint& p, const ModelPoint& q) {
    same_kappa(p, q);
    double k = p.kappa.value;
    const auto& a = p.coords;
    const auto& b = q.coords;
    if (k == 0.0) return std::hypot(a[0] - b[0], a[1] - b[1]);
    if (k > 0) {
        double radius = 1.0 / std::sqrt(k);
        auto c = cross(a, b);
        return radius * std::atan2(std::sqrt(dot3(c, c)), dot3(a, b));
    }
    double radius = 1.0 / std::sqrt(-k);
    std::array<double, 3> diff{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
    double chord = std::sqrt(std::max(0.0, mdot(diff, diff)));
    return 2.0 * radius * std::asinh(chord / (2.0 * radius));
}

ModelPoint model_geodesic(const ModelPoint& p, const ModelPoint& q, double t) {
    same_kappa(p, q);
    if (t < 0.0 || t > 1.0) fail(ErrorCode::InvalidArgument, "geodesic parameter outside [0,1]");
    double k = p.kappa.value;
    ModelPoint out{p.kappa, {}};
    const auto& a = p.coords;
    const auto& b = q.coords;
    if (k == 0.0) {
        for (int i = 0; i < 2; ++i) out.coords[i] = (1.0 - t) * a[i] + t * b[i];
        return out;
    }
    double d = model_distance(p, q);
    if (k > 0 && d >= diameter(p.kappa) - 1e-12) fail(ErrorCode::AntipodalPoints, "no unique geodesic between antipodes");
    if (t == 0.0) return p;
    if (t == 1.0) return q;
    double theta = d * std::sqrt(std::fabs(k));
    double wa, wb;
    if (theta < 1e-7) {
        wa = 1.0 - t;
        wb = t;
    } else if (k > 0) {
        wa = std::sin((1.0 - t) * theta) / std::sin(theta);
        wb = std::sin(t * theta) / std::sin(theta);
    } else {
        wa = std::sinh((1.0 - t) * theta) / std::sinh(theta);
        wb = std::sinh(t * theta) / std::sinh(theta);
    }
    for (int i = 0; i < 3; ++i) out.coords[i] = wa * a[i] + wb * b[i];
    return project(out);
}

double comparison_angle(Kappa k, double a, double b, double c) {
    if (!(b > 0.0) || !(c > 0.0)) fail(ErrorCode::DegenerateVertex, "vertex coincides with an endpoint");
    if (a < 0.0) fail(ErrorCode::InvalidArgument, "negative side length");
    if (k.value > 0.0 && a + b + c >= 2.0 * diameter(k)) {
        fail(ErrorCode::PerimeterTooLarge, "perimeter not below 2 D_kappa");
    }
    // Half angle form: 1 - cos = (v(a) - v(b-c)) / (sn b sn c) and
    // 1 + cos = (v(b+c) - v(a)) / (sn b sn c), with v the versine.
    double va = versine(k, a);
    double lo = va - versine(k, b - c);
    double hi = versine(k, b + c) - va;
    double scale = sn(k, b) * sn(k, c);
    if (lo < -kAcosSlack * scale || hi < -kAcosSlack * scale || std::isnan(lo) || std::isnan(hi)) {
        std::ostringstream msg;
        msg << "side lengths (" << a << ", " << b << ", " << c << ") violate the triangle inequality";
        fail(ErrorCode::InconsistentLengths, msg.str());
    }
    return 2.0 * std::atan2(std::sqrt(std::max(0.0, lo)), std::sqrt(std::max(0.0, hi)));
}

ModelPoint model_origin(Kappa k) {
    ModelPoint p{k, {0.0, 0.0, 0.0}};
    if (k.value > 0) p.coords[2] = 1.0 / std::sqrt(k.value);
    if (k.value < 0) p.coords[2] = 1.0 / std::sqrt(-k.value);
    return p;
}

ModelPoint model_polar(Kappa k, double r, double phi) {
    ModelPoint p{k, {}};
    double kv = k.value;
    if (kv == 0.0) {
        p.coords = {r * std::cos(phi), r * std::sin(phi), 0.0};
        return p;
    }
    double radius = 1.0 / std::sqrt(std::fabs(kv));
    double s = sn(k, r);  // already radius * sin(r/radius) or its hyperbolic analogue
    double h = radius * cn(k, r);
    p.coords = {s * std::cos(phi), s * std::sin(phi), h};
    return project(p);
}

bool on_model(const ModelPoint& p, double tol) {
    double k = p.kappa.value;
    const auto& x = p.coords;
    if (k == 0.0) return x[2] == 0.0;
    if (k > 0) return std::fabs(dot3(x, x) - 1.0 / k) <= tol * (1.0 / k);
    return std::fabs(mdot(x, x) - 1.0 / k) <= tol * (-1.0 / k) && x[2] > 0;
}

ComparisonTriangle build_comparison_triangle(Kappa k, double d_ab, double d_ac, double d_bc) {
    if (d_ab < 0 || d_ac < 0 || d_bc < 0) fail(ErrorCode::InvalidArgument, "negative side length");
    if (k.value > 0.0 && d_ab + d_ac + d_bc >= 2.0 * diameter(k)) {
        fail(ErrorCode::PerimeterTooLarge, "perimeter not below 2 D_kappa");
    }
    double alpha = 0.0;
    if (d_ab > 0.0 && d_ac > 0.0) alpha = comparison_angle(k, d_bc, d_ab, d_ac);
    ComparisonTriangle tri;
    tri.kappa = k;
    tri.a = model_origin(k);
    tri.b = model_polar(k, d_ab, 0.0);
    tri.c = model_polar(k, d_ac, alpha);
    tri.d_ab = d_ab;
    tri.d_ac = d_ac;
    tri.d_bc = d_bc;
    return tri;
}

ModelPoint comparison_point(const ComparisonTriangle& tri, double d_bd, double d_dc) {
    if (d_bd < 0 || d_dc < 0) fail(ErrorCode::NotIntermediate, "negative distance to an endpoint");
    double side = tri.d_bc;
    if (std::fabs(d_bd + d_dc - side) > 1e-10 * std::max(1.0, side)) {
        std::ostringstream msg;
        msg << "d(b,d) + d(d,c) = " << d_bd + d_dc << " differs from d(b,c) = " << side;
        fail(ErrorCode::NotIntermediate, msg.str());
    }
    if (side == 0.0) return tri.b;
    double t = std::clamp(d_bd / side, 0.0, 1.0);
    return model_geodesic(tri.b, tri.c, t);
}

}  // namespace hcat
