#include "hcat/space_ops.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

double midpoint_constant(Kappa k, double lambda) {
    if (k.value <= 0.0) return 1.0;
    double c = std::cos(0.5 * std::sqrt(k.value) * lambda);
    if (!(c > 0.0)) fail(ErrorCode::PreconditionFailed, "pair too far apart for the curvature bound");
    return 1.0 / std::sqrt(c);
}

double midpoint_excess(const Space& s, const Point& x, const Point& y, const Point& m) {
    double dxy = s.dist(x, y);
    double quarter = 0.25 * dxy * dxy;
    double a = s.dist(x, m), b = s.dist(y, m);
    double ex = std::max(a * a, b * b) - quarter;
    return std::sqrt(std::max(0.0, ex));
}

MidpointCertificate certify_midpoint(const Space& s, const Point& x, const Point& y, const Point& m, double eps) {
    double dxy = s.dist(x, y);
    double quarter = 0.25 * dxy * dxy;
    double a = s.dist(x, m), b = s.dist(y, m);
    if (eps < 0) eps = midpoint_excess(s, x, y, m);
    double slack = 1e-12 * (1.0 + quarter);
    if (a * a > quarter + eps * eps + slack || b * b > quarter + eps * eps + slack) {
        std::ostringstream msg;
        msg << "candidate is not an eps-midpoint for eps = " << eps;
        fail(ErrorCode::PreconditionFailed, msg.str());
    }
    Kappa k{s.curvature_bound()};
    if (k.value > 0) {
        double c = std::cos(0.5 * std::sqrt(k.value) * dxy);
        bool small = c > 0 && eps * eps / (2.0 * c) < 1.0 &&
                     std::sqrt(k.value * (eps * eps + quarter)) < 0.5 * std::numbers::pi;
        if (!small) fail(ErrorCode::PreconditionFailed, "eps too large for the curvature bound");
    }
    MidpointCertificate cert;
    cert.epsilon = eps;
    cert.constant = midpoint_constant(k, dxy);
    cert.bound = cert.constant * eps;
    cert.deviation = s.dist(s.midpoint(x, y), m);
    cert.holds = cert.deviation <= cert.bound + 1e-12 * (1.0 + dxy);
    return cert;
}

double contraction_ratio(const Space& s, const Point& x, const Point& y, const Point& z, double eps) {
    if (!(eps > 0.0) || eps > 1.0) fail(ErrorCode::InvalidArgument, "eps must lie in (0, 1]");
    double dyz = s.dist(y, z);
    if (dyz == 0.0) fail(ErrorCode::InvalidArgument, "y and z coincide");
    Point ye = s.geodesic(x, y, eps);
    Point ze = s.geodesic(x, z, eps);
    return s.dist(ye, ze) / (eps * dyz);
}

}  // namespace hcat
