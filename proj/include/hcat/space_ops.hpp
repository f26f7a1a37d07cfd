#pragma once

#include "hcat/space.hpp"

namespace hcat {

struct MidpointCertificate {
    double epsilon = 0;    // excess: d^2(x,m'), d^2(y,m') <= d^2(x,y)/4 + eps^2
    double constant = 1;   // C with d(m, m') <= C eps
    double bound = 0;      // C * eps
    double deviation = 0;  // actual d(m, m')
    bool holds = false;
};

// Constant of the approximate midpoint estimate in a CAT(kappa) space for
// pairs at distance at most lambda.
double midpoint_constant(Kappa k, double lambda);
// Smallest eps with both squared distances within d^2(x,y)/4 + eps^2.
double midpoint_excess(const Space& s, const Point& x, const Point& y, const Point& m);
// eps < 0 means use the smallest admissible eps.
MidpointCertificate certify_midpoint(const Space& s, const Point& x, const Point& y, const Point& m,
                                     double eps = -1.0);

// d(G_x^y(eps), G_x^z(eps)) / (eps d(y,z)) with G_x^y(eps) the point at
// fraction eps along [x,y].
double contraction_ratio(const Space& s, const Point& x, const Point& y, const Point& z, double eps);

}  // namespace hcat
