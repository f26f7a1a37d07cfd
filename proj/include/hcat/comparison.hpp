#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "hcat/space.hpp"

namespace hcat {

struct ComparisonReport {
    SpaceId space = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst_slack = -std::numeric_limits<double>::infinity();
    double tolerance = 0.0;

    void add(double slack);
    void merge(const ComparisonReport& other);
};

// Samples triangles (a, b, c) with an intermediate point d on [b, c] and
// checks d(a, d) <= d_kappa(a~, d~) + tol. Slack is d(a,d) - d_kappa(a~, d~).
ComparisonReport verify_cat(const Space& s, Kappa k, std::size_t n, std::uint64_t seed, double tol);

// Comparison angles at x between gamma_t and eta_s (points at fractions t, s
// of the geodesics to the targets) must be non-decreasing in t and in s.
// Slack is the largest increase of the cosine between consecutive grid entries.
ComparisonReport verify_angle_monotonicity(const Space& s, const Point& x, const Point& gamma_target,
                                           const Point& eta_target, const std::vector<double>& t_grid,
                                           const std::vector<double>& s_grid, double tol = 1e-9);
ComparisonReport verify_angle_monotonicity(const Space& s, Kappa k, const Point& x, const Point& gamma_target,
                                           const Point& eta_target, const std::vector<double>& t_grid,
                                           const std::vector<double>& s_grid, double tol = 1e-9);

struct KappaIndependenceReport {
    ComparisonReport report;
    double fitted_c = 0.0;             // max of |angle_k1 - angle_k2| / (d1 d2) over all samples
    std::vector<double> c_by_scale;    // the same maximum restricted to each shrink level
};

// For each pair (y1, y2) and each level l, moves the points to fraction 2^-l
// From level 2 on, a ratio above 1.5 times the previous level (plus tol)
// counts as a violation: the ratio fails to stay bounded. Levels whose angle
// difference is below 1e-6 are rounding noise and are not judged.
KappaIndependenceReport verify_kappa_independence(const Space& s, const Point& x,
                                                  const std::vector<std::pair<Point, Point>>& pairs, Kappa k1,
                                                  Kappa k2, int levels = 5, double tol = 1e-9);

}  // namespace hcat

#include "hcat/limits.hpp"

namespace hcat {

// Angle at x between the geodesics to y0 and y1: the limit of comparison
// angles at shrinking scales, cross-checked against the tangent cone.
LimitEstimate geodesic_angle(const Space& s, const Point& x, const Point& y0, const Point& y1);

}  // namespace hcat
