#include "hcat/comparison.hpp"

#include <algorithm>
#include <cmath>

#include "hcat/error.hpp"
#include "hcat/model_spaces.hpp"
#include "hcat/parallel.hpp"

namespace hcat {

void ComparisonReport::add(double slack) {
    ++samples;
    worst_slack = std::max(worst_slack, slack);
    if (slack > tolerance) ++violations;
}

void ComparisonReport::merge(const ComparisonReport& o) {
    samples += o.samples;
    violations += o.violations;
    worst_slack = std::max(worst_slack, o.worst_slack);
}

namespace {

struct CatSample {
    bool ok = false;
    double slack = 0;
};

CatSample cat_sample(const Space& s, Kappa k, CounterRng rng) {
    double dk = diameter(k);
    double ds = diameter(Kappa{s.curvature_bound()});
    for (int attempt = 0; attempt < 64; ++attempt) {
        Point a = s.sample(rng), b = s.sample(rng), c = s.sample(rng);
        double ab = s.dist(a, b), ac = s.dist(a, c), bc = s.dist(b, c);
        if (ab + ac + bc >= 2.0 * dk) continue;
        if (std::max({ab, ac, bc}) >= ds - 1e-9) continue;
        double r = s.cat_radius(a);
        if (r < s.radius_cap() && (ab >= r || ac >= r)) continue;
        double u = rng.uniform();
        Point d = s.geodesic(b, c, u);
        double bd = std::min(s.dist(b, d), bc);
        auto tri = build_comparison_triangle(k, ab, ac, bc);
        ModelPoint dbar = comparison_point(tri, bd, bc - bd);
        return {true, s.dist(a, d) - model_distance(tri.a, dbar)};
    }
    return {};
}

}  // namespace

ComparisonReport verify_cat(const Space& s, Kappa k, std::size_t n, std::uint64_t seed, double tol) {
    std::vector<CatSample> results(n);
    parallel_for(n, [&](std::size_t i) { results[i] = cat_sample(s, k, CounterRng(seed, i)); });
    ComparisonReport rep;
    rep.space = s.id();
    rep.tolerance = tol;
    for (const auto& r : results) {
        if (!r.ok) fail(ErrorCode::SamplingFailed, "could not draw an admissible triangle in 64 attempts");
        rep.add(r.slack);
    }
    return rep;
}

ComparisonReport verify_angle_monotonicity(const Space& s, const Point& x, const Point& g, const Point& e,
                                           const std::vector<double>& tg, const std::vector<double>& sg,
                                           double tol) {
    return verify_angle_monotonicity(s, Kappa{s.curvature_bound()}, x, g, e, tg, sg, tol);
}

ComparisonReport verify_angle_monotonicity(const Space& s, Kappa k, const Point& x, const Point& g,
                                           const Point& e, const std::vector<double>& tg,
                                           const std::vector<double>& sg, double tol) {
    for (double t : tg)
        if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::InvalidArgument, "grid values must lie in (0, 1]");
    for (double t : sg)
        if (!(t > 0.0 && t <= 1.0)) fail(ErrorCode::InvalidArgument, "grid values must lie in (0, 1]");
    std::vector<double> t_grid = tg, s_grid = sg;
    std::sort(t_grid.begin(), t_grid.end());
    std::sort(s_grid.begin(), s_grid.end());
    std::vector<Point> gam, eta;
    for (double t : t_grid) gam.push_back(s.geodesic(x, g, t));
    for (double t : s_grid) eta.push_back(s.geodesic(x, e, t));
    std::vector<std::vector<double>> ang(t_grid.size(), std::vector<double>(s_grid.size()));
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        for (std::size_t j = 0; j < s_grid.size(); ++j)
            ang[i][j] = comparison_angle(k, s.dist(gam[i], eta[j]), s.dist(x, gam[i]), s.dist(x, eta[j]));
    ComparisonReport rep;
    rep.space = s.id();
    rep.tolerance = tol;
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        for (std::size_t j = 0; j < s_grid.size(); ++j) {
            // measured on cosines: near pi the angle itself carries
            // sqrt(eps) noise from the side lengths
            if (i + 1 < t_grid.size()) rep.add(std::cos(ang[i + 1][j]) - std::cos(ang[i][j]));
            if (j + 1 < s_grid.size()) rep.add(std::cos(ang[i][j + 1]) - std::cos(ang[i][j]));
        }
    return rep;
}

constexpr double kAngleNoise = 1e-6;

KappaIndependenceReport verify_kappa_independence(const Space& s, const Point& x,
                                                  const std::vector<std::pair<Point, Point>>& pairs, Kappa k1,
                                                  Kappa k2, int levels, double tol) {
    if (k1.value < k2.value) fail(ErrorCode::InvalidArgument, "expected kappa1 >= kappa2");
    KappaIndependenceReport out;
    out.report.space = s.id();
    out.report.tolerance = tol;
    out.c_by_scale.assign(levels, 0.0);
    std::vector<std::vector<double>> ratios(pairs.size(), std::vector<double>(levels, 0.0));
    auto diffs = ratios;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        for (int l = 0; l < levels; ++l) {
            double f = std::ldexp(1.0, -l);
            Point y1 = s.geodesic(x, pairs[p].first, f), y2 = s.geodesic(x, pairs[p].second, f);
            double d1 = s.dist(x, y1), d2 = s.dist(x, y2), d12 = s.dist(y1, y2);
            double a1 = comparison_angle(k1, d12, d1, d2);
            double a2 = comparison_angle(k2, d12, d1, d2);
            double r = std::fabs(a1 - a2) / (d1 * d2);
            ratios[p][l] = r;
            diffs[p][l] = std::fabs(a1 - a2);
            out.c_by_scale[l] = std::max(out.c_by_scale[l], r);
            out.fitted_c = std::max(out.fitted_c, r);
        }
    }
    // Convergent ratios settle; a blow-up like 1/d or 1/(d1 d2) at least
    // doubles per halving. Past the first two levels each ratio must stay
    // within 1.5 times the previous one.
    // Angle differences below kAngleNoise are rounding: near-degenerate
    // triangles carry sqrt(eps) errors in the angle.
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (int l = 2; l < levels; ++l)
            out.report.add(diffs[p][l] < kAngleNoise ? 0.0 : ratios[p][l] - 1.5 * ratios[p][l - 1]);
    return out;
}

}  // namespace hcat

namespace hcat {

LimitEstimate geodesic_angle(const Space& s, const Point& x, const Point& y0, const Point& y1) {
    double d0 = s.dist(x, y0), d1 = s.dist(x, y1);
    if (d0 == 0.0 || d1 == 0.0) fail(ErrorCode::DegenerateVertex, "angle at a coincident endpoint");
    Kappa k{s.curvature_bound()};
    double h0 = std::min({s.cat_radius(x), s.regular_radius(x), d0, d1}) / 8.0;
    auto sample = [&](double h) {
        Point a = s.geodesic(x, y0, h / d0), b = s.geodesic(x, y1, h / d1);
        return comparison_angle(k, s.dist(a, b), s.dist(x, a), s.dist(x, b));
    };
    LimitOptions opts;
    opts.rel_tol = 1e-7;
    LimitEstimate est = richardson_limit(sample, h0, opts);
    auto T = s.tangent_cone(x);
    est.closed_form = T->angle(s.direction(x, y0), s.direction(x, y1));
    return est;
}

}  // namespace hcat
