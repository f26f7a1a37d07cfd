#include "hcat/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcat/error.hpp"
#include "hcat/model_spaces.hpp"

namespace hcat {

namespace {
constexpr double kKnotTol = 1e-14;
}

SampledCurve::SampledCurve(SpacePtr s, std::vector<double> times, std::vector<Point> points)
    : space_(std::move(s)), times_(std::move(times)), points_(std::move(points)) {
    if (!space_) fail(ErrorCode::InvalidArgument, "curve without a space");
    if (times_.size() < 2 || times_.size() != points_.size())
        fail(ErrorCode::InvalidArgument, "curve needs matching times and points (at least two)");
    if (times_.front() != 0.0 || times_.back() != 1.0) fail(ErrorCode::InvalidArgument, "curve times must run from 0 to 1");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1])) fail(ErrorCode::InvalidArgument, "curve times must increase strictly");
    double D = diameter(Kappa{space_->curvature_bound()});
    for (const auto& p : points_) space_->own(p);
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (space_->dist(points_[i - 1], points_[i]) >= D - 1e-12)
            fail(ErrorCode::AntipodalPoints, "consecutive samples too far apart for unique geodesics");
}

std::size_t SampledCurve::segment(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::InvalidArgument, "curve parameter outside [0,1]");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - times_.begin());
    if (i == 0) return 0;
    return std::min(i - 1, segments() - 1);
}

bool SampledCurve::is_knot(double t) const {
    for (std::size_t i = 1; i + 1 < times_.size(); ++i)
        if (std::fabs(t - times_[i]) <= kKnotTol) return true;
    return false;
}

double SampledCurve::segment_length(std::size_t i) const { return space_->dist(points_[i], points_[i + 1]); }

Point SampledCurve::operator()(double t) const {
    std::size_t i = segment(t);
    double u = (t - times_[i]) / (times_[i + 1] - times_[i]);
    return space_->geodesic(points_[i], points_[i + 1], std::clamp(u, 0.0, 1.0));
}

SpeedProfile speed_profile(const SampledCurve& c) {
    SpeedProfile out;
    for (std::size_t i = 0; i < c.segments(); ++i) {
        double L = c.segment_length(i);
        out.speeds.push_back(L / (c.times()[i + 1] - c.times()[i]));
        out.length += L;
    }
    return out;
}

double length(const SampledCurve& c) { return speed_profile(c).length; }

double metric_speed(const SampledCurve& c, double t) {
    std::size_t i = c.segment(t);
    return c.segment_length(i) / (c.times()[i + 1] - c.times()[i]);
}

DualSpeed metric_speed_dual(const SampledCurve& c, double t, const std::vector<Point>& landmarks) {
    DualSpeed out;
    out.primal = metric_speed(c, t);
    if (t >= 1.0) fail(ErrorCode::InvalidArgument, "dual speed needs t < 1");
    std::size_t i = c.segment(t);
    double h0 = (c.times()[i + 1] - t) / 8.0;
    Point ct = c(t);
    double best = 0.0;
    for (const auto& x : landmarks) {
        double f0 = c.space().dist(ct, x);
        LimitOptions o;
        o.noise = 1e-15 * (1.0 + f0);
        auto est = richardson_limit([&](double h) { return (c.space().dist(c(t + h), x) - f0) / h; }, h0, o);
        best = std::max(best, -est.value);
    }
    out.dual = best;
    out.agree = std::fabs(out.primal - out.dual) <= 5e-2 * (1.0 + out.primal);
    return out;
}

SampledCurve const_speed_reparam(const SampledCurve& c) {
    std::vector<double> cum{0.0};
    std::vector<Point> pts{c.points().front()};
    double total = 0.0;
    for (std::size_t i = 0; i < c.segments(); ++i) {
        double L = c.segment_length(i);
        if (L == 0.0) continue;  // constant subarc
        total += L;
        cum.push_back(total);
        pts.push_back(c.points()[i + 1]);
    }
    if (total == 0.0) fail(ErrorCode::ConstantCurve, "curve is constant");
    std::vector<double> times;
    for (double v : cum) times.push_back(v / total);
    times.back() = 1.0;
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) fail(ErrorCode::InvalidArgument, "segment too short to reparametrize");
    return SampledCurve(c.space_ptr(), std::move(times), std::move(pts));
}

double curve_class_distance(const SampledCurve& a0, const SampledCurve& b0) {
    if (a0.space().id() != b0.space().id()) fail(ErrorCode::CrossSpace, "curves in different spaces");
    SampledCurve a = const_speed_reparam(a0), b = const_speed_reparam(b0);
    const Space& s = a.space();
    std::vector<double> grid;
    for (int k = 0; k <= 512; ++k) grid.push_back(k / 512.0);
    grid.insert(grid.end(), a.times().begin(), a.times().end());
    grid.insert(grid.end(), b.times().begin(), b.times().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double best = std::numeric_limits<double>::infinity();
    for (double p : {1.0, 0.8, 0.9, 1.1, 1.25}) {
        double worst = 0.0;
        for (double t : grid) worst = std::max(worst, s.dist(a(t), b(std::pow(t, p))));
        best = std::min(best, worst);
    }
    return best;
}

namespace {

// Right derivative on segment i at t in [t_i, t_{i+1}).
TangentVector right_on(const SampledCurve& c, std::size_t i, double t) {
    const Space& s = c.space();
    Point ct = c(t);
    double dt = c.times()[i + 1] - t;
    if (!(dt > 0)) fail(ErrorCode::InvalidArgument, "no room to the right");
    double L = s.dist(ct, c.points()[i + 1]);
    if (L == 0.0) return zero_vector(c.space_ptr(), ct);
    // keep the representing target inside B_{r_x}
    double frac = std::min(1.0, 0.5 * s.cat_radius(ct) / L);
    Point y = frac < 1.0 ? c(t + frac * dt) : c.points()[i + 1];
    return make_vector(c.space_ptr(), ct, y, 1.0 / (frac * dt));
}

TangentVector left_on(const SampledCurve& c, std::size_t i, double t) {
    const Space& s = c.space();
    Point ct = c(t);
    double dt = t - c.times()[i];
    if (!(dt > 0)) fail(ErrorCode::InvalidArgument, "no room to the left");
    double L = s.dist(ct, c.points()[i]);
    if (L == 0.0) return zero_vector(c.space_ptr(), ct);
    double frac = std::min(1.0, 0.5 * s.cat_radius(ct) / L);
    Point y = frac < 1.0 ? c(t - frac * dt) : c.points()[i];
    return make_vector(c.space_ptr(), ct, y, 1.0 / (frac * dt));
}

std::size_t left_segment(const SampledCurve& c, double t) {
    auto it = std::lower_bound(c.times().begin(), c.times().end(), t);
    std::size_t j = static_cast<std::size_t>(it - c.times().begin());
    if (j == 0) fail(ErrorCode::InvalidArgument, "no left derivative at 0");
    return j - 1;
}

}  // namespace

double angle_condition(const SampledCurve& c, double t) {
    std::size_t i = c.segment(t);
    double room = c.times()[i + 1] - t;
    const Space& s = c.space();
    Point ct = c(t);
    Kappa k{s.curvature_bound()};
    double last = 0.0;
    for (int level = 2; level <= 8; ++level) {
        double d = room * std::ldexp(1.0, -level);
        Point a = c(t + d), b = c(t + 0.5 * d);
        double da = s.dist(ct, a), db = s.dist(ct, b);
        if (da == 0.0 || db == 0.0) return 0.0;
        last = comparison_angle(k, s.dist(a, b), da, db);
    }
    return last;
}

TangentVector right_derivative(const SampledCurve& c, double t) {
    if (c.is_knot(t)) fail(ErrorCode::KnotPoint, "right derivative requested at a sample knot");
    if (t >= 1.0) fail(ErrorCode::InvalidArgument, "no right derivative at 1");
    double ang = angle_condition(c, t);
    if (ang > 1e-4) {
        std::ostringstream msg;
        msg << "angle condition fails (" << ang << ")";
        fail(ErrorCode::NoConvergence, msg.str());
    }
    return right_on(c, c.segment(t), t);
}

TangentVector left_derivative(const SampledCurve& c, double t) {
    if (c.is_knot(t)) fail(ErrorCode::KnotPoint, "left derivative requested at a sample knot");
    if (t <= 0.0) fail(ErrorCode::InvalidArgument, "no left derivative at 0");
    return left_on(c, left_segment(c, t), t);
}

Antipodality check_antipodality(const SampledCurve& c, double t) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::InvalidArgument, "antipodality needs an interior time");
    Antipodality out;
    out.at_knot = c.is_knot(t);
    std::size_t r = c.segment(t);
    if (out.at_knot && c.times()[r] < t - kKnotTol) ++r;  // t slightly below the knot
    TangentVector plus = right_on(c, r, out.at_knot ? c.times()[r] : t);
    TangentVector minus = left_on(c, out.at_knot ? r - 1 : left_segment(c, t), out.at_knot ? c.times()[r] : t);
    out.defect = norm(oplus(plus, minus)).value;
    return out;
}

}  // namespace hcat
