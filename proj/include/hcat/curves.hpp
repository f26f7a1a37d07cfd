#pragma once

#include <vector>

#include "hcat/space.hpp"
#include "hcat/tangent.hpp"

namespace hcat {

// Piecewise geodesic curve on [0, 1] through the given samples.
class SampledCurve {
public:
    SampledCurve(SpacePtr s, std::vector<double> times, std::vector<Point> points);

    const Space& space() const { return *space_; }
    SpacePtr space_ptr() const { return space_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<Point>& points() const { return points_; }
    std::size_t segments() const { return times_.size() - 1; }

    Point operator()(double t) const;
    // Segment i with t in [t_i, t_{i+1}); t = 1 maps to the last segment.
    std::size_t segment(double t) const;
    bool is_knot(double t) const;  // interior sample time
    double segment_length(std::size_t i) const;

private:
    SpacePtr space_;
    std::vector<double> times_;
    std::vector<Point> points_;
};

struct SpeedProfile {
    std::vector<double> speeds;
    double length = 0.0;
};

SpeedProfile speed_profile(const SampledCurve& c);
double length(const SampledCurve& c);
// Speed on the segment containing t (right limit at knots, left limit at 1).
double metric_speed(const SampledCurve& c, double t);

struct DualSpeed {
    double primal = 0.0;  // metric_speed
    double dual = 0.0;    // sup_n [-(d/dt) d(c_t, x_n)] over the landmarks
    bool agree = false;   // |primal - dual| <= 5e-2 (1 + primal)
};
DualSpeed metric_speed_dual(const SampledCurve& c, double t, const std::vector<Point>& landmarks);

SampledCurve const_speed_reparam(const SampledCurve& c);
// Upper estimate of the distance between reparametrization classes.
double curve_class_distance(const SampledCurve& a, const SampledCurve& b);

// One-sided derivatives. At interior knots these throw KnotPoint.
TangentVector right_derivative(const SampledCurve& c, double t);
TangentVector left_derivative(const SampledCurve& c, double t);

// Comparison angle at c_t between c_{t+d} and c_{t+d/2} for the smallest of
// a dyadic sequence of d: tends to 0 where the right derivative exists.
double angle_condition(const SampledCurve& c, double t);

struct Antipodality {
    double defect = 0.0;  // |c'+ (+) c'-|
    bool at_knot = false;
};
// Evaluated also at knots (using the adjacent segments), where a positive
// defect is expected and the point is flagged.
Antipodality check_antipodality(const SampledCurve& c, double t);

}  // namespace hcat
