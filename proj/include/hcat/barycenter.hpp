#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hcat/space.hpp"
#include "hcat/tangent.hpp"

namespace hcat {

// Finitely supported measure; weights need not sum to one.
class DiscreteMeasure {
public:
    DiscreteMeasure(SpacePtr space, std::vector<Point> points, std::vector<double> weights);

    const SpacePtr& space() const { return space_; }
    const std::vector<Point>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }
    double total_mass() const { return mass_; }
    // Probability weight of atom i.
    double prob(std::size_t i) const { return weights_[i] / mass_; }

    // Moments of the normalized measure.
    double first_moment(const Point& q) const;
    double second_moment(const Point& q) const;

private:
    SpacePtr space_;
    std::vector<Point> points_;
    std::vector<double> weights_;
    double mass_;
};

// Atoms given as tangent vectors at one base point, placed in the cone T.
DiscreteMeasure fibre_measure(std::shared_ptr<const GraphCone> T, const std::vector<TangentVector>& atoms,
                              const std::vector<double>& weights);

struct BarycenterOptions {
    double tol = 1e-8;
    std::uint64_t seed = 0;
    bool closed_form = true;  // false forces inductive means + tangent refinement
    int warm_passes = 20;
    int max_iterations = 5000;
    int stall_passes = 200;
};

struct BarycenterResult {
    Point point;
    double gap_bound = 0;       // F(point) - inf F
    double distance_bound = 0;  // d(point, Bar)
    int iterations = 0;
    std::string method;
};

BarycenterResult solve_barycenter(const DiscreteMeasure& mu, const BarycenterOptions& opts = {});

// Exact barycenter in a Euclidean cone over a metric graph. `value` is the
// maximum over the base of sum w_i |x_i| cos angle(xi, x_i); the barycenter
// has radius max(value, 0).
struct ConeBarycenter {
    Point point;
    double value = 0;
};
ConeBarycenter cone_barycenter(const GraphCone& T, const std::vector<Point>& points, const std::vector<double>& probs);

// Barycenter in T_p of the measure pulled back by the inverse exponential
// map at p. For CAT(0) spaces d(p, Bar) <= |z| and F(p) - inf F <= |z|^2.
ConeBarycenter tangent_barycenter(const DiscreteMeasure& mu, const Point& p);

// Cyclic inductive means over shuffled passes.
Point inductive_mean(const DiscreteMeasure& mu, int passes, std::uint64_t seed);

// min over probes q of int [d^2(.,q) - d^2(.,bar)] dmu - d^2(q, bar).
double variance_certificate(const DiscreteMeasure& mu, const Point& bar, const std::vector<Point>& probes);

// int phi dmu - phi(bar), after checking convexity of phi along geodesics
// between atoms and bar (NotConvex otherwise).
double jensen_check(const DiscreteMeasure& mu, const std::function<double(const Point&)>& phi, const Point& bar);

struct RigidityReport {
    bool triggered = false;
    double threshold_slack = 0;   // d(Bar, p) - int d(x, p) dmu
    double equality_defect = 0;   // max |d(x,Bar) - |d(x,p) - d(Bar,p)||
    double halfline_defect = 0;   // max |d(x,y) - |d(x,p) - d(y,p)|| over atoms and Bar
    bool halfline_checked = false;
};
RigidityReport rigidity_check(const DiscreteMeasure& mu, const Point& p, double tol, const BarycenterOptions& opts = {});

}  // namespace hcat
