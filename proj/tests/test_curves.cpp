#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcat/curves.hpp"
#include "hcat/error.hpp"
#include "hcat/instances.hpp"

using namespace hcat;
constexpr double pi = std::numbers::pi;

namespace {

std::shared_ptr<ModelSpace> plane() { return std::make_shared<ModelSpace>(Kappa{0}); }
Point xy(const ModelSpace& e, double x, double y) { return e.make({Kappa{0}, {x, y, 0}}); }

SampledCurve parabola(std::shared_ptr<ModelSpace> e, int n) {
    std::vector<double> ts;
    std::vector<Point> ps;
    for (int i = 0; i <= n; ++i) {
        double t = double(i) / n;
        ts.push_back(t);
        ps.push_back(xy(*e, t * t, 0));
    }
    return SampledCurve(e, ts, ps);
}

SampledCurve arc(std::shared_ptr<ModelSpace> e, int n, double r = 1.0) {
    std::vector<double> ts;
    std::vector<Point> ps;
    for (int i = 0; i <= n; ++i) {
        double t = double(i) / n;
        ts.push_back(t);
        ps.push_back(xy(*e, r * std::cos(t * pi / 2), r * std::sin(t * pi / 2)));
    }
    return SampledCurve(e, ts, ps);
}

}  // namespace

TEST_CASE("speeds and lengths") {
    auto e = plane();
    SampledCurve seg(e, {0, 1}, {xy(*e, 0, 0), xy(*e, 3, 4)});
    CHECK(metric_speed(seg, 0.3) == doctest::Approx(5.0));
    CHECK(length(seg) == doctest::Approx(5.0));

    auto par = parabola(e, 2000);
    CHECK(std::fabs(metric_speed(par, 0.5 + 1e-7) - 1.0) < 1e-3);
    CHECK(std::fabs(length(par) - 1.0) < 1e-12);

    auto tri = make_tripod();
    SampledCurve path(tri, {0, 0.5, 1}, {tri->vertex(1), tri->vertex(0), tri->vertex(2)});
    CHECK(metric_speed(path, 0.2) == 2.0);
    CHECK(length(path) == 2.0);
    auto prof = speed_profile(path);
    CHECK(prof.speeds.size() == 2);
}

TEST_CASE("dual speed formula") {
    auto e = plane();
    auto c = arc(e, 64);
    CounterRng rng(3);
    std::vector<Point> marks;
    for (int i = 0; i < 30; ++i) marks.push_back(e->sample(rng));
    auto d = metric_speed_dual(c, 0.3, marks);
    CHECK(d.dual <= d.primal + 1e-9);
    CHECK(d.agree);

    auto tri = make_tripod();
    SampledCurve path(tri, {0, 0.5, 1}, {tri->vertex(1), tri->vertex(0), tri->vertex(2)});
    std::vector<Point> tmarks;
    for (int i = 0; i < 30; ++i) tmarks.push_back(tri->sample(rng));
    auto td = metric_speed_dual(path, 0.7, tmarks);
    CHECK(td.agree);
}

TEST_CASE("constant speed reparametrization") {
    auto e = plane();
    auto par = parabola(e, 200);
    auto rep = const_speed_reparam(par);
    for (double t : {0.1, 0.33, 0.5, 0.77}) {
        Point p = rep(t);
        CHECK(std::fabs(p.c[0] - t) < 1e-12);
        CHECK(std::fabs(metric_speed(rep, t) - length(par)) < 1e-10);
    }
    CHECK(std::fabs(length(rep) - length(par)) < 1e-12);
    auto twice = const_speed_reparam(rep);
    for (std::size_t i = 0; i < rep.times().size(); ++i) CHECK(std::fabs(twice.times()[i] - rep.times()[i]) < 1e-15);

    // plateau in the middle
    SampledCurve plateau(e, {0, 0.2, 0.6, 1}, {xy(*e, 0, 0), xy(*e, 1, 0), xy(*e, 1, 0), xy(*e, 3, 0)});
    auto flat = const_speed_reparam(plateau);
    CHECK(flat.points().size() == 3);
    auto prof = speed_profile(flat);
    for (double s : prof.speeds) CHECK(std::fabs(s - 3.0) < 1e-12);
    CHECK(std::fabs(flat.times()[1] - 1.0 / 3.0) < 1e-15);

    SampledCurve still(e, {0, 1}, {xy(*e, 1, 1), xy(*e, 1, 1)});
    CHECK_THROWS_AS(const_speed_reparam(still), Error);
}

TEST_CASE("curve class distance") {
    auto e = plane();
    auto par = parabola(e, 300);
    SampledCurve line(e, {0, 1}, {xy(*e, 0, 0), xy(*e, 1, 0)});
    CHECK(curve_class_distance(par, line) < 1e-9);
    SampledCurve shifted(e, {0, 1}, {xy(*e, 0, 0.25), xy(*e, 1, 0.25)});
    CHECK(std::fabs(curve_class_distance(line, shifted) - 0.25) < 1e-12);
    auto a = arc(e, 50);
    std::vector<double> ts;
    std::vector<Point> ps;
    for (int i = 0; i <= 50; ++i) {
        double t = i / 50.0;
        ts.push_back(t);
        double u = t * t * (3 - 2 * t);
        ps.push_back(a(u));
    }
    // same trace, different rate: the polygon differs, so compare against its own canonical form
    SampledCurve slow(e, ts, ps);
    CHECK(curve_class_distance(slow, const_speed_reparam(slow)) < 1e-9);
}

TEST_CASE("right and left derivatives") {
    auto e = plane();
    SampledCurve seg(e, {0, 1}, {xy(*e, 0, 0), xy(*e, 3, 4)});
    auto v = right_derivative(seg, 0.25);
    CHECK(std::fabs(norm(v) - 5.0) < 1e-12);
    auto unit = make_vector(e, seg(0.25), xy(*e, 3, 4), 1.0 / 0.75);
    CHECK(cone_metric(v, unit).value < 1e-9);

    auto tri = make_tripod();
    SampledCurve path(tri, {0, 0.5, 1}, {tri->vertex(1), tri->vertex(0), tri->vertex(2)});
    auto d = right_derivative(path, 0.2);
    CHECK(std::fabs(norm(d) - 2.0) < 1e-12);
    CHECK(tri->direction(path(0.2), d.target).vertex == tri->direction(path(0.2), tri->vertex(0)).vertex);
    CHECK_THROWS_AS(right_derivative(path, 0.5), Error);

    // chain rule on a circle arc: distance to the centre is constant
    auto c = arc(e, 400);
    auto f = distance_function(e, xy(*e, 0, 0));
    for (double t : {0.1234, 0.5111, 0.9001}) {
        auto dv = right_derivative(c, t);
        CHECK(std::fabs(norm(dv) - metric_speed(c, t)) < 1e-8);
        double h = 1e-7;
        double fd = (f.f(c(t + h)) - f.f(c(t))) / h;
        CHECK(std::fabs(differential(f, dv).value - fd) < 1e-6);
        CHECK(std::fabs(differential(f, dv).value) < 1e-2);
    }
    // chain rule for a distance function on the tripod path
    auto g = distance_function(tri, tri->on_edge(2, 0.3));
    auto dv = right_derivative(path, 0.8);
    double fd = (g.f(path(0.8 + 1e-6)) - g.f(path(0.8))) / 1e-6;
    CHECK(std::fabs(differential(g, dv).value - fd) < 1e-7);
}

TEST_CASE("antipodality of one-sided derivatives") {
    auto e = plane();
    SampledCurve seg(e, {0, 1}, {xy(*e, 0, 0), xy(*e, 3, 4)});
    auto in = check_antipodality(seg, 0.4);
    CHECK(!in.at_knot);
    CHECK(in.defect < 1e-8);

    auto c = arc(e, 128);
    for (double t : {0.101, 0.37, 0.613}) {
        auto r = check_antipodality(c, t);
        CHECK(r.defect <= 1e-6);
    }

    SampledCurve corner(e, {0, 0.5, 1}, {xy(*e, 0, 0), xy(*e, 1, 0), xy(*e, 1, 1)});
    auto k = check_antipodality(corner, 0.5);
    CHECK(k.at_knot);
    CHECK(k.defect > 0.1);
    CHECK_THROWS_AS(right_derivative(corner, 0.5), Error);

    auto s = std::make_shared<ModelSpace>(Kappa{1});
    SampledCurve great(s, {0, 0.3, 1}, {s->polar(0, 0), s->polar(0.3, 1.0), s->polar(1.0, 1.0)});
    CHECK(check_antipodality(great, 0.6).defect < 1e-8);
    CHECK(check_antipodality(great, 0.3).defect < 1e-7);  // knot on a geodesic with matching speeds
}

TEST_CASE("angle condition vanishes off knots") {
    auto s = std::make_shared<ModelSpace>(Kappa{-1});
    SampledCurve c(s, {0, 0.4, 1}, {s->polar(0, 0), s->polar(1, 0.3), s->polar(1, 2.0)});
    CHECK(angle_condition(c, 0.2) < 1e-4);
    CHECK(angle_condition(c, 0.7) < 1e-4);
}
