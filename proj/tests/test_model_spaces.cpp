#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hcat/error.hpp"
#include "hcat/model_spaces.hpp"
#include "hcat/rng.hpp"
#include "oracles.hpp"

using namespace hcat;
constexpr double pi = std::numbers::pi;

TEST_CASE("diameter of model spaces") {
    CHECK(std::isinf(diameter(Kappa{0})));
    CHECK(std::isinf(diameter(Kappa{-3})));
    CHECK(diameter(Kappa{1}) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(diameter(Kappa{4}) == doctest::Approx(pi / 2).epsilon(1e-15));
}

TEST_CASE("sn and cn against series oracle") {
    CHECK(sn(Kappa{0}, 3.7) == 3.7);
    CHECK(sn(Kappa{1}, pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(cn(Kappa{-1}, 1.0) - 1.5430806348152437) < 1e-12);
    CounterRng rng(7);
    for (int i = 0; i < 500; ++i) {
        double k = rng.uniform(-2, 2);
        if (i % 5 == 0) k *= 1e-9;
        double x = rng.uniform(0, 1.5);
        long double s = oracle::sn_series(k, x), c = oracle::cn_series(k, x);
        CHECK(std::fabs(sn(Kappa{k}, x) - static_cast<double>(s)) < 1e-13);
        CHECK(std::fabs(cn(Kappa{k}, x) - static_cast<double>(c)) < 1e-13);
        double a = cn(Kappa{k}, x), b = sn(Kappa{k}, x);
        CHECK(std::fabs(a * a + k * b * b - 1.0) < 1e-12);
    }
}

TEST_CASE("sn is continuous across the series cut") {
    double x = 1.0;
    for (double k : {0.999e-8, 1.001e-8, -0.999e-8, -1.001e-8}) {
        CHECK(std::fabs(sn(Kappa{k}, x) - static_cast<double>(oracle::sn_series(k, x))) < 1e-15);
        CHECK(std::fabs(cn(Kappa{k}, x) - static_cast<double>(oracle::cn_series(k, x))) < 1e-15);
    }
}

TEST_CASE("model distances") {
    ModelPoint p{Kappa{0}, {0, 0, 0}}, q{Kappa{0}, {3, 4, 0}};
    CHECK(model_distance(p, q) == 5.0);

    // Minkowski product -cosh(1)/|kappa| gives distance 1.
    ModelPoint a = model_origin(Kappa{-1});
    ModelPoint b{Kappa{-1}, {std::sinh(1.0), 0, std::cosh(1.0)}};
    CHECK(std::fabs(model_distance(a, b) - 1.0) < 1e-14);

    CounterRng rng(3);
    for (double k : {1.0, 4.0, -1.0, -0.25}) {
        for (int i = 0; i < 200; ++i) {
            ModelPoint x = model_polar(Kappa{k}, rng.uniform(0, 1.2), rng.uniform(0, 2 * pi));
            ModelPoint y = model_polar(Kappa{k}, rng.uniform(0, 1.2), rng.uniform(0, 2 * pi));
            long double px[3] = {x.coords[0], x.coords[1], x.coords[2]};
            long double py[3] = {y.coords[0], y.coords[1], y.coords[2]};
            long double R = 1.0L / std::sqrt(std::fabs(static_cast<long double>(k)));
            for (auto& c : px) c /= R;
            for (auto& c : py) c /= R;
            long double ref = R * (k > 0 ? oracle::sphere_dist(px, py) : oracle::hyper_dist(px, py));
            CHECK(std::fabs(model_distance(x, y) - static_cast<double>(ref)) < 1e-9);
        }
    }
}

TEST_CASE("model geodesics are constant speed") {
    ModelPoint north = model_origin(Kappa{1});
    ModelPoint eq = model_polar(Kappa{1}, pi / 2, 0.0);
    ModelPoint mid = model_geodesic(north, eq, 0.5);
    CHECK(std::fabs(std::acos(mid.coords[2]) - pi / 4) < 1e-12);
    CHECK(std::fabs(model_distance(north, eq) - pi / 2) < 1e-14);

    CounterRng rng(11);
    for (double k : {0.0, 1.0, -1.0}) {
        ModelPoint p = model_polar(Kappa{k}, rng.uniform(0, 1), rng.uniform(0, 6));
        ModelPoint q = model_polar(Kappa{k}, rng.uniform(0, 1), rng.uniform(0, 6));
        double d = model_distance(p, q);
        for (int i = 0; i < 100; ++i) {
            double t = rng.uniform(), s = rng.uniform();
            double got = model_distance(model_geodesic(p, q, t), model_geodesic(p, q, s));
            CHECK(std::fabs(got - std::fabs(t - s) * d) < 1e-10);
        }
        CHECK(model_distance(model_geodesic(p, q, 0.0), p) == 0.0);
        CHECK(model_distance(model_geodesic(p, q, 1.0), q) == 0.0);
    }
}

TEST_CASE("antipodal geodesic is rejected") {
    ModelPoint n = model_origin(Kappa{1});
    ModelPoint s = model_polar(Kappa{1}, pi, 0.3);
    try {
        model_geodesic(n, s, 0.5);
        FAIL("expected AntipodalPoints");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AntipodalPoints);
    }
}

TEST_CASE("comparison angles") {
    CHECK(std::fabs(comparison_angle(Kappa{0}, 1, 1, 1) - pi / 3) < 1e-15);
    CHECK(std::fabs(comparison_angle(Kappa{1}, pi / 2, pi / 2, pi / 2) - pi / 2) < 1e-15);
    double c = std::cosh(1.0);
    double expect = std::acos(c * (c - 1) / (std::sinh(1.0) * std::sinh(1.0)));
    CHECK(std::fabs(comparison_angle(Kappa{-1}, 1, 1, 1) - expect) < 1e-14);
    CHECK(std::fabs(expect - 0.9188) < 1e-4);

    CounterRng rng(5);
    for (int i = 0; i < 300; ++i) {
        double b = rng.uniform(0.05, 1.0), cc = rng.uniform(0.05, 1.0);
        double a = rng.uniform(std::fabs(b - cc) + 1e-3, b + cc - 1e-3);
        CHECK(std::fabs(comparison_angle(Kappa{0}, a, b, cc) - static_cast<double>(oracle::angle_euclid(a, b, cc))) < 1e-11);
        CHECK(std::fabs(comparison_angle(Kappa{1}, a, b, cc) - static_cast<double>(oracle::angle_sphere(a, b, cc))) < 1e-10);
        CHECK(std::fabs(comparison_angle(Kappa{-1}, a, b, cc) - static_cast<double>(oracle::angle_hyper(a, b, cc))) < 1e-10);
    }
}

TEST_CASE("comparison angle errors") {
    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of([] { comparison_angle(Kappa{0}, 1, 0, 1); }) == ErrorCode::DegenerateVertex);
    CHECK(code_of([] { comparison_angle(Kappa{1}, 2.5, 2.5, 2.5); }) == ErrorCode::PerimeterTooLarge);
    CHECK(code_of([] { comparison_angle(Kappa{0}, 3, 1, 1); }) == ErrorCode::InconsistentLengths);
    // Within the clamp tolerance the degenerate value is returned.
    CHECK(comparison_angle(Kappa{0}, 2 + 1e-12, 1, 1) == doctest::Approx(pi));
}

TEST_CASE("comparison angle is continuous in kappa") {
    CounterRng rng(9);
    for (int i = 0; i < 100; ++i) {
        double b = rng.uniform(0.1, 1), c = rng.uniform(0.1, 1);
        double a = rng.uniform(std::fabs(b - c) + 1e-2, b + c - 1e-2);
        double a0 = comparison_angle(Kappa{0}, a, b, c);
        double ak = comparison_angle(Kappa{1e-7}, a, b, c);
        CHECK(std::fabs(a0 - ak) < 1e-6 * b * c + 1e-12);
    }
}

TEST_CASE("angle triangle inequality on random quadruples") {
    CounterRng rng(21);
    for (double k : {0.0, 1.0, -1.0}) {
        Kappa kk{k};
        for (int i = 0; i < 300; ++i) {
            ModelPoint x = model_polar(kk, rng.uniform(0, 0.7), rng.uniform(0, 2 * pi));
            ModelPoint y[3];
            for (auto& p : y) p = model_polar(kk, rng.uniform(0.05, 0.7), rng.uniform(0, 2 * pi));
            auto ang = [&](const ModelPoint& u, const ModelPoint& v) {
                return comparison_angle(kk, model_distance(u, v), model_distance(x, u), model_distance(x, v));
            };
            CHECK(ang(y[0], y[2]) <= ang(y[0], y[1]) + ang(y[1], y[2]) + 1e-9);
        }
    }
}

TEST_CASE("comparison triangles and points") {
    auto tri = build_comparison_triangle(Kappa{0}, 3, 4, 5);
    auto d = comparison_point(tri, 2.5, 2.5);
    CHECK(std::fabs(model_distance(d, tri.b) - 2.5) < 1e-12);
    CHECK(std::fabs(model_distance(d, tri.c) - 2.5) < 1e-12);

    auto oct = build_comparison_triangle(Kappa{1}, pi / 2, pi / 2, pi / 2);
    auto m = comparison_point(oct, pi / 4, pi / 4);
    CHECK(std::fabs(model_distance(m, oct.b) - pi / 4) < 1e-12);
    CHECK(std::fabs(model_distance(m, oct.c) - pi / 4) < 1e-12);

    auto h = build_comparison_triangle(Kappa{-1}, 1, 1, 1);
    auto q = comparison_point(h, 0.25, 0.75);
    CHECK(std::fabs(model_distance(q, h.b) - 0.25) < 1e-10);
    CHECK(std::fabs(model_distance(q, h.c) - 0.75) < 1e-10);

    CHECK_THROWS_AS(comparison_point(h, 0.25, 0.8), Error);
    CHECK_THROWS_AS(build_comparison_triangle(Kappa{1}, 3, 3, 1), Error);

    CounterRng rng(17);
    for (double k : {0.0, 2.0, -2.0}) {
        for (int i = 0; i < 200; ++i) {
            double ab = rng.uniform(0, 1), ac = rng.uniform(0, 1);
            double bc = rng.uniform(std::fabs(ab - ac), ab + ac);
            auto t = build_comparison_triangle(Kappa{k}, ab, ac, bc);
            CHECK(std::fabs(model_distance(t.a, t.b) - ab) < 1e-10);
            CHECK(std::fabs(model_distance(t.a, t.c) - ac) < 1e-10);
            CHECK(std::fabs(model_distance(t.b, t.c) - bc) < 1e-10);
        }
    }
}
