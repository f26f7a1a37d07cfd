#pragma once

#include <array>

namespace hcat {

struct Kappa {
    double value = 0.0;
    constexpr explicit Kappa(double k = 0.0) : value(k) {}
};

// Point of M_kappa. kappa == 0: plane, coords (x, y, 0).
// kappa > 0: sphere of radius 1/sqrt(kappa) in R^3.
// kappa < 0: upper sheet of the hyperboloid x^2 + y^2 - z^2 = 1/kappa.
struct ModelPoint {
    Kappa kappa;
    std::array<double, 3> coords{};
};

double sn(Kappa k, double x);
double cn(Kappa k, double x);
// (1 - cn(x)) / kappa, continuous in kappa (equals x^2/2 at kappa = 0).
double versine(Kappa k, double x);
double diameter(Kappa k);  // D_kappa

double model_distance(const ModelPoint& p, const ModelPoint& q);
ModelPoint model_geodesic(const ModelPoint& p, const ModelPoint& q, double t);

// Angle at the vertex with adjacent sides b, c and opposite side a.
double comparison_angle(Kappa k, double a, double b, double c);

struct ComparisonTriangle {
    Kappa kappa;
    ModelPoint a, b, c;
    double d_ab = 0, d_ac = 0, d_bc = 0;
};

ComparisonTriangle build_comparison_triangle(Kappa k, double d_ab, double d_ac, double d_bc);
ModelPoint comparison_point(const ComparisonTriangle& tri, double d_bd, double d_dc);

// Base point of M_kappa and the point at distance r from it in azimuth phi.
ModelPoint model_origin(Kappa k);
ModelPoint model_polar(Kappa k, double r, double phi);
bool on_model(const ModelPoint& p, double tol = 1e-9);

}  // namespace hcat
