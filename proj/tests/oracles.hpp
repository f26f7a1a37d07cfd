#pragma once

// Independent reference computations used as test oracles. They avoid the
// library's code paths: long double arithmetic, textbook formulas, brute force.

#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

namespace oracle {

inline long double sn_series(long double k, long double x) {
    // sum_n (-k)^n x^(2n+1) / (2n+1)!
    long double term = x, sum = x;
    for (int n = 1; n < 60; ++n) {
        term *= -k * x * x / ((2 * n) * (2 * n + 1));
        sum += term;
    }
    return sum;
}

inline long double cn_series(long double k, long double x) {
    long double term = 1, sum = 1;
    for (int n = 1; n < 60; ++n) {
        term *= -k * x * x / ((2 * n - 1) * (2 * n));
        sum += term;
    }
    return sum;
}

// Textbook laws of cosines.
inline long double angle_euclid(long double a, long double b, long double c) {
    return std::acos((b * b + c * c - a * a) / (2 * b * c));
}
inline long double angle_sphere(long double a, long double b, long double c) {
    return std::acos((std::cos(a) - std::cos(b) * std::cos(c)) / (std::sin(b) * std::sin(c)));
}
inline long double angle_hyper(long double a, long double b, long double c) {
    return std::acos((std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c)));
}

inline long double sphere_dist(const long double* p, const long double* q) {
    long double d = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    long double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) *
                    std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    return std::acos(std::fmax(-1.0L, std::fmin(1.0L, d / n)));
}

inline long double hyper_dist(const long double* p, const long double* q) {
    long double m = p[0] * q[0] + p[1] * q[1] - p[2] * q[2];
    return std::acosh(std::fmax(1.0L, -m));
}

// Euclidean cone distance computed from planar unrolling.
inline double cone_dist(double r, double s, double theta) {
    theta = std::fmin(theta, std::numbers::pi);
    double x = s * std::cos(theta) - r, y = s * std::sin(theta);
    return std::sqrt(x * x + y * y);
}

// Brute force Dijkstra free all-pairs on small weighted graphs (Bellman-Ford).
inline std::vector<std::vector<double>> graph_apsp(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    const double inf = 1e300;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (int s = 0; s < n; ++s) {
        d[s][s] = 0;
        for (int it = 0; it < n; ++it)
            for (auto [u, v, w] : edges) {
                if (d[s][u] + w < d[s][v]) d[s][v] = d[s][u] + w;
                if (d[s][v] + w < d[s][u]) d[s][u] = d[s][v] + w;
            }
    }
    return d;
}

}  // namespace oracle
