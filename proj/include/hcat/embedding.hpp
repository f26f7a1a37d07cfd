#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hcat/barycenter.hpp"
#include "hcat/transport.hpp"

namespace hcat {

// One evaluation point of a section: the fibre measure n_x in T_x, the
// density d nu / d mu and the section value v(x) = (d nu / d mu) Bar(n_x).
struct FibrePoint {
    GraphPos pos;
    Point base;
    std::shared_ptr<const GraphCone> cone;
    std::vector<Point> atoms;     // right derivatives of the crossing curves
    std::vector<double> weights;  // probability weights of n_x
    double nu_density = 0;        // nu per unit length at x
    double dnu_dmu = 0;
    Point bar;  // Bar(n_x), apex when nothing crosses
    Point v;
    RigidityReport rigidity;

    double norm() const { return cone->radius(v); }
};

struct EmbeddingChecks {
    double dist_differential = 0;  // max |d_x dist_y(v(x)) - b(dist_y)(x)|
    double pointwise_norm = 0;     // max | |v(x)| - |b|(x) |
    double halfline = 0;     // max half-line defect of n_x
    double pushforward = 0;  // max |int h dn_x - h(Bar n_x)| for h = d_x dist_y
    double mass_identity = 0;
    int points = 0;
    int landmark_evaluations = 0;
};

struct TangentSection {
    GraphPtr graph;
    std::vector<FibrePoint> points;
    EmbeddingChecks checks;
};

struct EmbeddingOptions {
    int grid = 9;
    TieBreak tie = TieBreak::Lexicographic;
    int landmarks = 20;  // 0 skips the landmark checks
    std::uint64_t seed = 0;
    double rigidity_tol = 1e-9;
};

// Interior grid on every edge, margin L/100 from the ends.
std::vector<GraphPos> embedding_grid(const MetricGraph& g, int per_edge);

TangentSection build_embedding(const EdgeFlow& b, const EmbeddingOptions& opts = {});
// Same pipeline from a given decomposition of b (must reproduce b's flow).
TangentSection build_embedding(const EdgeFlow& b, const PathDecomposition& pi, const EmbeddingOptions& opts = {});

// max over grid points of the fibre distance between two sections.
double section_distance(const TangentSection& a, const TangentSection& b);

struct LinearityReport {
    double sum_defect = 0;            // d(F(b1+b2), F(b1) (+) F(b2))
    double distance_defect = 0;       // |d_x(F(b1), F(b2)) - |b1 - b2|(x)|
    double parallelogram_defect = 0;  // pointwise, absolute
    int points = 0;
};

LinearityReport verify_linearity(const EdgeFlow& b1, const EdgeFlow& b2, const EmbeddingOptions& opts = {});

struct HilbertPair {
    double norm_slack = 0;        // relative slack of the L2 parallelogram law
    double integrated_slack = 0;  // same law from the integrated pointwise norms
    LinearityReport linearity;
};

struct HilbertReport {
    std::vector<HilbertPair> pairs;
    double max_norm_slack = 0;
    double max_integrated_slack = 0;
    double max_linearity = 0;
    // counts of relative slacks per decade: [< 1e-16, 1e-16..1e-15, ..., >= 1e-8]
    std::vector<int> histogram;
};

// Pairs are drawn from `flows` when at least two are given, otherwise random
// flows are generated on g.
HilbertReport hilbertianity_report(const GraphPtr& g, const std::vector<EdgeFlow>& flows, int pairs,
                                   std::uint64_t seed, const EmbeddingOptions& opts = {});

}  // namespace hcat
