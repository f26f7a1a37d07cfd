#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hcat/curves.hpp"
#include "hcat/limits.hpp"
#include "hcat/space.hpp"

namespace hcat {

// Metric graph with reference measure = length measure times a per-edge
// density.
class MetricGraph {
public:
    MetricGraph(GraphGeometry geometry, std::vector<double> density, std::vector<std::string> names = {});

    const std::shared_ptr<GraphSpace>& space() const { return space_; }
    const GraphGeometry& geometry() const { return space_->geometry(); }
    int node_count() const { return geometry().vertex_count(); }
    int edge_count() const { return static_cast<int>(geometry().edges().size()); }
    double length(int e) const { return geometry().edges()[e].length; }
    double density(int e) const { return density_[e]; }
    const std::vector<double>& densities() const { return density_; }
    const std::vector<std::string>& names() const { return space_->names(); }

private:
    std::shared_ptr<GraphSpace> space_;
    std::vector<double> density_;
};

using GraphPtr = std::shared_ptr<const MetricGraph>;

// Test function on a metric graph, given edgewise: between consecutive
// kinks it is a polynomial of the given degree in the offset (-1: unknown).
struct GraphFunction {
    std::function<double(int, double)> at;
    std::function<double(int, double)> slope;  // right derivative in the offset
    std::function<std::vector<double>(int)> kinks;
    int degree = 1;

    double value(const GraphGeometry& g, const GraphPos& p) const;
};

GraphFunction constant_function(double c);
// Piecewise linear: node values plus optional interior knots (offset, value) per edge.
GraphFunction piecewise_linear(GraphPtr g, std::vector<double> node_values,
                               std::vector<std::vector<std::pair<double, double>>> knots = {});
GraphFunction distance_to(GraphPtr g, const GraphPos& y);
GraphFunction product(const GraphFunction& f, const GraphFunction& h);
GraphFunction sum(const GraphFunction& f, const GraphFunction& h);
GraphFunction smooth_function(std::function<double(int, double)> at, std::function<double(int, double)> slope);

// Discrete derivation: signed flow per edge (positive means u -> v).
class EdgeFlow {
public:
    EdgeFlow(GraphPtr g, std::vector<double> flow);

    const GraphPtr& graph() const { return g_; }
    const std::vector<double>& values() const { return flow_; }
    double value(int e) const { return flow_[e]; }
    // Net outflow at each node.
    std::vector<double> divergence() const;
    // b(f)(x) = flow/density * df/ds, x interior to an edge.
    double apply(const GraphFunction& f, const GraphPos& x) const;

    EdgeFlow operator+(const EdgeFlow& o) const;
    EdgeFlow operator-(const EdgeFlow& o) const;
    EdgeFlow operator*(double c) const;

private:
    GraphPtr g_;
    std::vector<double> flow_;
};

double derivation_norm(const EdgeFlow& b, const GraphPos& at);
double derivation_norm_via_landmarks(const EdgeFlow& b, const GraphPos& at, const std::vector<GraphPos>& landmarks);

struct Norm22 {
    double l2_norm = 0;
    double div_l2 = 0;
};
Norm22 derivation_norm_22(const EdgeFlow& b);

// Oriented integral of h df along edge e from offset a to offset c.
double edge_integral(int e, double a, double c, const GraphFunction& h, const GraphFunction& f);

// Normal 1-current T_b(g, f) = int g b(f) dmu.
class Current1 {
public:
    explicit Current1(EdgeFlow b) : b_(std::move(b)) {}
    double operator()(const GraphFunction& g, const GraphFunction& f) const;
    // Density of the mass measure with respect to length, per edge.
    std::vector<double> mass_density() const;
    double mass() const;
    // Boundary as node weights: T(1, f) = sum_n f(n) w_n.
    std::vector<double> boundary() const;
    // max over edges of | ||T||-density - |b| * density |.
    double mass_identity_defect() const;
    const EdgeFlow& derivation() const { return b_; }

private:
    EdgeFlow b_;
};

Current1 current_from_derivation(const EdgeFlow& b);

// [[c]](g, f) exactly, for curves in a graph space.
double curve_current_eval(const SampledCurve& c, const GraphFunction& g, const GraphFunction& f);
// Generic curves: limit of the left Riemann-Stieltjes sums
// sum_k g(c_{t_k}) (f(c_{t_{k+1}}) - f(c_{t_k})) on uniform partitions.
LimitEstimate curve_current_eval(const SampledCurve& c, const std::function<double(const Point&)>& g,
                                 const std::function<double(const Point&)>& f);

// A weighted edge path (or closed cycle) realized as a constant-speed curve.
struct FlowPath {
    std::vector<int> edges;
    std::vector<char> forward;
    int start = 0;
    int end = 0;
    double weight = 0;
    double length = 0;
    std::shared_ptr<const SampledCurve> curve;
};

// `forward` may be left empty when no edge is a loop.
FlowPath make_flow_path(const GraphPtr& g, int start, const std::vector<int>& edges, double weight,
                        std::vector<char> forward = {});

struct PathDecomposition {
    GraphPtr graph;
    std::vector<FlowPath> paths;
    std::vector<FlowPath> cycles;

    std::vector<const FlowPath*> all() const;
    // Signed sum of weighted traversals per edge.
    std::vector<double> edge_flow() const;
    // Unsigned sum of weighted traversals per edge.
    std::vector<double> edge_mass() const;
    // (e_1)_* pi - (e_0)_* pi as node weights.
    std::vector<double> boundary() const;
    double current(const GraphFunction& g, const GraphFunction& f) const;
};

enum class TieBreak { Lexicographic, Reverse };

PathDecomposition superpose(const EdgeFlow& b, TieBreak tie = TieBreak::Lexicographic);

// Instance generators.
GraphPtr random_metric_graph(int nodes, int extra_edges, std::uint64_t seed, bool unit_density = false);
GraphPtr tree_graph(const GraphSpace& tree, std::vector<double> density = {});
EdgeFlow random_flow(const GraphPtr& g, std::uint64_t seed);
GraphFunction random_pl_function(const GraphPtr& g, std::uint64_t seed, int max_knots = 2);

}  // namespace hcat
