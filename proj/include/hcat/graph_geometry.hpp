#pragma once

#include <limits>
#include <vector>

namespace hcat {

struct GraphEdge {
    int u = 0;
    int v = 0;
    double length = 1.0;
};

// A position on a metric graph: either a vertex (edge == -1) or a point at
// arclength `offset` from edge u along edge e.
struct GraphPos {
    int edge = -1;
    int vertex = 0;
    double offset = 0.0;
};

struct Incidence {
    int edge;
    bool at_u;  // leaving through the u end means moving with increasing offset
};

// Traversal of part of one edge, from offset `from` to offset `to`.
struct Leg {
    int edge;
    double from;
    double to;
    double length() const { return from < to ? to - from : from - to; }
};

class GraphGeometry {
public:
    GraphGeometry(int vertex_count, std::vector<GraphEdge> edges);

    int vertex_count() const { return n_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const std::vector<Incidence>& incidences(int v) const { return inc_[v]; }
    double total_length() const;

    GraphPos normalize(GraphPos p) const;
    GraphPos vertex_pos(int v) const;
    GraphPos edge_pos(int e, double offset) const;
    bool same(const GraphPos& a, const GraphPos& b, double tol = 0.0) const;

    double node_dist(int a, int b) const { return d_[a * n_ + b]; }
    double dist(const GraphPos& p, const GraphPos& q) const;
    std::vector<Leg> path(const GraphPos& p, const GraphPos& q) const;
    GraphPos along(const GraphPos& p, const GraphPos& q, double s) const;
    GraphPos walk(const std::vector<Leg>& legs, double s) const;

    bool connected() const;
    bool is_forest() const;
    double girth() const;  // infinity for forests

private:
    struct Route {
        double length = std::numeric_limits<double>::infinity();
        int exit_p = -1, exit_q = -1;  // -1: direct along a shared edge
        double cost_p = 0, cost_q = 0;
    };
    Route best_route(const GraphPos& p, const GraphPos& q) const;
    void check(const GraphPos& p) const;

    int n_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<Incidence>> inc_;
    std::vector<double> d_;
    std::vector<int> next_edge_;  // first edge on a shortest path a -> b
};

}  // namespace hcat
