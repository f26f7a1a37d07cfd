#include "hcat/graph_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GraphGeometry::GraphGeometry(int vertex_count, std::vector<GraphEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)), inc_(vertex_count) {
    if (n_ <= 0) fail(ErrorCode::InvalidArgument, "graph needs at least one vertex");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.u < 0 || ed.v < 0 || ed.u >= n_ || ed.v >= n_) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
        if (!(ed.length > 0.0) || !std::isfinite(ed.length)) fail(ErrorCode::InvalidArgument, "edge length must be positive");
        inc_[ed.u].push_back({static_cast<int>(e), true});
        inc_[ed.v].push_back({static_cast<int>(e), false});
    }
    d_.assign(static_cast<std::size_t>(n_) * n_, kInf);
    next_edge_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int a = 0; a < n_; ++a) d_[a * n_ + a] = 0.0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.u == ed.v) continue;
        if (ed.length < d_[ed.u * n_ + ed.v]) {
            d_[ed.u * n_ + ed.v] = d_[ed.v * n_ + ed.u] = ed.length;
            next_edge_[ed.u * n_ + ed.v] = next_edge_[ed.v * n_ + ed.u] = static_cast<int>(e);
        }
    }
    for (int k = 0; k < n_; ++k)
        for (int a = 0; a < n_; ++a) {
            double dak = d_[a * n_ + k];
            if (dak == kInf) continue;
            for (int b = 0; b < n_; ++b) {
                double cand = dak + d_[k * n_ + b];
                if (cand < d_[a * n_ + b]) {
                    d_[a * n_ + b] = cand;
                    next_edge_[a * n_ + b] = next_edge_[a * n_ + k];
                }
            }
        }
}

double GraphGeometry::total_length() const {
    double s = 0;
    for (const auto& e : edges_) s += e.length;
    return s;
}

void GraphGeometry::check(const GraphPos& p) const {
    if (p.edge >= 0) {
        if (p.edge >= static_cast<int>(edges_.size())) fail(ErrorCode::InvalidArgument, "edge index out of range");
        double L = edges_[p.edge].length;
        if (p.offset < -1e-12 * L || p.offset > L * (1 + 1e-12)) fail(ErrorCode::InvalidArgument, "offset outside edge");
    } else if (p.vertex < 0 || p.vertex >= n_) {
        fail(ErrorCode::InvalidArgument, "vertex index out of range");
    }
}

GraphPos GraphGeometry::normalize(GraphPos p) const {
    check(p);
    if (p.edge < 0) return {-1, p.vertex, 0.0};
    const auto& e = edges_[p.edge];
    if (p.offset <= 0.0) return {-1, e.u, 0.0};
    if (p.offset >= e.length) return {-1, e.v, 0.0};
    return p;
}

GraphPos GraphGeometry::vertex_pos(int v) const { return normalize({-1, v, 0.0}); }

GraphPos GraphGeometry::edge_pos(int e, double offset) const { return normalize({e, 0, offset}); }

bool GraphGeometry::same(const GraphPos& a, const GraphPos& b, double tol) const { return dist(a, b) <= tol; }

GraphGeometry::Route GraphGeometry::best_route(const GraphPos& p0, const GraphPos& q0) const {
    GraphPos p = normalize(p0), q = normalize(q0);
    Route best;
    if (p.edge >= 0 && p.edge == q.edge) {
        best.length = std::fabs(p.offset - q.offset);
    }
    auto exits = [&](const GraphPos& x) {
        std::vector<std::pair<int, double>> out;
        if (x.edge < 0) {
            out.push_back({x.vertex, 0.0});
        } else {
            const auto& e = edges_[x.edge];
            out.push_back({e.u, x.offset});
            out.push_back({e.v, e.length - x.offset});
        }
        return out;
    };
    for (auto [a, ca] : exits(p))
        for (auto [b, cb] : exits(q)) {
            double len = ca + d_[a * n_ + b] + cb;
            if (len < best.length) {
                best.length = len;
                best.exit_p = a;
                best.exit_q = b;
                best.cost_p = ca;
                best.cost_q = cb;
            }
        }
    return best;
}

double GraphGeometry::dist(const GraphPos& p, const GraphPos& q) const { return best_route(p, q).length; }

std::vector<Leg> GraphGeometry::path(const GraphPos& p0, const GraphPos& q0) const {
    GraphPos p = normalize(p0), q = normalize(q0);
    Route r = best_route(p, q);
    if (r.length == kInf) fail(ErrorCode::InvalidArgument, "points in different components");
    std::vector<Leg> legs;
    if (r.exit_p < 0) {
        if (p.offset != q.offset) legs.push_back({p.edge, p.offset, q.offset});
        return legs;
    }
    if (p.edge >= 0) {
        const auto& e = edges_[p.edge];
        legs.push_back({p.edge, p.offset, r.exit_p == e.u && r.cost_p == p.offset ? 0.0 : e.length});
    }
    int at = r.exit_p;
    while (at != r.exit_q) {
        int e = next_edge_[at * n_ + r.exit_q];
        const auto& ed = edges_[e];
        if (ed.u == at) {
            legs.push_back({e, 0.0, ed.length});
            at = ed.v;
        } else {
            legs.push_back({e, ed.length, 0.0});
            at = ed.u;
        }
    }
    if (q.edge >= 0) {
        const auto& e = edges_[q.edge];
        legs.push_back({q.edge, r.exit_q == e.u && r.cost_q == q.offset ? 0.0 : e.length, q.offset});
    }
    return legs;
}

GraphPos GraphGeometry::walk(const std::vector<Leg>& legs, double s) const {
    if (legs.empty()) fail(ErrorCode::InvalidArgument, "empty path");
    for (std::size_t i = 0; i < legs.size(); ++i) {
        const Leg& l = legs[i];
        double len = l.length();
        if (s <= len || i + 1 == legs.size()) {
            double frac = len > 0 ? std::clamp(s / len, 0.0, 1.0) : 0.0;
            return edge_pos(l.edge, l.from + (l.to - l.from) * frac);
        }
        s -= len;
    }
    return edge_pos(legs.back().edge, legs.back().to);
}

GraphPos GraphGeometry::along(const GraphPos& p, const GraphPos& q, double s) const {
    auto legs = path(p, q);
    if (legs.empty()) return normalize(p);
    if (s <= 0) return normalize(p);
    return walk(legs, s);
}

bool GraphGeometry::connected() const {
    for (int b = 0; b < n_; ++b)
        if (d_[b] == kInf) return false;
    return true;
}

bool GraphGeometry::is_forest() const { return girth() == kInf; }

double GraphGeometry::girth() const {
    double g = kInf;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.u == ed.v) {
            g = std::min(g, ed.length);
            continue;
        }
        // Shortest u-v route avoiding edge e.
        std::vector<double> dist(n_, kInf);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[ed.u] = 0;
        pq.push({0.0, ed.u});
        while (!pq.empty()) {
            auto [d, a] = pq.top();
            pq.pop();
            if (d > dist[a]) continue;
            for (const auto& in : inc_[a]) {
                if (in.edge == static_cast<int>(e)) continue;
                const auto& f = edges_[in.edge];
                int b = in.at_u ? f.v : f.u;
                if (d + f.length < dist[b]) {
                    dist[b] = d + f.length;
                    pq.push({dist[b], b});
                }
            }
        }
        g = std::min(g, ed.length + dist[ed.v]);
    }
    return g;
}

}  // namespace hcat
