#include "hcat/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "hcat/error.hpp"
#include "hcat/rng.hpp"

namespace hcat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> x(n), w(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1, p1 = 0;
            for (int k = 1; k <= n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1);
            double dz = p0 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2 / ((1 - z * z) * dp * dp);
    }
    return cache.emplace(n, std::make_pair(x, w)).first->second;
}

double gl(const std::function<double(double)>& h, double a, double b, int n) {
    const auto& [x, w] = gauss_legendre(n);
    double m = 0.5 * (a + b), r = 0.5 * (b - a), s = 0;
    for (int i = 0; i < n; ++i) s += w[i] * h(m + r * x[i]);
    return r * s;
}

double adaptive(const std::function<double(double)>& h, double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double l = gl(h, a, m, 10), r = gl(h, m, b, 10);
    if (std::fabs(l + r - whole) <= tol) return l + r;
    if (depth >= 40) fail(ErrorCode::QuadratureFailure, "adaptive quadrature did not settle");
    return adaptive(h, a, m, l, 0.5 * tol, depth + 1) + adaptive(h, m, b, r, 0.5 * tol, depth + 1);
}

std::vector<double> merge_kinks(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

GraphPos interior(const GraphGeometry& g, const GraphPos& x0) {
    GraphPos x = g.normalize(x0);
    if (x.edge < 0) fail(ErrorCode::NodePoint, "derivations are evaluated off the nodes");
    return x;
}

}  // namespace

MetricGraph::MetricGraph(GraphGeometry geometry, std::vector<double> density, std::vector<std::string> names)
    : space_(std::make_shared<GraphSpace>(std::move(geometry), std::move(names))), density_(std::move(density)) {
    if (density_.empty()) density_.assign(edge_count(), 1.0);
    if (static_cast<int>(density_.size()) != edge_count()) fail(ErrorCode::InvalidArgument, "one density per edge");
    for (double d : density_)
        if (!(d > 0) || !std::isfinite(d)) fail(ErrorCode::InvalidArgument, "densities must be positive");
}

double GraphFunction::value(const GraphGeometry& g, const GraphPos& p0) const {
    GraphPos p = g.normalize(p0);
    if (p.edge >= 0) return at(p.edge, p.offset);
    for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        if (g.edges()[e].u == p.vertex) return at(e, 0.0);
        if (g.edges()[e].v == p.vertex) return at(e, g.edges()[e].length);
    }
    fail(ErrorCode::InvalidArgument, "isolated vertex");
}

GraphFunction constant_function(double c) {
    return {[c](int, double) { return c; }, [](int, double) { return 0.0; },
            [](int) { return std::vector<double>{}; }, 0};
}

GraphFunction piecewise_linear(GraphPtr g, std::vector<double> node_values,
                               std::vector<std::vector<std::pair<double, double>>> knots) {
    if (static_cast<int>(node_values.size()) != g->node_count()) fail(ErrorCode::InvalidArgument, "one value per node");
    knots.resize(g->edge_count());
    // per edge: sorted (offset, value) including both ends
    auto table = std::make_shared<std::vector<std::vector<std::pair<double, double>>>>();
    for (int e = 0; e < g->edge_count(); ++e) {
        const auto& ed = g->geometry().edges()[e];
        std::vector<std::pair<double, double>> t{{0.0, node_values[ed.u]}};
        auto k = knots[e];
        std::sort(k.begin(), k.end());
        for (const auto& [s, v] : k) {
            if (!(s > t.back().first) || !(s < ed.length)) fail(ErrorCode::InvalidArgument, "knots must be interior and distinct");
            t.push_back({s, v});
        }
        t.push_back({ed.length, node_values[ed.v]});
        table->push_back(std::move(t));
    }
    auto piece = [table](int e, double s) {
        const auto& t = (*table)[e];
        std::size_t i = 0;
        while (i + 2 < t.size() && s >= t[i + 1].first) ++i;
        return i;
    };
    GraphFunction f;
    f.at = [table, piece](int e, double s) {
        const auto& t = (*table)[e];
        std::size_t i = piece(e, s);
        double a = t[i].first, b = t[i + 1].first;
        double lam = (s - a) / (b - a);
        return (1 - lam) * t[i].second + lam * t[i + 1].second;
    };
    f.slope = [table, piece](int e, double s) {
        const auto& t = (*table)[e];
        std::size_t i = piece(e, s);
        return (t[i + 1].second - t[i].second) / (t[i + 1].first - t[i].first);
    };
    f.kinks = [table](int e) {
        std::vector<double> out;
        const auto& t = (*table)[e];
        for (std::size_t i = 1; i + 1 < t.size(); ++i) out.push_back(t[i].first);
        return out;
    };
    f.degree = 1;
    return f;
}

GraphFunction distance_to(GraphPtr g, const GraphPos& y0) {
    GraphPos y = g->geometry().normalize(y0);
    struct Branches {
        double L, du, dv;
        bool on;
        double a;
    };
    auto branches = [g, y](int e) {
        const auto& geo = g->geometry();
        const auto& ed = geo.edges()[e];
        Branches b{ed.length, geo.dist(geo.vertex_pos(ed.u), y), geo.dist(geo.vertex_pos(ed.v), y), y.edge == e,
                   y.offset};
        return b;
    };
    GraphFunction f;
    f.at = [g, y](int e, double s) { return g->geometry().dist(g->geometry().edge_pos(e, s), y); };
    f.slope = [branches](int e, double s) {
        Branches b = branches(e);
        // (value, right slope) of each candidate route
        std::vector<std::pair<double, double>> c{{s + b.du, 1.0}, {b.L - s + b.dv, -1.0}};
        if (b.on) c.push_back({std::fabs(s - b.a), s < b.a ? -1.0 : 1.0});
        double m = kInf;
        for (auto& [v, _] : c) m = std::min(m, v);
        double slope = kInf;
        for (auto& [v, sl] : c)
            if (v <= m + 1e-13 * (1 + m)) slope = std::min(slope, sl);
        return slope;
    };
    f.kinks = [branches](int e) {
        Branches b = branches(e);
        std::vector<double> k{(b.L + b.dv - b.du) / 2};
        if (b.on) {
            k.push_back(b.a);
            k.push_back((b.a - b.du) / 2);
            k.push_back((b.L + b.dv + b.a) / 2);
        }
        std::vector<double> out;
        for (double s : k)
            if (s > 0 && s < b.L) out.push_back(s);
        std::sort(out.begin(), out.end());
        return out;
    };
    f.degree = 1;
    return f;
}

GraphFunction product(const GraphFunction& f, const GraphFunction& h) {
    GraphFunction p;
    p.at = [f, h](int e, double s) { return f.at(e, s) * h.at(e, s); };
    p.slope = [f, h](int e, double s) { return f.slope(e, s) * h.at(e, s) + f.at(e, s) * h.slope(e, s); };
    p.kinks = [f, h](int e) { return merge_kinks(f.kinks(e), h.kinks(e)); };
    p.degree = (f.degree < 0 || h.degree < 0) ? -1 : f.degree + h.degree;
    return p;
}

GraphFunction sum(const GraphFunction& f, const GraphFunction& h) {
    GraphFunction p;
    p.at = [f, h](int e, double s) { return f.at(e, s) + h.at(e, s); };
    p.slope = [f, h](int e, double s) { return f.slope(e, s) + h.slope(e, s); };
    p.kinks = [f, h](int e) { return merge_kinks(f.kinks(e), h.kinks(e)); };
    p.degree = (f.degree < 0 || h.degree < 0) ? -1 : std::max(f.degree, h.degree);
    return p;
}

GraphFunction smooth_function(std::function<double(int, double)> at, std::function<double(int, double)> slope) {
    return {std::move(at), std::move(slope), [](int) { return std::vector<double>{}; }, -1};
}

EdgeFlow::EdgeFlow(GraphPtr g, std::vector<double> flow) : g_(std::move(g)), flow_(std::move(flow)) {
    if (!g_) fail(ErrorCode::InvalidArgument, "flow without a graph");
    if (static_cast<int>(flow_.size()) != g_->edge_count()) fail(ErrorCode::InvalidArgument, "one flow value per edge");
    for (double v : flow_)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "flow values must be finite");
}

std::vector<double> EdgeFlow::divergence() const {
    std::vector<double> d(g_->node_count(), 0.0);
    for (int e = 0; e < g_->edge_count(); ++e) {
        const auto& ed = g_->geometry().edges()[e];
        d[ed.u] += flow_[e];
        d[ed.v] -= flow_[e];
    }
    return d;
}

double EdgeFlow::apply(const GraphFunction& f, const GraphPos& x0) const {
    GraphPos x = interior(g_->geometry(), x0);
    return flow_[x.edge] / g_->density(x.edge) * f.slope(x.edge, x.offset);
}

EdgeFlow EdgeFlow::operator+(const EdgeFlow& o) const {
    if (o.g_ != g_) fail(ErrorCode::CrossSpace, "flows on different graphs");
    std::vector<double> v(flow_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.flow_[i];
    return EdgeFlow(g_, v);
}

EdgeFlow EdgeFlow::operator-(const EdgeFlow& o) const { return *this + o * -1.0; }

EdgeFlow EdgeFlow::operator*(double c) const {
    std::vector<double> v(flow_);
    for (double& x : v) x *= c;
    return EdgeFlow(g_, v);
}

double derivation_norm(const EdgeFlow& b, const GraphPos& at) {
    GraphPos x = interior(b.graph()->geometry(), at);
    return std::fabs(b.value(x.edge)) / b.graph()->density(x.edge);
}

double derivation_norm_via_landmarks(const EdgeFlow& b, const GraphPos& at, const std::vector<GraphPos>& landmarks) {
    interior(b.graph()->geometry(), at);
    double best = -kInf;
    for (const auto& y : landmarks) best = std::max(best, b.apply(distance_to(b.graph(), y), at));
    return best;
}

Norm22 derivation_norm_22(const EdgeFlow& b) {
    const auto& g = *b.graph();
    Norm22 n;
    for (int e = 0; e < g.edge_count(); ++e) n.l2_norm += b.value(e) * b.value(e) * g.length(e) / g.density(e);
    for (double d : b.divergence()) n.div_l2 += d * d;
    n.l2_norm = std::sqrt(n.l2_norm);
    n.div_l2 = std::sqrt(n.div_l2);
    return n;
}

double edge_integral(int e, double a, double c, const GraphFunction& h, const GraphFunction& f) {
    if (a == c) return 0.0;
    double sign = a < c ? 1.0 : -1.0;
    double lo = std::min(a, c), hi = std::max(a, c);
    std::vector<double> cuts{lo};
    for (double k : merge_kinks(h.kinks(e), f.kinks(e)))
        if (k > lo && k < hi) cuts.push_back(k);
    cuts.push_back(hi);
    std::function<double(double)> integrand = [&](double s) { return h.at(e, s) * f.slope(e, s); };
    double total = 0;
    bool exact = h.degree >= 0 && f.degree >= 0;
    int deg = exact ? h.degree + std::max(f.degree - 1, 0) : 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double s0 = cuts[i], s1 = cuts[i + 1];
        if (exact) {
            total += gl(integrand, s0, s1, deg / 2 + 1);
        } else {
            double whole = gl(integrand, s0, s1, 10);
            total += adaptive(integrand, s0, s1, whole, 1e-13 * (1 + std::fabs(whole)), 0);
        }
    }
    return sign * total;
}

double Current1::operator()(const GraphFunction& g, const GraphFunction& f) const {
    const auto& G = *b_.graph();
    double t = 0;
    for (int e = 0; e < G.edge_count(); ++e)
        if (b_.value(e) != 0.0) t += b_.value(e) * edge_integral(e, 0.0, G.length(e), g, f);
    return t;
}

std::vector<double> Current1::mass_density() const {
    std::vector<double> m;
    for (double v : b_.values()) m.push_back(std::fabs(v));
    return m;
}

double Current1::mass() const {
    double m = 0;
    for (int e = 0; e < b_.graph()->edge_count(); ++e) m += std::fabs(b_.value(e)) * b_.graph()->length(e);
    return m;
}

std::vector<double> Current1::boundary() const {
    auto d = b_.divergence();
    for (double& x : d) x = -x;
    return d;
}

double Current1::mass_identity_defect() const {
    const auto& G = *b_.graph();
    double worst = 0;
    for (int e = 0; e < G.edge_count(); ++e) {
        // T(1_e, f_e) with f_e of unit slope along e attains the mass of e
        double sg = b_.value(e) >= 0 ? 1.0 : -1.0;
        GraphFunction ind{[e](int k, double) { return k == e ? 1.0 : 0.0; }, [](int, double) { return 0.0; },
                          [](int) { return std::vector<double>{}; }, 0};
        GraphFunction lin{[e, sg](int k, double s) { return k == e ? sg * s : 0.0; },
                          [e, sg](int k, double) { return k == e ? sg : 0.0; },
                          [](int) { return std::vector<double>{}; }, 1};
        double on_edge = (*this)(ind, lin) / G.length(e);
        double expected = std::fabs(b_.value(e)) / G.density(e) * G.density(e);
        worst = std::max(worst, std::fabs(on_edge - expected));
    }
    return worst;
}

Current1 current_from_derivation(const EdgeFlow& b) { return Current1(b); }

double curve_current_eval(const SampledCurve& c, const GraphFunction& g, const GraphFunction& f) {
    auto* gs = dynamic_cast<const GraphSpace*>(&c.space());
    if (!gs) fail(ErrorCode::InvalidArgument, "exact curve currents need a graph curve");
    double t = 0;
    for (std::size_t k = 0; k < c.segments(); ++k)
        for (const auto& leg : gs->path(c.points()[k], c.points()[k + 1]))
            t += edge_integral(leg.edge, leg.from, leg.to, g, f);
    return t;
}

LimitEstimate curve_current_eval(const SampledCurve& c, const std::function<double(const Point&)>& g,
                                 const std::function<double(const Point&)>& f) {
    double scale = std::fabs(f(c(0.0))) + std::fabs(f(c(1.0))) + 1;
    auto sample = [&](double h) {
        int n = static_cast<int>(std::lround(1.0 / h));
        double s = 0;
        double fprev = f(c(0.0));
        for (int k = 0; k < n; ++k) {
            double fnext = f(c(double(k + 1) / n));
            s += g(c(double(k) / n)) * (fnext - fprev);
            fprev = fnext;
        }
        return s;
    };
    LimitOptions o;
    o.halvings = 8;
    o.max_halvings = 14;
    o.rel_tol = 1e-9;
    o.noise = 1e-15 * scale;
    return richardson_limit(sample, 1.0 / 16, o);
}

FlowPath make_flow_path(const GraphPtr& g, int start, const std::vector<int>& edges, double weight,
                        std::vector<char> forward) {
    if (edges.empty()) fail(ErrorCode::InvalidArgument, "a flow path needs at least one edge");
    if (!(weight > 0)) fail(ErrorCode::InvalidArgument, "path weights must be positive");
    const auto& geo = g->geometry();
    FlowPath p;
    p.start = start;
    p.weight = weight;
    p.edges = edges;
    int cur = start;
    std::vector<Point> pts{g->space()->vertex(start)};
    std::vector<double> arc{0.0};
    for (std::size_t i = 0; i < edges.size(); ++i) {
        int e = edges[i];
        if (e < 0 || e >= g->edge_count()) fail(ErrorCode::InvalidArgument, "edge index out of range");
        const auto& ed = geo.edges()[e];
        bool fwd;
        if (i < forward.size()) {
            fwd = forward[i] != 0;
            if ((fwd ? ed.u : ed.v) != cur) fail(ErrorCode::InvalidArgument, "path edges are not consecutive");
        } else if (ed.u == cur) {
            fwd = true;
        } else if (ed.v == cur) {
            fwd = false;
        } else {
            fail(ErrorCode::InvalidArgument, "path edges are not consecutive");
        }
        p.forward.push_back(fwd ? 1 : 0);
        double L = ed.length;
        // thirds keep every sampled segment the unique geodesic, loops included
        for (double frac : {1.0 / 3.0, 2.0 / 3.0}) {
            pts.push_back(g->space()->on_edge(e, fwd ? frac * L : (1 - frac) * L));
            arc.push_back(arc.back() + L / 3);
        }
        cur = fwd ? ed.v : ed.u;
        pts.push_back(g->space()->vertex(cur));
        arc.push_back(p.length + L);
        p.length += L;
    }
    p.end = cur;
    for (double& a : arc) a /= p.length;
    arc.back() = 1.0;
    p.curve = std::make_shared<const SampledCurve>(g->space(), arc, pts);
    return p;
}

std::vector<const FlowPath*> PathDecomposition::all() const {
    std::vector<const FlowPath*> out;
    for (const auto& p : paths) out.push_back(&p);
    for (const auto& p : cycles) out.push_back(&p);
    return out;
}

std::vector<double> PathDecomposition::edge_flow() const {
    std::vector<double> f(graph->edge_count(), 0.0);
    for (const auto* p : all())
        for (std::size_t i = 0; i < p->edges.size(); ++i) f[p->edges[i]] += p->forward[i] ? p->weight : -p->weight;
    return f;
}

std::vector<double> PathDecomposition::edge_mass() const {
    std::vector<double> f(graph->edge_count(), 0.0);
    for (const auto* p : all())
        for (int e : p->edges) f[e] += p->weight;
    return f;
}

std::vector<double> PathDecomposition::boundary() const {
    std::vector<double> b(graph->node_count(), 0.0);
    for (const auto* p : all()) {
        b[p->end] += p->weight;
        b[p->start] -= p->weight;
    }
    return b;
}

double PathDecomposition::current(const GraphFunction& g, const GraphFunction& f) const {
    double t = 0;
    for (const auto* p : all()) t += p->weight * curve_current_eval(*p->curve, g, f);
    return t;
}

PathDecomposition superpose(const EdgeFlow& b, TieBreak tie) {
    const auto& G = *b.graph();
    const auto& geo = G.geometry();
    int n = G.node_count(), m = G.edge_count();
    double scale = 0;
    for (double v : b.values()) scale = std::max(scale, std::fabs(v));
    double eps = 1e-13 * scale;
    std::vector<double> res(m);
    for (int e = 0; e < m; ++e) res[e] = std::fabs(b.value(e)) > eps ? std::fabs(b.value(e)) : 0.0;
    auto tail = [&](int e) { return b.value(e) >= 0 ? geo.edges()[e].u : geo.edges()[e].v; };
    auto head = [&](int e) { return b.value(e) >= 0 ? geo.edges()[e].v : geo.edges()[e].u; };
    std::vector<double> excess = b.divergence();  // > 0 at sources
    for (double& x : excess)
        if (std::fabs(x) <= eps) x = 0.0;
    // node ranks for deterministic tie-breaking
    auto rank = [&](int v) { return tie == TieBreak::Lexicographic ? v : n - 1 - v; };
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[rank(v)] = v;

    PathDecomposition out;
    out.graph = b.graph();
    while (true) {
        double best_w = 0;
        int best_src = -1, best_dst = -1;
        std::vector<int> best_pred;
        for (int src : order) {
            if (excess[src] <= 0) continue;
            // widest path from src over positive residual arcs
            std::vector<double> width(n, 0.0);
            std::vector<int> pred(n, -1);
            std::vector<char> done(n, 0);
            width[src] = kInf;
            for (int it = 0; it < n; ++it) {
                int u = -1;
                for (int v : order)
                    if (!done[v] && width[v] > 0 && (u < 0 || width[v] > width[u])) u = v;
                if (u < 0) break;
                done[u] = 1;
                for (const auto& inc : geo.incidences(u)) {
                    int e = inc.edge;
                    if (res[e] <= 0 || tail(e) != u) continue;
                    int v = head(e);
                    double w = std::min(width[u], res[e]);
                    if (!done[v] && w > width[v]) {
                        width[v] = w;
                        pred[v] = e;
                    }
                }
            }
            for (int dst : order) {
                if (excess[dst] >= 0 || dst == src || width[dst] <= 0) continue;
                double w = std::min({width[dst], excess[src], -excess[dst]});
                if (w > best_w) {
                    best_w = w;
                    best_src = src;
                    best_dst = dst;
                    best_pred = pred;
                }
            }
        }
        if (best_src < 0) break;
        std::vector<int> edges;
        for (int v = best_dst; v != best_src;) {
            int e = best_pred[v];
            edges.push_back(e);
            v = tail(e);
        }
        std::reverse(edges.begin(), edges.end());
        std::vector<char> fwd;
        for (int e : edges) {
            fwd.push_back(b.value(e) >= 0 ? 1 : 0);
            res[e] = res[e] - best_w <= eps ? 0.0 : res[e] - best_w;
        }
        excess[best_src] = excess[best_src] - best_w <= eps ? 0.0 : excess[best_src] - best_w;
        excess[best_dst] = excess[best_dst] + best_w >= -eps ? 0.0 : excess[best_dst] + best_w;
        out.paths.push_back(make_flow_path(b.graph(), best_src, edges, best_w, fwd));
    }

    // what is left is a circulation: peel off cycles
    std::vector<int> edge_order(m);
    for (int e = 0; e < m; ++e) edge_order[e] = tie == TieBreak::Lexicographic ? e : m - 1 - e;
    while (true) {
        int e0 = -1;
        for (int e : edge_order)
            if (res[e] > 0) {
                e0 = e;
                break;
            }
        if (e0 < 0) break;
        std::vector<int> walk{e0};
        std::vector<int> seen(n, -1);
        seen[tail(e0)] = 0;
        int cur = head(e0);
        bool stuck = false;
        while (seen[cur] < 0) {
            seen[cur] = static_cast<int>(walk.size());
            int next = -1;
            for (int e : edge_order)
                if (res[e] > 0 && tail(e) == cur) {
                    next = e;
                    break;
                }
            if (next < 0) {
                stuck = true;
                break;
            }
            walk.push_back(next);
            cur = head(next);
        }
        if (stuck) {
            // rounding leftovers below eps have no continuation
            for (int e : walk) res[e] = res[e] <= 1e3 * eps ? 0.0 : res[e];
            if (res[walk.back()] > 0) fail(ErrorCode::InvalidArgument, "residual flow is not a circulation");
            continue;
        }
        std::vector<int> cyc(walk.begin() + seen[cur], walk.end());
        double w = kInf;
        for (int e : cyc) w = std::min(w, res[e]);
        std::vector<char> fwd;
        for (int e : cyc) {
            fwd.push_back(b.value(e) >= 0 ? 1 : 0);
            res[e] = res[e] - w <= eps ? 0.0 : res[e] - w;
        }
        out.cycles.push_back(make_flow_path(b.graph(), cur, cyc, w, fwd));
    }
    return out;
}

GraphPtr random_metric_graph(int nodes, int extra_edges, std::uint64_t seed, bool unit_density) {
    if (nodes < 2) fail(ErrorCode::InvalidArgument, "need at least two nodes");
    CounterRng rng(seed, 0x6a);
    std::vector<GraphEdge> edges;
    for (int v = 1; v < nodes; ++v)
        edges.push_back({static_cast<int>(rng.index(v)), v, 0.5 + rng.uniform()});
    for (int k = 0; k < extra_edges; ++k) {
        int a = static_cast<int>(rng.index(nodes));
        int b = static_cast<int>(rng.index(nodes - 1));
        if (b >= a) ++b;
        edges.push_back({a, b, 0.5 + rng.uniform()});
    }
    std::vector<double> dens;
    for (std::size_t e = 0; e < edges.size(); ++e) dens.push_back(unit_density ? 1.0 : rng.uniform(0.5, 2.0));
    return std::make_shared<MetricGraph>(GraphGeometry(nodes, edges), dens);
}

GraphPtr tree_graph(const GraphSpace& tree, std::vector<double> density) {
    return std::make_shared<MetricGraph>(tree.geometry(), std::move(density), tree.names());
}

EdgeFlow random_flow(const GraphPtr& g, std::uint64_t seed) {
    CounterRng rng(seed, 0x6b);
    std::vector<double> v;
    for (int e = 0; e < g->edge_count(); ++e) v.push_back(rng.uniform() < 0.15 ? 0.0 : rng.uniform(-1.0, 1.0));
    return EdgeFlow(g, v);
}

GraphFunction random_pl_function(const GraphPtr& g, std::uint64_t seed, int max_knots) {
    CounterRng rng(seed, 0x6c);
    std::vector<double> nodes;
    for (int v = 0; v < g->node_count(); ++v) nodes.push_back(rng.uniform(-1.0, 1.0));
    std::vector<std::vector<std::pair<double, double>>> knots(g->edge_count());
    for (int e = 0; e < g->edge_count(); ++e) {
        int k = static_cast<int>(rng.index(max_knots + 1));
        std::vector<double> offs;
        for (int i = 0; i < k; ++i) offs.push_back(rng.uniform(0.05, 0.95) * g->length(e));
        std::sort(offs.begin(), offs.end());
        for (double s : offs)
            if (knots[e].empty() || s > knots[e].back().first + 1e-9) knots[e].push_back({s, rng.uniform(-1.0, 1.0)});
    }
    return piecewise_linear(g, nodes, knots);
}

}  // namespace hcat
