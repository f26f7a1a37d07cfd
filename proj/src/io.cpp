#include "hcat/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "hcat/error.hpp"
#include "hcat/instances.hpp"

namespace hcat {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::ConfigError, msg); }

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        bad(std::string(what) + ": " + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        bad(std::string(what) + ": " + e.what());
    }
}

struct NamedGraph {
    std::vector<std::string> names;
    std::vector<GraphEdge> edges;
};

NamedGraph named_edges(const json& j) {
    NamedGraph g;
    std::map<std::string, int> idx;
    auto node = [&](const std::string& n) {
        auto it = idx.find(n);
        if (it != idx.end()) return it->second;
        int k = static_cast<int>(g.names.size());
        idx[n] = k;
        g.names.push_back(n);
        return k;
    };
    if (j.contains("nodes"))
        for (const auto& n : j.at("nodes")) node(n.get<std::string>());
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) bad("edges are [a, b, length] triples");
        g.edges.push_back({node(e[0].get<std::string>()), node(e[1].get<std::string>()), e[2].get<double>()});
    }
    if (g.edges.empty()) bad("graph without edges");
    return g;
}

int node_by_name(const std::vector<std::string>& names, const std::string& n) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<int>(i);
    bad("unknown node '" + n + "'");
}

}  // namespace

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        bad("malformed JSON in " + path + ": " + e.what());
    }
}

SpacePtr space_from_json(const json& j) {
    return guarded("space descriptor", [&]() -> SpacePtr {
        std::string type = j.at("type").get<std::string>();
        if (type == "model") {
            double r = j.value("sample_radius", -1.0);
            return std::make_shared<ModelSpace>(Kappa{j.at("kappa").get<double>()}, r);
        }
        if (type == "tree" || type == "graph") {
            auto g = named_edges(j);
            auto s = std::make_shared<GraphSpace>(GraphGeometry(static_cast<int>(g.names.size()), g.edges), g.names);
            if (type == "tree" && !s->geometry().is_forest()) bad("tree descriptor contains a cycle");
            return s;
        }
        if (type == "cone") {
            auto d = j.at("base_distances").get<std::vector<std::vector<double>>>();
            return cone_over_points(d, j.value("sample_radius", 2.0));
        }
        if (type == "tripod") return make_tripod(j.value("leg", 1.0));
        if (type == "random_tree") return make_random_tree(j.at("edges").get<int>(), j.value("seed", 0ULL));
        bad("unknown space type '" + type + "'");
    });
}

Point point_from_json(const Space& s, const json& j) {
    return guarded("point", [&]() -> Point {
        if (auto* m = dynamic_cast<const ModelSpace*>(&s)) {
            if (j.contains("polar")) return m->polar(j.at("polar")[0].get<double>(), j.at("polar")[1].get<double>());
            if (j.contains("xy")) {
                if (m->kappa().value != 0.0) bad("xy points need kappa = 0");
                return m->make({m->kappa(), {j.at("xy")[0].get<double>(), j.at("xy")[1].get<double>(), 0.0}});
            }
            auto c = j.at("coords").get<std::vector<double>>();
            if (c.size() != 3) bad("coords need three entries");
            return m->make({m->kappa(), {c[0], c[1], c[2]}});
        }
        if (auto* g = dynamic_cast<const GraphSpace*>(&s)) {
            if (j.contains("node")) return g->vertex(g->vertex_index(j.at("node").get<std::string>()));
            const auto& e = j.at("edge");
            int idx;
            if (e.is_array()) {
                int a = g->vertex_index(e[0].get<std::string>()), b = g->vertex_index(e[1].get<std::string>());
                idx = -1;
                const auto& edges = g->geometry().edges();
                for (std::size_t k = 0; k < edges.size(); ++k)
                    if (edges[k].u == a && edges[k].v == b) {
                        idx = static_cast<int>(k);
                        break;
                    }
                if (idx < 0) bad("no edge between the named nodes in that order");
            } else {
                idx = e.get<int>();
            }
            return g->on_edge(idx, j.at("offset").get<double>());
        }
        if (auto* c = dynamic_cast<const GraphCone*>(&s)) {
            double r = j.at("r").get<double>();
            if (j.contains("vertex")) return c->make(r, c->base().vertex_pos(j.at("vertex").get<int>()));
            return c->make(r, c->base().edge_pos(j.at("edge").get<int>(), j.at("offset").get<double>()));
        }
        bad("points of this space cannot be read");
    });
}

json point_to_json(const Space& s, const Point& p) {
    if (auto* m = dynamic_cast<const ModelSpace*>(&s)) {
        json j;
        if (m->kappa().value == 0.0)
            j["xy"] = {p.c[0], p.c[1]};
        else
            j["coords"] = {p.c[0], p.c[1], p.c[2]};
        return j;
    }
    if (auto* g = dynamic_cast<const GraphSpace*>(&s)) {
        GraphPos q = g->pos(p);
        if (q.edge < 0) return json{{"node", g->names()[q.vertex]}};
        return json{{"edge", q.edge}, {"offset", q.offset}};
    }
    if (auto* c = dynamic_cast<const GraphCone*>(&s)) {
        GraphPos q = c->base_pos(p);
        json j{{"r", c->radius(p)}};
        if (q.edge < 0)
            j["vertex"] = q.vertex;
        else {
            j["edge"] = q.edge;
            j["offset"] = q.offset;
        }
        return j;
    }
    return json{{"describe", s.describe(p)}};
}

DiscreteMeasure measure_from_json(SpacePtr s, const json& j) {
    return guarded("measure", [&]() {
        std::vector<Point> pts;
        std::vector<double> w;
        for (const auto& a : j.at("atoms")) {
            pts.push_back(point_from_json(*s, a.at("point")));
            w.push_back(a.value("weight", 1.0));
        }
        return DiscreteMeasure(s, pts, w);
    });
}

SampledCurve curve_from_json(SpacePtr s, const json& j) {
    return guarded("curve", [&]() {
        auto t = j.at("times").get<std::vector<double>>();
        std::vector<Point> pts;
        for (const auto& p : j.at("points")) pts.push_back(point_from_json(*s, p));
        return SampledCurve(s, t, pts);
    });
}

GraphPtr graph_from_json(const json& j) {
    return guarded("graph", [&]() -> GraphPtr {
        if (j.contains("type") && j.at("type") != "tree" && j.at("type") != "graph") {
            auto s = space_from_json(j);
            auto* g = dynamic_cast<const GraphSpace*>(s.get());
            if (!g) bad("graph descriptor must describe a metric graph");
            return std::make_shared<MetricGraph>(g->geometry(), j.value("density", std::vector<double>{}), g->names());
        }
        auto g = named_edges(j);
        return std::make_shared<MetricGraph>(GraphGeometry(static_cast<int>(g.names.size()), g.edges),
                                             j.value("density", std::vector<double>{}), g.names);
    });
}

EdgeFlow flow_from_json(const GraphPtr& g, const json& j) {
    return guarded("flow", [&]() {
        if (j.contains("values")) return EdgeFlow(g, j.at("values").get<std::vector<double>>());
        std::vector<double> v(g->edge_count(), 0.0);
        std::vector<char> set(g->edge_count(), 0);
        const auto& edges = g->geometry().edges();
        for (const auto& f : j.at("flow")) {
            if (!f.is_array() || f.size() != 3) bad("flow entries are [a, b, value] triples");
            int a = node_by_name(g->names(), f[0].get<std::string>());
            int b = node_by_name(g->names(), f[1].get<std::string>());
            double val = f[2].get<double>();
            int hit = -1;
            double sign = 1;
            for (std::size_t k = 0; k < edges.size(); ++k) {
                bool fwd = edges[k].u == a && edges[k].v == b, rev = edges[k].u == b && edges[k].v == a;
                if (!fwd && !rev) continue;
                if (hit >= 0) bad("parallel edges: give the flow as per-edge \"values\"");
                hit = static_cast<int>(k);
                sign = fwd ? 1.0 : -1.0;
            }
            if (hit < 0) bad("flow on a missing edge " + f[0].get<std::string>() + "-" + f[1].get<std::string>());
            if (set[hit]) bad("flow listed twice on one edge");
            set[hit] = 1;
            v[hit] = sign * val;
        }
        return EdgeFlow(g, v);
    });
}

json graph_to_json(const MetricGraph& g) {
    json j;
    j["nodes"] = g.names();
    j["edges"] = json::array();
    for (const auto& e : g.geometry().edges()) j["edges"].push_back({g.names()[e.u], g.names()[e.v], e.length});
    j["density"] = g.densities();
    return j;
}

json flow_to_json(const EdgeFlow& b) {
    const auto& g = *b.graph();
    json j;
    j["flow"] = json::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.geometry().edges()[e];
        j["flow"].push_back({g.names()[ed.u], g.names()[ed.v], b.value(e)});
    }
    return j;
}

}  // namespace hcat
