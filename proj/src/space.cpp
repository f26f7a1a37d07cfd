#include "hcat/space.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hcat/error.hpp"

namespace hcat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::atomic<SpaceId> g_next_id{1};

using Vec3 = std::array<double, 3>;

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double mdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }
Vec3 axpy(double s, const Vec3& x, const Vec3& y) { return {s * x[0] + y[0], s * x[1] + y[1], s * x[2] + y[2]}; }
Vec3 scaled(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }

std::string fmt_pos(const GraphPos& p) {
    std::ostringstream os;
    if (p.edge < 0) os << "v" << p.vertex;
    else os << "e" << p.edge << "@" << p.offset;
    return os.str();
}

}  // namespace

Space::Space() : id_(g_next_id.fetch_add(1)) {}

void Space::own(const Point& p) const {
    if (p.space != id_) fail(ErrorCode::CrossSpace, "point belongs to another space");
}

// ---------------------------------------------------------------- shared cones

GraphPos circle_pos(double angle) {
    angle = std::fmod(angle, kTwoPi);
    if (angle < 0) angle += kTwoPi;
    if (angle == 0.0 || angle >= kTwoPi) return {-1, 0, 0.0};
    return {0, 0, angle};
}

double circle_angle(const GraphPos& p) { return p.edge < 0 ? 0.0 : p.offset; }

std::shared_ptr<const GraphCone> circle_cone() {
    static const auto cone = std::make_shared<const GraphCone>(
        std::make_shared<const GraphGeometry>(1, std::vector<GraphEdge>{{0, 0, kTwoPi}}));
    return cone;
}

namespace {
std::shared_ptr<const GraphCone> cached_cone(int key, bool book) {
    static std::mutex mu;
    static std::map<std::pair<int, bool>, std::shared_ptr<const GraphCone>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{key, book}];
    if (!slot) {
        if (book) {
            std::vector<GraphEdge> edges(key, GraphEdge{0, 1, kPi});
            slot = std::make_shared<const GraphCone>(std::make_shared<const GraphGeometry>(2, edges));
        } else {
            slot = std::make_shared<const GraphCone>(
                std::make_shared<const GraphGeometry>(std::max(key, 1), std::vector<GraphEdge>{}));
        }
    }
    return slot;
}
}  // namespace

std::shared_ptr<const GraphCone> pod_cone(int legs) { return cached_cone(legs, false); }
std::shared_ptr<const GraphCone> book_cone(int sheets) { return cached_cone(sheets, true); }

std::shared_ptr<GraphCone> cone_over_points(const std::vector<std::vector<double>>& dist, double sample_radius) {
    int n = static_cast<int>(dist.size());
    if (n == 0) fail(ErrorCode::InvalidArgument, "cone base needs at least one point");
    std::vector<GraphEdge> edges;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(dist[i].size()) != n) fail(ErrorCode::InvalidArgument, "base distance matrix is not square");
        if (dist[i][i] != 0.0) fail(ErrorCode::InvalidArgument, "base distance diagonal must vanish");
        for (int j = 0; j < n; ++j) {
            if (std::fabs(dist[i][j] - dist[j][i]) > 1e-12) fail(ErrorCode::InvalidArgument, "base distances not symmetric");
            if (i != j && !(dist[i][j] > 0)) fail(ErrorCode::InvalidArgument, "distinct base points at distance 0");
            for (int k = 0; k < n; ++k)
                if (dist[i][j] > dist[i][k] + dist[k][j] + 1e-12)
                    fail(ErrorCode::InvalidArgument, "base distances violate the triangle inequality");
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (dist[i][j] < kPi) edges.push_back({i, j, dist[i][j]});
    return std::make_shared<GraphCone>(std::make_shared<const GraphGeometry>(n, edges), sample_radius);
}

// ---------------------------------------------------------------- model space

ModelSpace::ModelSpace(Kappa k, double sample_radius) : kappa_(k), sample_radius_(sample_radius) {
    if (!std::isfinite(k.value)) fail(ErrorCode::InvalidArgument, "curvature must be finite");
    if (sample_radius_ <= 0) {
        if (k.value > 0) sample_radius_ = kPi / (4.0 * std::sqrt(k.value));
        else if (k.value < 0) sample_radius_ = 1.5 / std::sqrt(-k.value);
        else sample_radius_ = 2.0;
    }
}

Point ModelSpace::make(const ModelPoint& m) const {
    if (m.kappa.value != kappa_.value) fail(ErrorCode::CrossSpace, "model point with different curvature");
    if (!on_model(m, 1e-9)) fail(ErrorCode::InvalidArgument, "coordinates not on the model surface");
    Point p;
    p.space = id();
    p.c = m.coords;
    return p;
}

ModelPoint ModelSpace::model(const Point& p) const {
    own(p);
    return ModelPoint{kappa_, p.c};
}

double ModelSpace::dist(const Point& p, const Point& q) const { return model_distance(model(p), model(q)); }

Point ModelSpace::geodesic(const Point& p, const Point& q, double t) const {
    Point out;
    out.space = id();
    out.c = model_geodesic(model(p), model(q), t).coords;
    return out;
}

double ModelSpace::cat_radius(const Point& x) const {
    own(x);
    if (kappa_.value > 0) return 0.5 * diameter(kappa_);
    return radius_cap();
}

namespace {
struct Frame {
    Vec3 x, e1, e2;
};

Frame frame_at(Kappa k, const Vec3& x) {
    if (k.value == 0.0) return {x, {1, 0, 0}, {0, 1, 0}};
    if (k.value > 0) {
        double radius = 1.0 / std::sqrt(k.value);
        Vec3 xh = scaled(1.0 / radius, x);
        Vec3 a = std::fabs(xh[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 e1 = axpy(-dot3(a, xh), xh, a);
        e1 = scaled(1.0 / std::sqrt(dot3(e1, e1)), e1);
        Vec3 e2{xh[1] * e1[2] - xh[2] * e1[1], xh[2] * e1[0] - xh[0] * e1[2], xh[0] * e1[1] - xh[1] * e1[0]};
        return {x, e1, e2};
    }
    double radius = 1.0 / std::sqrt(-k.value);
    Vec3 xh = scaled(1.0 / radius, x);
    Vec3 a{1, 0, 0}, b{0, 1, 0};
    Vec3 e1 = axpy(mdot(a, xh), xh, a);
    e1 = scaled(1.0 / std::sqrt(mdot(e1, e1)), e1);
    Vec3 e2 = axpy(mdot(b, xh), xh, b);
    e2 = axpy(-mdot(e2, e1), e1, e2);
    e2 = scaled(1.0 / std::sqrt(mdot(e2, e2)), e2);
    return {x, e1, e2};
}
}  // namespace

double ModelSpace::direction_angle(const Point& x, const Point& y) const {
    own(x);
    own(y);
    double d = dist(x, y);
    if (d == 0.0) fail(ErrorCode::InvalidArgument, "direction to the base point itself");
    if (kappa_.value > 0 && d >= diameter(kappa_) - 1e-12) fail(ErrorCode::AntipodalPoints, "direction to an antipode");
    Frame f = frame_at(kappa_, x.c);
    double u1, u2;
    if (kappa_.value == 0.0) {
        u1 = y.c[0] - x.c[0];
        u2 = y.c[1] - x.c[1];
    } else if (kappa_.value > 0) {
        u1 = dot3(y.c, f.e1);
        u2 = dot3(y.c, f.e2);
    } else {
        u1 = mdot(y.c, f.e1);
        u2 = mdot(y.c, f.e2);
    }
    double ang = std::atan2(u2, u1);
    if (ang < 0) ang += kTwoPi;
    if (ang >= kTwoPi) ang = 0.0;
    return ang;
}

Point ModelSpace::exp(const Point& x, double angle, double h) const {
    own(x);
    Frame f = frame_at(kappa_, x.c);
    Vec3 w = axpy(std::cos(angle), f.e1, scaled(std::sin(angle), f.e2));
    ModelPoint m{kappa_, {}};
    if (kappa_.value == 0.0) {
        m.coords = {x.c[0] + h * w[0], x.c[1] + h * w[1], 0.0};
        return make(m);
    }
    double radius = 1.0 / std::sqrt(std::fabs(kappa_.value));
    double th = h / radius;
    double a = kappa_.value > 0 ? std::cos(th) : std::cosh(th);
    double b = radius * (kappa_.value > 0 ? std::sin(th) : std::sinh(th));
    m.coords = axpy(a, x.c, scaled(b, w));
    // re-project onto the surface
    if (kappa_.value > 0) {
        double n = std::sqrt(dot3(m.coords, m.coords));
        m.coords = scaled(radius / n, m.coords);
    } else {
        m.coords[2] = std::sqrt(radius * radius + m.coords[0] * m.coords[0] + m.coords[1] * m.coords[1]);
    }
    return make(m);
}

std::shared_ptr<const GraphCone> ModelSpace::tangent_cone(const Point& x) const {
    own(x);
    return circle_cone();
}

GraphPos ModelSpace::direction(const Point& x, const Point& y) const { return circle_pos(direction_angle(x, y)); }

Point ModelSpace::shoot(const Point& x, const GraphPos& dir, double h) const { return exp(x, circle_angle(dir), h); }

Point ModelSpace::sample(CounterRng& rng) const {
    double R = sample_radius_;
    double u = rng.uniform();
    double phi = rng.uniform(0.0, kTwoPi);
    double r;
    double k = kappa_.value;
    if (k == 0.0) {
        r = R * std::sqrt(u);
    } else if (k > 0) {
        double s = std::sqrt(k);
        double c0 = std::cos(s * R);
        r = std::acos(1.0 - u * (1.0 - c0)) / s;
    } else {
        double s = std::sqrt(-k);
        double c0 = std::cosh(s * R);
        r = std::acosh(1.0 + u * (c0 - 1.0)) / s;
    }
    return polar(r, phi);
}

std::string ModelSpace::describe(const Point& p) const {
    std::ostringstream os;
    os.precision(17);
    os << "M(" << kappa_.value << ")[" << p.c[0] << ", " << p.c[1] << ", " << p.c[2] << "]";
    return os.str();
}

// ---------------------------------------------------------------- graph space

GraphSpace::GraphSpace(GraphGeometry geometry, std::vector<std::string> names)
    : geom_(std::move(geometry)), names_(std::move(names)) {
    if (!geom_.connected()) fail(ErrorCode::InvalidArgument, "metric graph must be connected");
    if (names_.empty())
        for (int v = 0; v < geom_.vertex_count(); ++v) names_.push_back(std::to_string(v));
    if (static_cast<int>(names_.size()) != geom_.vertex_count()) fail(ErrorCode::InvalidArgument, "vertex name count mismatch");
    girth_ = geom_.girth();
}

int GraphSpace::vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    fail(ErrorCode::InvalidArgument, "unknown vertex '" + name + "'");
}

Point GraphSpace::make(const GraphPos& pos) const {
    GraphPos n = geom_.normalize(pos);
    Point p;
    p.space = id();
    p.a = n.edge;
    p.b = n.edge < 0 ? n.vertex : 0;
    p.c[0] = n.edge < 0 ? 0.0 : n.offset;
    return p;
}

GraphPos GraphSpace::pos(const Point& p) const {
    own(p);
    return {p.a, p.a < 0 ? p.b : 0, p.c[0]};
}

double GraphSpace::dist(const Point& p, const Point& q) const { return geom_.dist(pos(p), pos(q)); }

std::vector<Leg> GraphSpace::path(const Point& p, const Point& q) const { return geom_.path(pos(p), pos(q)); }

Point GraphSpace::geodesic(const Point& p, const Point& q, double t) const {
    if (t < 0.0 || t > 1.0) fail(ErrorCode::InvalidArgument, "geodesic parameter outside [0,1]");
    if (t == 0.0) return make(pos(p));
    if (t == 1.0) return make(pos(q));
    auto legs = path(p, q);
    if (legs.empty()) return make(pos(p));
    double total = 0;
    for (const auto& l : legs) total += l.length();
    return make(geom_.walk(legs, t * total));
}

double GraphSpace::cat_radius(const Point& x) const {
    own(x);
    if (girth_ == std::numeric_limits<double>::infinity()) return radius_cap();
    return girth_ / 4.0;
}

double GraphSpace::regular_radius(const Point& x) const {
    GraphPos p = pos(x);
    if (p.edge >= 0) {
        double L = geom_.edges()[p.edge].length;
        return std::min(p.offset, L - p.offset);
    }
    double r = radius_cap();
    for (const auto& in : geom_.incidences(p.vertex)) {
        const auto& e = geom_.edges()[in.edge];
        r = std::min(r, e.u == e.v ? e.length / 2.0 : e.length);
    }
    return r;
}

bool GraphSpace::nonbranching_from(const Point& x) const {
    own(x);
    if (!geom_.is_forest()) return false;
    for (int v = 0; v < geom_.vertex_count(); ++v)
        if (geom_.incidences(v).size() > 2) return false;
    return true;
}

std::shared_ptr<const GraphCone> GraphSpace::tangent_cone(const Point& x) const {
    GraphPos p = pos(x);
    if (p.edge >= 0) return pod_cone(2);
    return pod_cone(static_cast<int>(geom_.incidences(p.vertex).size()));
}

GraphPos GraphSpace::direction(const Point& x, const Point& y) const {
    GraphPos p = pos(x);
    auto legs = path(x, y);
    if (legs.empty()) fail(ErrorCode::InvalidArgument, "direction to the base point itself");
    const Leg& first = legs.front();
    if (p.edge >= 0) return {-1, first.to > first.from ? 1 : 0, 0.0};
    const auto& inc = geom_.incidences(p.vertex);
    bool leaves_u = first.from == 0.0;
    for (std::size_t k = 0; k < inc.size(); ++k)
        if (inc[k].edge == first.edge && inc[k].at_u == leaves_u) return {-1, static_cast<int>(k), 0.0};
    fail(ErrorCode::InvalidArgument, "first leg does not leave the base vertex");
}

Point GraphSpace::shoot(const Point& x, const GraphPos& dir, double h) const {
    GraphPos p = pos(x);
    if (dir.edge >= 0) fail(ErrorCode::InvalidArgument, "graph directions are discrete");
    if (p.edge >= 0) {
        double L = geom_.edges()[p.edge].length;
        double off = dir.vertex == 1 ? p.offset + h : p.offset - h;
        if (off < 0 || off > L) fail(ErrorCode::InvalidArgument, "step leaves the edge");
        return on_edge(p.edge, off);
    }
    const auto& inc = geom_.incidences(p.vertex);
    if (dir.vertex < 0 || dir.vertex >= static_cast<int>(inc.size())) fail(ErrorCode::InvalidArgument, "bad direction");
    const auto& in = inc[dir.vertex];
    double L = geom_.edges()[in.edge].length;
    if (h > L) fail(ErrorCode::InvalidArgument, "step leaves the edge");
    return on_edge(in.edge, in.at_u ? h : L - h);
}

Point GraphSpace::sample(CounterRng& rng) const {
    const auto& edges = geom_.edges();
    if (edges.empty()) return vertex(0);
    double total = geom_.total_length();
    double u = rng.uniform() * total;
    std::size_t e = 0;
    for (; e + 1 < edges.size(); ++e) {
        if (u < edges[e].length) break;
        u -= edges[e].length;
    }
    double off = std::clamp(rng.uniform() * edges[e].length, 0.0, edges[e].length);
    return on_edge(static_cast<int>(e), off);
}

std::string GraphSpace::describe(const Point& p) const {
    GraphPos g = pos(p);
    if (g.edge < 0) return "node " + names_[g.vertex];
    const auto& e = geom_.edges()[g.edge];
    std::ostringstream os;
    os.precision(17);
    os << names_[e.u] << "-" << names_[e.v] << "@" << g.offset;
    return os.str();
}

// ---------------------------------------------------------------- graph cone

GraphCone::GraphCone(std::shared_ptr<const GraphGeometry> base, double sample_radius, bool validate)
    : base_(std::move(base)), sample_radius_(sample_radius) {
    if (!base_) fail(ErrorCode::InvalidArgument, "null cone base");
    if (validate) {
        if (base_->girth() < kTwoPi - 1e-9) fail(ErrorCode::NotCat0, "cone base has a cycle shorter than 2 pi");
    }
}

Point GraphCone::make(double r, const GraphPos& xi) const {
    if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorCode::InvalidArgument, "cone radius must be finite and non-negative");
    GraphPos n = r == 0.0 ? base_->vertex_pos(0) : base_->normalize(xi);
    Point p;
    p.space = id();
    p.c[0] = r;
    p.a = n.edge;
    p.b = n.edge < 0 ? n.vertex : 0;
    p.c[1] = n.edge < 0 ? 0.0 : n.offset;
    return p;
}

double GraphCone::radius(const Point& p) const {
    own(p);
    return p.c[0];
}

GraphPos GraphCone::base_pos(const Point& p) const {
    own(p);
    return {p.a, p.a < 0 ? p.b : 0, p.c[1]};
}

double GraphCone::angle(const GraphPos& a, const GraphPos& b) const { return std::min(base_->dist(a, b), kPi); }

double GraphCone::angle(const Point& p, const Point& q) const { return angle(base_pos(p), base_pos(q)); }

Point GraphCone::scale(const Point& p, double lambda) const {
    if (lambda < 0) fail(ErrorCode::InvalidArgument, "negative cone scaling");
    return make(radius(p) * lambda, base_pos(p));
}

double GraphCone::inner(const Point& p, const Point& q) const {
    double r = radius(p), s = radius(q);
    if (r == 0.0 || s == 0.0) return 0.0;
    return r * s * std::cos(angle(p, q));
}

double GraphCone::dist(const Point& p, const Point& q) const {
    double r = radius(p), s = radius(q);
    if (r == 0.0) return s;
    if (s == 0.0) return r;
    double th = angle(p, q);
    double h = std::sin(0.5 * th);
    return std::sqrt((r - s) * (r - s) + 4.0 * r * s * h * h);
}

Point GraphCone::geodesic(const Point& p, const Point& q, double t) const {
    if (t < 0.0 || t > 1.0) fail(ErrorCode::InvalidArgument, "geodesic parameter outside [0,1]");
    double r = radius(p), s = radius(q);
    GraphPos xp = base_pos(p), xq = base_pos(q);
    if (t == 0.0) return make(r, xp);
    if (t == 1.0) return make(s, xq);
    if (r == 0.0) return make(t * s, xq);
    if (s == 0.0) return make((1.0 - t) * r, xp);
    double dS = base_->dist(xp, xq);
    if (dS >= kPi) {
        double u = t * (r + s);
        if (u <= r) return make(r - u, xp);
        return make(u - r, xq);
    }
    double qx = s * std::cos(dS), qy = s * std::sin(dS);
    double X = (1.0 - t) * r + t * qx, Y = t * qy;
    double rho = std::hypot(X, Y);
    double phi = std::clamp(std::atan2(Y, X), 0.0, dS);
    if (dS == 0.0) return make(rho, xp);
    return make(rho, base_->along(xp, xq, phi));
}

double GraphCone::regular_radius(const Point& x) const {
    double r = radius(x);
    if (r == 0.0) return radius_cap();
    GraphPos xi = base_pos(x);
    auto side = [&](double ang) { return ang >= 0.5 * kPi ? 1.0 : std::sin(ang); };
    double f = 1.0;
    if (xi.edge >= 0) {
        double L = base_->edges()[xi.edge].length;
        f = std::min(side(xi.offset), side(L - xi.offset));
    } else {
        for (const auto& in : base_->incidences(xi.vertex)) {
            const auto& e = base_->edges()[in.edge];
            f = std::min(f, side(e.u == e.v ? 0.5 * e.length : e.length));
        }
    }
    return r * f;
}

bool GraphCone::nonbranching_from(const Point& x) const {
    if (radius(x) == 0.0) return true;
    return false;
}

std::shared_ptr<const GraphCone> GraphCone::tangent_cone(const Point& x) const {
    if (radius(x) == 0.0) return std::static_pointer_cast<const GraphCone>(shared_from_this());
    GraphPos xi = base_pos(x);
    if (xi.edge >= 0) return circle_cone();
    return book_cone(static_cast<int>(base_->incidences(xi.vertex).size()));
}

GraphPos GraphCone::direction(const Point& x, const Point& y) const {
    double r = radius(x), s = radius(y);
    GraphPos xi = base_pos(x), eta = base_pos(y);
    if (r == 0.0) {
        if (s == 0.0) fail(ErrorCode::InvalidArgument, "direction to the base point itself");
        return eta;
    }
    bool circle = xi.edge >= 0;
    GraphPos inward = circle ? GraphPos{0, 0, kPi} : GraphPos{-1, 1, 0.0};
    GraphPos outward = circle ? GraphPos{-1, 0, 0.0} : GraphPos{-1, 0, 0.0};
    if (s == 0.0) return inward;
    double dS = base_->dist(xi, eta);
    if (dS >= kPi) return inward;
    if (dS == 0.0) {
        if (s == r) fail(ErrorCode::InvalidArgument, "direction to the base point itself");
        return s > r ? outward : inward;
    }
    double psi = std::atan2(s * std::sin(dS), s * std::cos(dS) - r);
    if (psi <= 0.0) return outward;
    if (psi >= kPi) return inward;
    auto legs = base_->path(xi, eta);
    const Leg& first = legs.front();
    if (circle) return circle_pos(first.to > first.from ? psi : kTwoPi - psi);
    const auto& inc = base_->incidences(xi.vertex);
    bool leaves_u = first.from == 0.0;
    for (std::size_t k = 0; k < inc.size(); ++k)
        if (inc[k].edge == first.edge && inc[k].at_u == leaves_u) return {static_cast<int>(k), 0, psi};
    fail(ErrorCode::InvalidArgument, "first base leg does not leave the base vertex");
}

Point GraphCone::shoot(const Point& x, const GraphPos& dir, double h) const {
    double r = radius(x);
    if (h < 0) fail(ErrorCode::InvalidArgument, "negative step");
    if (r == 0.0) return make(h, dir);
    GraphPos xi = base_pos(x);
    bool circle = xi.edge >= 0;
    double psi;
    int sheet = -1;
    bool forward = true;
    if (circle) {
        psi = circle_angle(dir);
        if (psi > kPi) {
            psi = kTwoPi - psi;
            forward = false;
        }
    } else if (dir.edge < 0) {
        psi = dir.vertex == 0 ? 0.0 : kPi;
    } else {
        psi = dir.offset;
        sheet = dir.edge;
    }
    if (psi <= 0.0) return make(r + h, xi);
    if (psi >= kPi) {
        if (h > r) fail(ErrorCode::InvalidArgument, "step passes the apex");
        return make(r - h, xi);
    }
    double X = r + h * std::cos(psi), Y = h * std::sin(psi);
    double rho = std::hypot(X, Y);
    double phi = std::atan2(Y, X);
    GraphPos to;
    if (circle) {
        double L = base_->edges()[xi.edge].length;
        double off = forward ? xi.offset + phi : xi.offset - phi;
        if (off < 0 || off > L) fail(ErrorCode::InvalidArgument, "step leaves the sector");
        to = {xi.edge, 0, off};
    } else {
        const auto& inc = base_->incidences(xi.vertex);
        if (sheet >= static_cast<int>(inc.size())) fail(ErrorCode::InvalidArgument, "bad sheet");
        const auto& in = inc[sheet];
        double L = base_->edges()[in.edge].length;
        if (phi > L) fail(ErrorCode::InvalidArgument, "step leaves the sector");
        to = {in.edge, 0, in.at_u ? phi : L - phi};
    }
    return make(rho, to);
}

Point GraphCone::sample(CounterRng& rng) const {
    double r = sample_radius_ * rng.uniform();
    const auto& edges = base_->edges();
    double total = base_->total_length();
    bool pick_vertex = edges.empty() || rng.uniform() < 0.25;
    if (pick_vertex) return make(r, base_->vertex_pos(static_cast<int>(rng.index(base_->vertex_count()))));
    double u = rng.uniform() * total;
    std::size_t e = 0;
    for (; e + 1 < edges.size(); ++e) {
        if (u < edges[e].length) break;
        u -= edges[e].length;
    }
    return make(r, base_->edge_pos(static_cast<int>(e), rng.uniform() * edges[e].length));
}

std::string GraphCone::describe(const Point& p) const {
    std::ostringstream os;
    os.precision(17);
    os << "cone(r=" << radius(p) << ", " << fmt_pos(base_pos(p)) << ")";
    return os.str();
}

}  // namespace hcat
