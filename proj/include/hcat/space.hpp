#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hcat/graph_geometry.hpp"
#include "hcat/model_spaces.hpp"
#include "hcat/rng.hpp"

namespace hcat {

using SpaceId = std::uint64_t;

// Opaque point payload; its meaning is fixed by the owning space.
//   model:  c = ambient coordinates
//   graph:  a = edge (-1 at a vertex), b = vertex, c[0] = offset
//   cone:   c[0] = radius, a/b/c[1] = base position as for graphs
struct Point {
    SpaceId space = 0;
    std::array<double, 3> c{};
    int a = -1;
    int b = 0;
};

class GraphCone;

inline constexpr double kDefaultRadiusCap = 1e6;

class Space : public std::enable_shared_from_this<Space> {
public:
    Space();
    virtual ~Space() = default;
    Space(const Space&) = delete;
    Space& operator=(const Space&) = delete;

    SpaceId id() const { return id_; }
    virtual std::string kind() const = 0;

    virtual double dist(const Point& p, const Point& q) const = 0;
    virtual Point geodesic(const Point& p, const Point& q, double t) const = 0;
    Point midpoint(const Point& p, const Point& q) const { return geodesic(p, q, 0.5); }

    // Radius r_x with B_{r_x}(x) CAT(kappa) (capped for globally CAT(0) spaces).
    virtual double cat_radius(const Point& x) const = 0;
    virtual double curvature_bound() const = 0;
    // Scale below which geodesics issuing from x see only the local structure
    // at x (no other branch points, sectors or apex).
    virtual double regular_radius(const Point& x) const = 0;
    virtual bool nonbranching_from(const Point& x) const = 0;

    // Exact tangent cone T_x as a Euclidean cone over the space of directions.
    virtual std::shared_ptr<const GraphCone> tangent_cone(const Point& x) const = 0;
    // Direction of the geodesic from x to y as a position in that base.
    virtual GraphPos direction(const Point& x, const Point& y) const = 0;
    // Point at distance h from x leaving in the given direction (h small).
    virtual Point shoot(const Point& x, const GraphPos& dir, double h) const = 0;

    virtual Point sample(CounterRng& rng) const = 0;
    virtual std::string describe(const Point& p) const = 0;

    void own(const Point& p) const;
    double radius_cap() const { return radius_cap_; }
    void set_radius_cap(double cap) { radius_cap_ = cap; }

private:
    SpaceId id_;
    double radius_cap_ = kDefaultRadiusCap;
};

using SpacePtr = std::shared_ptr<const Space>;

class ModelSpace final : public Space {
public:
    explicit ModelSpace(Kappa k, double sample_radius = -1.0);

    std::string kind() const override { return "model"; }
    Kappa kappa() const { return kappa_; }
    double sample_radius() const { return sample_radius_; }

    Point make(const ModelPoint& m) const;
    ModelPoint model(const Point& p) const;
    Point polar(double r, double phi) const { return make(model_polar(kappa_, r, phi)); }

    double dist(const Point& p, const Point& q) const override;
    Point geodesic(const Point& p, const Point& q, double t) const override;
    double cat_radius(const Point& x) const override;
    double curvature_bound() const override { return kappa_.value; }
    double regular_radius(const Point& x) const override { return cat_radius(x); }
    bool nonbranching_from(const Point&) const override { return true; }
    std::shared_ptr<const GraphCone> tangent_cone(const Point& x) const override;
    GraphPos direction(const Point& x, const Point& y) const override;
    Point shoot(const Point& x, const GraphPos& dir, double h) const override;
    Point sample(CounterRng& rng) const override;
    std::string describe(const Point& p) const override;

    // Direction angle in [0, 2 pi) of the geodesic x -> y in a fixed frame at x.
    double direction_angle(const Point& x, const Point& y) const;
    Point exp(const Point& x, double angle, double h) const;

private:
    Kappa kappa_;
    double sample_radius_;
};

// Metric graph with the intrinsic length metric; trees are CAT(0), general
// graphs are locally CAT(0) with r_x = girth / 4.
class GraphSpace final : public Space {
public:
    GraphSpace(GraphGeometry geometry, std::vector<std::string> names = {});

    std::string kind() const override { return geom_.is_forest() ? "tree" : "graph"; }
    const GraphGeometry& geometry() const { return geom_; }
    const std::vector<std::string>& names() const { return names_; }
    int vertex_index(const std::string& name) const;

    Point make(const GraphPos& pos) const;
    GraphPos pos(const Point& p) const;
    Point vertex(int v) const { return make(geom_.vertex_pos(v)); }
    Point on_edge(int e, double offset) const { return make(geom_.edge_pos(e, offset)); }

    double dist(const Point& p, const Point& q) const override;
    Point geodesic(const Point& p, const Point& q, double t) const override;
    double cat_radius(const Point& x) const override;
    double curvature_bound() const override { return 0.0; }
    double regular_radius(const Point& x) const override;
    bool nonbranching_from(const Point& x) const override;
    std::shared_ptr<const GraphCone> tangent_cone(const Point& x) const override;
    GraphPos direction(const Point& x, const Point& y) const override;
    Point shoot(const Point& x, const GraphPos& dir, double h) const override;
    Point sample(CounterRng& rng) const override;
    std::string describe(const Point& p) const override;

    std::vector<Leg> path(const Point& p, const Point& q) const;

private:
    GraphGeometry geom_;
    std::vector<std::string> names_;
    double girth_;
};

// Euclidean cone over a metric graph Sigma whose intrinsic metric is
// truncated at pi: d^2 = r^2 + s^2 - 2 r s cos(min(d_Sigma, pi)).
class GraphCone final : public Space {
public:
    explicit GraphCone(std::shared_ptr<const GraphGeometry> base, double sample_radius = 2.0,
                       bool validate = true);

    std::string kind() const override { return "cone"; }
    const GraphGeometry& base() const { return *base_; }
    std::shared_ptr<const GraphGeometry> base_ptr() const { return base_; }

    Point make(double r, const GraphPos& xi) const;
    Point apex() const { return make(0.0, base_->vertex_pos(0)); }
    double radius(const Point& p) const;
    GraphPos base_pos(const Point& p) const;
    double angle(const GraphPos& a, const GraphPos& b) const;  // min(d_Sigma, pi)
    double angle(const Point& p, const Point& q) const;
    bool is_apex(const Point& p) const { return radius(p) == 0.0; }
    Point scale(const Point& p, double lambda) const;
    // <p, q> = r s cos(angle), the cone inner product about the apex.
    double inner(const Point& p, const Point& q) const;

    double dist(const Point& p, const Point& q) const override;
    Point geodesic(const Point& p, const Point& q, double t) const override;
    double cat_radius(const Point&) const override { return radius_cap(); }
    double curvature_bound() const override { return 0.0; }
    double regular_radius(const Point& x) const override;
    bool nonbranching_from(const Point& x) const override;
    std::shared_ptr<const GraphCone> tangent_cone(const Point& x) const override;
    GraphPos direction(const Point& x, const Point& y) const override;
    Point shoot(const Point& x, const GraphPos& dir, double h) const override;
    Point sample(CounterRng& rng) const override;
    std::string describe(const Point& p) const override;

private:
    std::shared_ptr<const GraphGeometry> base_;
    double sample_radius_;
};

// Shared spaces of directions.
std::shared_ptr<const GraphCone> circle_cone();
std::shared_ptr<const GraphCone> pod_cone(int legs);
std::shared_ptr<const GraphCone> book_cone(int sheets);
// Base position of the circle of directions at the given angle.
GraphPos circle_pos(double angle);
double circle_angle(const GraphPos& p);

// Euclidean cone over finitely many base points with the given pairwise
// distances; pairs below pi become arcs, the rest stay disconnected.
std::shared_ptr<GraphCone> cone_over_points(const std::vector<std::vector<double>>& base_distances,
                                            double sample_radius = 2.0);

}  // namespace hcat
