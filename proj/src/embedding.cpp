#include "hcat/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "hcat/error.hpp"
#include "hcat/parallel.hpp"
#include "hcat/tangent.hpp"

namespace hcat {

namespace {

// d_x dist_y on T_x, exact: minus the cone inner product with the unit
// direction towards y.
double homogeneous_h(const GraphCone& T, const Space& s, const Point& x, const Point& y, const Point& c) {
    Point unit = T.make(1.0, s.direction(x, y));
    return -T.inner(c, unit);
}

std::vector<Point> landmarks(const MetricGraph& g, int n, std::uint64_t seed) {
    CounterRng rng(seed, 0x63);
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) out.push_back(g.space()->sample(rng));
    return out;
}

FibrePoint assemble(const EdgeFlow& b, const PathDecomposition& pi, const GraphPos& x, double rigidity_tol) {
    const MetricGraph& g = *b.graph();
    const auto& s = g.space();
    FibrePoint fp;
    fp.pos = x;
    fp.base = s->make(x);
    fp.cone = s->tangent_cone(fp.base);
    const GraphCone& T = *fp.cone;
    // direction index 1 of an interior point points to increasing offset
    for (const auto* p : pi.all())
        for (std::size_t i = 0; i < p->edges.size(); ++i) {
            if (p->edges[i] != x.edge) continue;
            fp.atoms.push_back(T.make(p->length, T.base().vertex_pos(p->forward[i] ? 1 : 0)));
            fp.weights.push_back(p->weight / p->length);
            fp.nu_density += p->weight / p->length;
        }
    fp.dnu_dmu = fp.nu_density / g.density(x.edge);
    if (fp.atoms.empty()) {
        fp.bar = T.apex();
        fp.v = T.apex();
        fp.rigidity.triggered = true;
        return fp;
    }
    DiscreteMeasure n(fp.cone, fp.atoms, fp.weights);
    fp.bar = solve_barycenter(n).point;
    fp.v = T.scale(fp.bar, fp.dnu_dmu);
    fp.rigidity = rigidity_check(n, T.apex(), rigidity_tol);
    if (!fp.rigidity.triggered || fp.rigidity.halfline_defect > rigidity_tol)
        fail(ErrorCode::RigidityViolation,
             "fibre measure on edge " + std::to_string(x.edge) + " is not concentrated on a half-line");
    for (double& w : fp.weights) w /= fp.nu_density;
    return fp;
}

}  // namespace

std::vector<GraphPos> embedding_grid(const MetricGraph& g, int per_edge) {
    if (per_edge < 1) fail(ErrorCode::InvalidArgument, "grid needs at least one point per edge");
    std::vector<GraphPos> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        double L = g.length(e), m = L / 100;
        for (int k = 0; k < per_edge; ++k) {
            double s = per_edge == 1 ? 0.5 * L : m + k * (L - 2 * m) / (per_edge - 1);
            out.push_back({e, 0, s});
        }
    }
    return out;
}

TangentSection build_embedding(const EdgeFlow& b, const EmbeddingOptions& opts) {
    return build_embedding(b, superpose(b, opts.tie), opts);
}

TangentSection build_embedding(const EdgeFlow& b, const PathDecomposition& pi, const EmbeddingOptions& opts) {
    const MetricGraph& g = *b.graph();
    if (pi.graph != b.graph()) fail(ErrorCode::CrossSpace, "decomposition of a flow on another graph");
    double scale = 1;
    for (double v : b.values()) scale = std::max(scale, std::fabs(v));
    auto pf = pi.edge_flow();
    for (int e = 0; e < g.edge_count(); ++e)
        if (std::fabs(pf[e] - b.value(e)) > 1e-9 * scale)
            fail(ErrorCode::InvalidArgument, "decomposition does not reproduce the flow");

    TangentSection sec;
    sec.graph = b.graph();
    auto grid = embedding_grid(g, opts.grid);
    sec.points.resize(grid.size());
    auto marks = landmarks(g, opts.landmarks, opts.seed);
    std::vector<EmbeddingChecks> local(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        FibrePoint fp = assemble(b, pi, grid[i], opts.rigidity_tol);
        EmbeddingChecks& c = local[i];
        c.points = 1;
        c.pointwise_norm = std::fabs(fp.norm() - derivation_norm(b, grid[i]));
        c.halfline = fp.rigidity.halfline_defect;
        const auto& s = g.space();
        TangentVector v = from_cone(s, fp.base, *fp.cone, fp.v);
        for (const auto& y : marks) {
            if (s->dist(y, fp.base) == 0.0) continue;
            double lhs = d_dist(y, v);
            double rhs = b.apply(distance_to(b.graph(), s->pos(y)), grid[i]);
            c.dist_differential = std::max(c.dist_differential, std::fabs(lhs - rhs));
            if (!fp.atoms.empty()) {
                double integral = 0;
                for (std::size_t k = 0; k < fp.atoms.size(); ++k)
                    integral += fp.weights[k] * homogeneous_h(*fp.cone, *s, fp.base, y, fp.atoms[k]);
                double at_bar = homogeneous_h(*fp.cone, *s, fp.base, y, fp.bar);
                c.pushforward = std::max(c.pushforward, std::fabs(integral - at_bar));
            }
            ++c.landmark_evaluations;
        }
        sec.points[i] = std::move(fp);
    });
    for (const auto& c : local) {
        sec.checks.dist_differential = std::max(sec.checks.dist_differential, c.dist_differential);
        sec.checks.pointwise_norm = std::max(sec.checks.pointwise_norm, c.pointwise_norm);
        sec.checks.halfline = std::max(sec.checks.halfline, c.halfline);
        sec.checks.pushforward = std::max(sec.checks.pushforward, c.pushforward);
        sec.checks.points += c.points;
        sec.checks.landmark_evaluations += c.landmark_evaluations;
    }
    sec.checks.mass_identity = current_from_derivation(b).mass_identity_defect();
    return sec;
}

double section_distance(const TangentSection& a, const TangentSection& b) {
    if (a.points.size() != b.points.size()) fail(ErrorCode::InvalidArgument, "sections on different grids");
    double worst = 0;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        worst = std::max(worst, a.points[i].cone->dist(a.points[i].v, b.points[i].v));
    return worst;
}

LinearityReport verify_linearity(const EdgeFlow& b1, const EdgeFlow& b2, const EmbeddingOptions& opts) {
    if (b1.graph() != b2.graph()) fail(ErrorCode::CrossSpace, "flows on different graphs");
    EmbeddingOptions o = opts;
    o.landmarks = 0;
    auto F1 = build_embedding(b1, o);
    auto F2 = build_embedding(b2, o);
    auto Fs = build_embedding(b1 + b2, o);
    auto Fd = build_embedding(b1 - b2, o);
    LinearityReport r;
    for (std::size_t i = 0; i < F1.points.size(); ++i) {
        const GraphCone& T = *F1.points[i].cone;
        const Point& v1 = F1.points[i].v;
        const Point& v2 = F2.points[i].v;
        Point sum = T.scale(T.midpoint(v1, v2), 2.0);
        r.sum_defect = std::max(r.sum_defect, T.dist(Fs.points[i].v, sum));
        double diff = derivation_norm(b1 - b2, F1.points[i].pos);
        r.distance_defect = std::max(r.distance_defect, std::fabs(T.dist(v1, v2) - diff));
        double n1 = F1.points[i].norm(), n2 = F2.points[i].norm();
        double ns = Fs.points[i].norm(), nd = Fd.points[i].norm();
        r.parallelogram_defect = std::max(r.parallelogram_defect, std::fabs(ns * ns + nd * nd - 2 * (n1 * n1 + n2 * n2)));
        ++r.points;
    }
    return r;
}

namespace {

// int |F(b)|^2 dmu from the grid; |F(b)| is constant along each edge.
double integrated_square(const TangentSection& s) {
    const MetricGraph& g = *s.graph;
    std::vector<double> acc(g.edge_count(), 0.0);
    std::vector<int> cnt(g.edge_count(), 0);
    for (const auto& p : s.points) {
        acc[p.pos.edge] += p.norm() * p.norm();
        ++cnt[p.pos.edge];
    }
    double total = 0;
    for (int e = 0; e < g.edge_count(); ++e)
        if (cnt[e] > 0) total += acc[e] / cnt[e] * g.density(e) * g.length(e);
    return total;
}

double rel(double lhs, double rhs) {
    double d = std::fabs(lhs - rhs);
    double m = std::max(std::fabs(lhs), std::fabs(rhs));
    return m > 0 ? d / m : 0.0;
}

}  // namespace

HilbertReport hilbertianity_report(const GraphPtr& g, const std::vector<EdgeFlow>& flows, int pairs,
                                   std::uint64_t seed, const EmbeddingOptions& opts) {
    if (pairs < 1) fail(ErrorCode::InvalidArgument, "need at least one pair");
    for (const auto& f : flows)
        if (f.graph() != g) fail(ErrorCode::CrossSpace, "flow on another graph");
    CounterRng rng(seed, 0x48);
    std::vector<std::pair<EdgeFlow, EdgeFlow>> work;
    for (int k = 0; k < pairs; ++k) {
        if (flows.size() >= 2) {
            std::size_t i = rng.index(flows.size());
            std::size_t j = rng.index(flows.size() - 1);
            if (j >= i) ++j;
            work.emplace_back(flows[i], flows[j]);
        } else {
            work.emplace_back(random_flow(g, rng.next_u64()), random_flow(g, rng.next_u64()));
        }
    }
    HilbertReport rep;
    rep.pairs.resize(work.size());
    EmbeddingOptions o = opts;
    o.landmarks = 0;
    parallel_for(work.size(), [&](std::size_t k) {
        const auto& [b1, b2] = work[k];
        HilbertPair hp;
        double n1 = derivation_norm_22(b1).l2_norm, n2 = derivation_norm_22(b2).l2_norm;
        double ns = derivation_norm_22(b1 + b2).l2_norm, nd = derivation_norm_22(b1 - b2).l2_norm;
        hp.norm_slack = rel(ns * ns + nd * nd, 2 * n1 * n1 + 2 * n2 * n2);
        double i1 = integrated_square(build_embedding(b1, o));
        double i2 = integrated_square(build_embedding(b2, o));
        double is = integrated_square(build_embedding(b1 + b2, o));
        double id = integrated_square(build_embedding(b1 - b2, o));
        hp.integrated_slack = std::max({rel(is + id, 2 * i1 + 2 * i2), rel(i1, n1 * n1), rel(i2, n2 * n2),
                                        rel(is, ns * ns), rel(id, nd * nd)});
        hp.linearity = verify_linearity(b1, b2, o);
        rep.pairs[k] = hp;
    });
    rep.histogram.assign(10, 0);
    for (const auto& p : rep.pairs) {
        rep.max_norm_slack = std::max(rep.max_norm_slack, p.norm_slack);
        rep.max_integrated_slack = std::max(rep.max_integrated_slack, p.integrated_slack);
        rep.max_linearity = std::max({rep.max_linearity, p.linearity.sum_defect, p.linearity.distance_defect,
                                      p.linearity.parallelogram_defect});
        double s = std::max(p.norm_slack, p.integrated_slack);
        int bin = s < 1e-16 ? 0 : std::min(9, 1 + static_cast<int>(std::floor(std::log10(s) + 16)));
        ++rep.histogram[bin];
    }
    return rep;
}

}  // namespace hcat
