// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hcat/error.hpp"
#include "hcat/instances.hpp"
#include "hcat/suites.hpp"

using namespace hcat;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Worst check among those whose name contains `part` (all when empty).
Outcome checks(const Report& r, const std::string& part = "", const std::string& skip = "") {
    Outcome o;
    int n = 0;
    double worst = 0;
    std::string worst_name;
    for (const auto& c : r.checks()) {
        if (!part.empty() && c.name.find(part) == std::string::npos) continue;
        if (!skip.empty() && c.name.find(skip) != std::string::npos) continue;
        ++n;
        if (!c.pass) {
            o.pass = false;
            o.detail += " failed:" + c.name;
        }
        if (c.tol > 0 && c.slack / c.tol > worst) {
            worst = c.slack / c.tol;
            worst_name = c.name;
        }
    }
    if (n == 0) {
        o.pass = false;
        o.detail += " no checks matched '" + part + "'";
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d checks, worst slack/tol %.3g", n, worst);
    o.detail = buf + (worst_name.empty() ? "" : " (" + worst_name + ")") + o.detail;
    return o;
}

Outcome both(Outcome a, const Outcome& b) {
    a.pass = a.pass && b.pass;
    a.detail += "; " + b.detail;
    return a;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome timed(double limit, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    double s = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "; %.2f s (limit %.0f s)", s, limit);
    o.detail += buf;
    if (s >= limit) o.pass = false;
    return o;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const Error& e) {
        o = {false, std::string("error ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %s: %s -- %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str());
    std::fflush(stdout);
}

SuiteOptions opts(int n = 0) {
    SuiteOptions o;
    o.seed = 2024;
    o.n = n;
    return o;
}

}  // namespace

int main() {
    auto spaces = bundled_spaces();

    report(1, "CAT comparison, 1000 samples per instance, sphere vs kappa=-1 control", [&] {
        return timed(30, [&] {
            auto r = suite_cat(spaces, opts(1000));
            auto neg = suite_cat(spaces, [] { auto o = opts(1000); o.negative_control = true; return o; }());
            Outcome o = checks(r);
            int violations = neg.data()["control"]["violations"].get<int>();
            o.detail += "; control violations " + std::to_string(violations);
            if (violations < 1) o.pass = false;
            return o;
        });
    });

    Report calc("cone-calc");
    report(2, "cone calculus identities (200 pairs) and tangent four-point check", [&] {
        return timed(60, [&] {
            calc = suite_cone_calc(spaces, opts(200));
            return checks(calc, "", "variation");
        });
    });

    report(3, "first variation vs finite differences, 100 configurations per instance", [&] {
        return both(checks(calc, "first_variation_vs_fd"), checks(calc, "fd_vs_scalar_product"));
    });

    report(4, "antipodality at 50 non-knot points, corner control > 0.1", [&] {
        auto r = suite_curves(spaces, opts(50));
        auto o = checks(r, "antipodality");
        auto neg = suite_curves(spaces, [] { auto o = opts(50); o.negative_control = true; return o; }());
        double corner = neg.checks().at(0).slack;
        o.detail += "; corner defect " + std::to_string(corner);
        if (!(corner > 0.1)) o.pass = false;
        return o;
    });

    report(5, "barycenters: tripod hub, Euclidean mean, variance certificate, 1D oracle", [&] {
        auto r = suite_barycenter(opts(100));
        Outcome o = checks(r, "tripod.hub");
        for (const char* part : {"euclid.weighted_mean", "variance_certificate", "edge.quadratic_oracle", "uniqueness",
                                 "control."})
            o = both(o, checks(r, part));
        return o;
    });

    report(6, "superposition on 50 random flows", [&] {
        auto flows = bundled_flows(50, 2024);
        return checks(suite_superpose(flows, opts()));
    });

    report(7, "embedding: differentials, pointwise norm, rigidity, tie-break independence", [&] {
        std::vector<EdgeFlow> flows;
        for (std::uint64_t s = 0; s < 6; ++s) {
            flows.push_back(random_flow(tree_graph(*make_random_tree(15, s)), s + 3));
            flows.push_back(random_flow(random_metric_graph(9, 3, s + 50), s + 3));
        }
        return checks(suite_embed(flows, 9, opts()));
    });

    report(8, "Hilbertianity on a 15-edge tree, 20 pairs", [&] {
        return timed(120, [&] { return checks(suite_hilbert(bundled_tree15(), {}, opts(20))); });
    });

    report(9, "lip counterexample sides 8 vs 4", [&] { return checks(suite_counterexample(opts())); });

    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
