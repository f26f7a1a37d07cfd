#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcat/barycenter.hpp"
#include "hcat/embedding.hpp"
#include "hcat/report.hpp"
#include "hcat/transport.hpp"

namespace hcat {

struct SuiteOptions {
    std::uint64_t seed = 2024;
    double tol = 0;  // 0: suite default
    int n = 0;       // 0: suite default sample count
    // Run only the negative control, whose checks are expected to fail.
    bool negative_control = false;
};

struct NamedSpace {
    std::string name;
    SpacePtr space;
    double kappa = 0;  // comparison curvature for the CAT check
};

// euclid, sphere, hyperbolic, tripod, tree15, cone3
std::vector<NamedSpace> bundled_spaces();
// The 15-edge random tree used by the Hilbertianity suite.
GraphPtr bundled_tree15();
// Random flows on random graphs with 5..14 nodes.
std::vector<EdgeFlow> bundled_flows(int count, std::uint64_t seed);

// Each suite returns one check per verified property. In normal mode every
// suite also records that its negative control is detected.
Report suite_cat(const std::vector<NamedSpace>& spaces, const SuiteOptions& o);
Report suite_angles(const std::vector<NamedSpace>& spaces, const SuiteOptions& o);
Report suite_cone_calc(const std::vector<NamedSpace>& spaces, const SuiteOptions& o);
Report suite_curves(const std::vector<NamedSpace>& spaces, const SuiteOptions& o);

// Worked examples and random instances.
Report suite_barycenter(const SuiteOptions& o);
// A single user measure: solution, certificates, uniqueness probe.
Report barycenter_report(const DiscreteMeasure& mu, const SuiteOptions& o);

Report suite_superpose(const std::vector<EdgeFlow>& flows, const SuiteOptions& o);
Report suite_embed(const std::vector<EdgeFlow>& flows, int grid, const SuiteOptions& o);
// Pairs are drawn from `flows` when at least two are given.
Report suite_hilbert(const GraphPtr& g, const std::vector<EdgeFlow>& flows, const SuiteOptions& o);
Report suite_counterexample(const SuiteOptions& o);

}  // namespace hcat
