#include "hcat/instances.hpp"

#include <numbers>
#include <string>

#include "hcat/rng.hpp"

namespace hcat {

std::shared_ptr<GraphSpace> make_tripod(double leg) {
    GraphGeometry g(4, {{0, 1, leg}, {0, 2, leg}, {0, 3, leg}});
    return std::make_shared<GraphSpace>(std::move(g), std::vector<std::string>{"o", "a", "b", "c"});
}

std::shared_ptr<GraphSpace> make_random_tree(int edges, std::uint64_t seed) {
    CounterRng rng(seed, 0x74ee);
    std::vector<GraphEdge> list;
    std::vector<std::string> names{"n0"};
    for (int i = 1; i <= edges; ++i) {
        int parent = static_cast<int>(rng.index(static_cast<std::uint64_t>(i)));
        double len = 0.5 + rng.uniform();
        list.push_back({parent, i, len});
        names.push_back("n" + std::to_string(i));
    }
    return std::make_shared<GraphSpace>(GraphGeometry(edges + 1, list), names);
}

std::shared_ptr<GraphCone> make_cone3() {
    return cone_over_points({{0.0, 2.0, 2.5}, {2.0, 0.0, 2.2}, {2.5, 2.2, 0.0}});
}

std::shared_ptr<GraphCone> make_tripod_cone() {
    double pi = std::numbers::pi;
    return cone_over_points({{0.0, pi, pi}, {pi, 0.0, pi}, {pi, pi, 0.0}});
}

}  // namespace hcat
