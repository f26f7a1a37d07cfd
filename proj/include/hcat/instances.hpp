#pragma once

#include <cstdint>
#include <memory>

#include "hcat/space.hpp"

namespace hcat {

// Three unit legs a, b, c glued at hub o (vertex 0).
std::shared_ptr<GraphSpace> make_tripod(double leg = 1.0);
// Random tree with the given number of edges; lengths in [0.5, 1.5].
std::shared_ptr<GraphSpace> make_random_tree(int edges, std::uint64_t seed);
// Cone over three base points at distances (2.0, 2.5, 2.2).
std::shared_ptr<GraphCone> make_cone3();
// The same tripod as a cone over three points at mutual distance pi.
std::shared_ptr<GraphCone> make_tripod_cone();

}  // namespace hcat
