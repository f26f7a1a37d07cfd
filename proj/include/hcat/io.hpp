#pragma once

#include <string>
#include <vector>

#include "hcat/barycenter.hpp"
#include "hcat/curves.hpp"
#include "hcat/transport.hpp"
#include "json.hpp"

namespace hcat {

using nlohmann::json;

// All loaders raise ConfigError on unreadable files or malformed content.
json load_json(const std::string& path);

// {"type":"model","kappa":K}, {"type":"tree"|"graph","nodes":[..],"edges":[["a","b",len],..]},
// {"type":"cone","base_distances":[[..],..]}, {"type":"tripod","leg":L},
// {"type":"random_tree","edges":N,"seed":S}
SpacePtr space_from_json(const json& j);

// model: {"polar":[r,phi]} | {"xy":[x,y]} (kappa = 0) | {"coords":[x,y,z]}
// graph: {"node":"a"} | {"edge":["a","b"] or index,"offset":s}
// cone:  {"r":r,"vertex":i} | {"r":r,"edge":i,"offset":s}
Point point_from_json(const Space& s, const json& j);
json point_to_json(const Space& s, const Point& p);

// {"atoms":[{"point":{..},"weight":w},..]}
DiscreteMeasure measure_from_json(SpacePtr s, const json& j);
// {"times":[..],"points":[..]}
SampledCurve curve_from_json(SpacePtr s, const json& j);

// {"nodes":[..] (optional),"edges":[["a","b",len],..],"density":[..] (optional)};
// a tree space descriptor is accepted as well.
GraphPtr graph_from_json(const json& j);
// {"flow":[["a","b",v],..]} (listing ["b","a",v] means -v) or {"values":[..]} per edge.
EdgeFlow flow_from_json(const GraphPtr& g, const json& j);
json graph_to_json(const MetricGraph& g);
json flow_to_json(const EdgeFlow& b);

}  // namespace hcat
