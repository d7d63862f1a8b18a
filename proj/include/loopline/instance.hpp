#pragma once

#include <string>

#include "loopline/requests.hpp"
#include "loopline/topology.hpp"

namespace loopline {

// A complete problem instance. The JSON form below is the single
// interchange format between the generators, the simulator and the CLI:
//
//   {"topology": {"kind": "circuit", "edge_lengths": [1, 1, 1, 1, 1]},
//    "fleet": {"k": 2, "cap": 3, "speed": 1},
//    "horizon": 100,
//    "requests": [{"t": 0, "x": 0, "y": 1, "z": 1}, ...]}
//
// Node ids are integer indices 0..n. Rationals are written as plain
// integers when integral and as "p/q" strings otherwise; both forms (and
// JSON doubles, converted exactly) are accepted on input.
struct Instance {
    Topology topology;
    FleetConfig fleet;
    RequestSequence requests;
};

std::string to_json_text(const Instance& inst);
Instance instance_from_json_text(const std::string& text);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace loopline
