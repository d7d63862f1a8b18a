#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "loopline/rational.hpp"
#include "loopline/topology.hpp"

namespace loopline {

// Timed transport demand: z passengers from origin to destination, known to
// the system from the release time onward.
struct Request {
    Rat release;
    NodeId origin = 0;
    NodeId destination = 0;
    int load = 1;

    bool is_up() const { return origin < destination; }    // line direction
    bool is_down() const { return origin > destination; }
};

struct RequestSequence {
    std::vector<Request> requests;
    Rat horizon;

    int count() const { return (int)requests.size(); }
    int total_passengers() const {
        int p = 0;
        for (const Request& r : requests) p += r.load;
        return p;
    }
};

struct FleetConfig {
    int vehicles = 1;
    int capacity = 1;
    Rat speed = Rat(1);
};

// Checks the structural invariants of an instance and returns the sequence
// sorted by release time.
inline RequestSequence checked_sequence(std::vector<Request> requests,
                                        Rat horizon, const Topology& topo) {
    for (const Request& r : requests) {
        topo.require_node(r.origin);
        topo.require_node(r.destination);
        if (r.origin == r.destination)
            throw std::invalid_argument("request origin equals destination");
        if (r.load < 1)
            throw std::invalid_argument("request load must be >= 1");
        if (r.release < Rat(0) || r.release > horizon)
            throw std::invalid_argument("release time outside [0, horizon]");
    }
    std::stable_sort(requests.begin(), requests.end(),
                     [](const Request& a, const Request& b) { return a.release < b.release; });
    return RequestSequence{std::move(requests), horizon};
}

inline void check_fleet(const FleetConfig& fleet) {
    if (fleet.vehicles < 1) throw std::invalid_argument("need at least one vehicle");
    if (fleet.capacity < 1) throw std::invalid_argument("capacity must be >= 1");
    if (!(fleet.speed > Rat(0))) throw std::invalid_argument("speed must be positive");
}

}  // namespace loopline
