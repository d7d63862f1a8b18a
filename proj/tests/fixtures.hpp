#pragma once

#include "loopline/instance.hpp"

// Shared hand-built instances used across the test suites.
namespace fixtures {

using namespace loopline;

// Five-node unit circuit (a,b,c,d,e) = (0,1,2,3,4) with six requests and
// Cap = 2; the canonical tram walkthrough. Eight passenger intervals, four
// color classes, two subtours, optimal length 10.
inline Instance tram_example() {
    Topology topo = Topology::circuit(std::vector<Rat>(5, Rat(1)));
    std::vector<Request> reqs = {
        {Rat(1), 2, 4, 2},  // r1: c -> e, two passengers
        {Rat(2), 0, 3, 1},  // r2: a -> d
        {Rat(3), 3, 4, 1},  // r3: d -> e
        {Rat(4), 1, 2, 2},  // r4: b -> c, two passengers
        {Rat(5), 0, 1, 1},  // r5: a -> b
        {Rat(6), 1, 4, 1},  // r6: b -> e
    };
    FleetConfig fleet{1, 2, Rat(1)};
    RequestSequence seq = checked_sequence(std::move(reqs), Rat(6), topo);
    return Instance{std::move(topo), fleet, std::move(seq)};
}

// Nine requests on a five-node unit line with Cap = 2 whose load table
// is pinned by tests: up loads (3,1,1,4), down loads (1,0,1,5),
// multiplicities up (2,1,1,2) and down (1,0,1,3). Request index 2 is the
// double load v_3 -> v_4.
inline Instance elevator_example() {
    Topology topo = Topology::line(std::vector<Rat>(4, Rat(1)));
    std::vector<Request> reqs = {
        {Rat(0), 0, 1, 2},  // up
        {Rat(1), 0, 2, 1},  // up
        {Rat(2), 3, 4, 2},  // up (r_3 of the walkthrough)
        {Rat(3), 2, 4, 1},  // up
        {Rat(4), 3, 4, 1},  // up
        {Rat(5), 4, 3, 3},  // down
        {Rat(6), 4, 3, 1},  // down
        {Rat(7), 4, 2, 1},  // down
        {Rat(8), 1, 0, 1},  // down
    };
    FleetConfig fleet{1, 2, Rat(1)};
    RequestSequence seq = checked_sequence(std::move(reqs), Rat(8), topo);
    return Instance{std::move(topo), fleet, std::move(seq)};
}

}  // namespace fixtures
