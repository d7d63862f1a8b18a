#pragma once

#include <vector>

#include "loopline/schedule.hpp"

namespace loopline::tram {

// One passenger of one request, as an interval on the cut-open path
// P = (v_0, ..., v_n, v_0). Positions are distances from the circuit
// origin; a destination of v_0 sits at the far end of P.
struct PassengerInterval {
    int request = -1;
    int passenger = 1;  // 1..z
    NodeId origin = 0;
    NodeId destination = 0;
    Rat start;
    Rat end;
};

struct IntervalColoring {
    std::vector<PassengerInterval> intervals;  // sorted by left endpoint
    std::vector<int> color;                    // 1-based, parallel to intervals
    int colors_used = 0;
    int clique_number = 0;  // max passengers crossing one edge
};

// Position of a request's endpoints on P; rejects requests whose forward
// path would contain the circuit origin in its interior.
Rat path_start(const Request& r, const Topology& topo);
Rat path_end(const Request& r, const Topology& topo);

// Splits every request into z_j unit intervals, sorted by left endpoint
// (ties: right endpoint, request id, passenger index).
std::vector<PassengerInterval> split_to_intervals(const RequestSequence& seq,
                                                  const Topology& topo);

// First-fit coloring in left-endpoint order; on interval graphs this uses
// exactly the clique number many colors. Intervals sharing only an
// endpoint do not conflict (passengers can swap at a stop).
IntervalColoring greedy_color(std::vector<PassengerInterval> intervals);

// Optimal offline tram schedule: wait until the last release, then run
// ceil(w/Cap) full-circuit subtours, each serving up to Cap color classes
// (taken in ascending color order).
TransportationSchedule opt_tram_schedule(const RequestSequence& seq,
                                         const Topology& topo,
                                         const FleetConfig& fleet);

// Closed form ceil(w/Cap) * |C|; always equals the schedule's length.
Rat opt_tram_cost(const RequestSequence& seq, const Topology& topo,
                  const FleetConfig& fleet);

}  // namespace loopline::tram
