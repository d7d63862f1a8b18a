#pragma once

#include "loopline/requests.hpp"

// Test-only brute-force oracles, independent of the solver implementations
// they cross-check.
namespace oracles {

// Smallest total tour length of any feasible tram schedule: the least
// number of full loops into which all passengers can be packed without
// exceeding Cap on any edge, found by exhaustive packing, times |C|.
loopline::Rat tram_min_ttl(const loopline::RequestSequence& seq,
                           const loopline::Topology& circuit,
                           const loopline::FleetConfig& fleet);

// Smallest closed-walk length from the depot that crosses every edge in
// each direction at least its required-multiplicity many times; exhaustive
// shortest-path search over (position, remaining multiplicities) states.
loopline::Rat elevator_min_ttl(const loopline::RequestSequence& seq,
                               const loopline::Topology& line,
                               const loopline::FleetConfig& fleet);

// Closed-form cross-check for the same quantity: per edge the walk pays
// 2 * max(up multiplicity, down multiplicity, 1 if anything lies beyond).
loopline::Rat elevator_profile_ttl(const loopline::RequestSequence& seq,
                                   const loopline::Topology& line,
                                   const loopline::FleetConfig& fleet);

}  // namespace oracles
