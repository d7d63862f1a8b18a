#pragma once

#include <memory>

#include "loopline/sim.hpp"

namespace loopline::tram {

// SIR ("stop if requested"): as soon as a released passenger is waiting, an
// idle vehicle starts a full loop; loops in progress pick up any waiting
// passenger whose origin lies ahead, FIFO by release, up to capacity.
std::unique_ptr<sim::Policy> make_sir();

// SIF_M ("start if fully loaded", morning): vehicles leave the depot only
// with exactly Cap passengers aboard; at the horizon the rest are flushed.
// Requires all origins at v_0.
std::unique_ptr<sim::Policy> make_sif_m();

// SIF_E (evening counterpart): departs once Cap passengers are released,
// collects them along one loop and returns fully loaded to the depot.
// Requires all destinations at v_0.
std::unique_ptr<sim::Policy> make_sif_e();

// SIF_L (lunch): departs once the pending set admits a single-loop plan
// that is fully loaded on at least one arc; horizon flush as above.
std::unique_ptr<sim::Policy> make_sif_l();

}  // namespace loopline::tram
