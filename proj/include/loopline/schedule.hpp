#pragma once

#include <string>
#include <vector>

#include "loopline/requests.hpp"
#include "loopline/topology.hpp"

namespace loopline {

struct OnboardEntry {
    int request = -1;
    int passengers = 0;
};

// One edge traversal of one vehicle, together with who is on board while
// the edge is driven.
struct Move {
    int vehicle = 0;
    NodeId from = 0;
    NodeId to = 0;
    Rat depart;
    Rat arrive;
    Rat length;
    std::vector<OnboardEntry> onboard;
};

struct StopEvent {
    int request = -1;
    int passengers = 0;
    NodeId node = 0;
    Rat time;
};

// Per-vehicle tours of timed moves plus the pickup/dropoff events they
// imply. This is the object every cost function and validator consumes.
struct TransportationSchedule {
    std::vector<std::vector<Move>> tours;   // one list per vehicle
    std::vector<StopEvent> pickups;
    std::vector<StopEvent> dropoffs;

    bool empty() const {
        for (const auto& t : tours)
            if (!t.empty()) return false;
        return true;
    }
};

// Sum of edge lengths over all moves of all vehicles; waiting is free.
inline Rat total_tour_length(const TransportationSchedule& s) {
    Rat total(0);
    for (const auto& tour : s.tours)
        for (const Move& m : tour) total += m.length;
    return total;
}

enum class ViolationKind {
    CapacityExceeded,
    ServedBeforeRelease,
    TourNotDepotClosed,
    UnservedPassengers,
    IllegalMove,
    BadTiming,
    WrongStop,
    EventMismatch,
};

struct Violation {
    ViolationKind kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

// Checks every schedule invariant and reports all violations as data:
// depot closure, move legality and timing, capacity, pickup at origin not
// before release, dropoff at destination only (no node preemption), full
// service of every passenger, and consistency of the recorded stop events
// with the moves.
ValidationReport validate_schedule(const TransportationSchedule& s,
                                   const RequestSequence& seq,
                                   const Topology& topo,
                                   const FleetConfig& fleet);

}  // namespace loopline
