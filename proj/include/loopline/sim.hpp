#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "loopline/schedule.hpp"

namespace loopline::sim {

// One passenger of one request.
struct PassengerRef {
    int request = -1;
    int passenger = 1;  // 1..z
    bool operator==(const PassengerRef& o) const {
        return request == o.request && passenger == o.passenger;
    }
};

enum class EventKind { Release, Arrival, HorizonEnd };

struct Event {
    Rat time;
    EventKind kind = EventKind::Release;
    int vehicle = -1;  // Arrival
    int request = -1;  // Release
};

// A released, not yet assigned passenger as policies see it.
struct WaitingPassenger {
    PassengerRef ref;
    NodeId origin = 0;
    NodeId destination = 0;
    Rat release;
};

class Simulation;

// Command-and-query surface handed to policies. Decisions may only use
// released information; the simulator never exposes future requests.
// Illegal commands abort the run with std::logic_error.
class Control {
public:
    explicit Control(Simulation& sim) : sim_(sim) {}

    const Topology& topology() const;
    const FleetConfig& fleet() const;
    Rat now() const;
    bool horizon_passed() const;
    // False while further events are queued for the current instant.
    // Policies that act on batches of simultaneous releases defer their
    // decision until the instant has settled.
    bool instant_settled() const;

    int vehicle_count() const;
    bool vehicle_idle(int vehicle) const;
    // Next idle vehicle in round-robin order, or -1. Idle vehicles sit at v_0.
    int next_idle_vehicle();

    // Released passengers not yet assigned to any tour, sorted by
    // (release, request, passenger).
    std::vector<WaitingPassenger> pending() const;

    bool tour_active(int tour) const;
    bool tour_ascending(int tour) const;  // line tours only
    NodeId tour_apex(int tour) const;

    // Dispatches an idle vehicle on one full circuit loop starting now.
    // Returns a tour handle.
    int launch_loop(int vehicle);
    // Dispatches an idle vehicle on a line subtour v_0 -> apex -> v_0.
    int launch_line_tour(int vehicle, NodeId apex);

    // Adds a passenger to a tour if its origin has not been passed and
    // capacity allows on every edge it would ride; returns false otherwise.
    bool try_assign(int tour, const PassengerRef& p);
    // Same, but an up-passenger whose destination lies beyond the apex may
    // extend an ascending line tour.
    bool try_assign_extending(int tour, const PassengerRef& p);

private:
    Simulation& sim_;
};

// Online dispatch policy: a deterministic state machine consulted after
// every simulation event.
class Policy {
public:
    virtual ~Policy() = default;
    virtual const char* name() const = 0;
    virtual TopologyKind topology_kind() const = 0;
    virtual void on_event(Control& ctl, const Event& ev) = 0;
};

struct RunOptions {
    std::ostream* trace = nullptr;                 // line-delimited JSON event log
    std::vector<std::string>* decision_log = nullptr;
};

// Releases requests over time, drives the policy, executes the resulting
// moves and records the schedule. Runs past the horizon until all pending
// work has drained; throws std::logic_error if the policy leaves
// passengers unserved or issues an illegal command.
TransportationSchedule run(Policy& policy, const Topology& topo,
                           const RequestSequence& seq, const FleetConfig& fleet,
                           const RunOptions& opts = {});

}  // namespace loopline::sim
