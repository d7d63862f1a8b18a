#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopline/schedule.hpp"

namespace loopline::elevator {

// Per-edge directed passenger loads on a line, and the minimum number of
// traversals m = ceil(load/Cap) any feasible schedule needs per direction.
struct ArcLoads {
    std::vector<long long> up_load;    // edge e, direction v_e -> v_{e+1}
    std::vector<long long> down_load;  // edge e, direction v_{e+1} -> v_e
    std::vector<int> up_mult;
    std::vector<int> down_mult;

    bool all_zero() const {
        for (int m : up_mult) if (m) return false;
        for (int m : down_mult) if (m) return false;
        return true;
    }
};

ArcLoads compute_arc_loads(const RequestSequence& seq, const Topology& line,
                           const FleetConfig& fleet);

enum class FlowArcKind { Source, Up, Down, Link, Sink };

// The min-cost-flow network. Each line node owns up to two copies, an
// up-copy and a down-copy; a copy exists when it is the origin and/or
// destination of a required arc of that direction, and only those roles
// attach source, sink and link arcs to it. Required up/down arcs carry
// exactly their multiplicity; link arcs are costed deadhead repositioning
// between a traversal's end and the next traversal's start.
struct FlowNetwork {
    struct Copy {
        NodeId phys = 0;
        bool up = true;
        bool origin_role = false;
        bool dest_role = false;
    };
    struct Arc {
        int from = 0;  // node index: 0 = s, 1 = t, 2 + c = copy c
        int to = 0;
        Rat cost;
        FlowArcKind kind = FlowArcKind::Link;
        int required = -1;  // multiplicity for Up/Down arcs, -1 = free
        int edge = -1;      // line edge index for Up/Down arcs
    };

    std::vector<Copy> copies;
    std::vector<Arc> arcs;
    std::vector<Rat> edge_lengths;  // of the underlying line

    static constexpr int s_node = 0;
    static constexpr int t_node = 1;
    int node_count() const { return (int)copies.size() + 2; }
    int copy_node(int c) const { return 2 + c; }
};

// Returns std::nullopt when every multiplicity is zero (empty schedule).
std::optional<FlowNetwork> build_flow_network(const ArcLoads& loads,
                                              const Topology& line);

struct IntegerFlow {
    std::vector<long long> values;  // parallel to FlowNetwork::arcs
    Rat objective;
    int cut_rounds = 0;             // lazy isolated-cycle rounds
    int cuts_added = 0;
    long long nodes_explored = 0;
};

// Exact branch-and-bound over integer arc flows with interval propagation
// on the conservation system; isolated cycles in the support are cut away
// lazily with delta(W) >= 2 constraints until the support is connected to
// the source.
IntegerFlow solve_min_cost_flow(const FlowNetwork& net);

// Debug dump of the network (and solution, when given) as structured text.
std::string dump_flow_network(const FlowNetwork& net, const IntegerFlow* flow = nullptr);

// Eulerian s->t walk over the flow support, mapped back to timed vehicle
// moves on the line; passengers ride monotone runs of the walk, assigned
// earliest-run-first. Departure is delayed to the last release so the
// result validates cleanly. Total length equals the flow objective.
TransportationSchedule decompose_flow(const IntegerFlow& flow, const FlowNetwork& net,
                                      const RequestSequence& seq, const Topology& line,
                                      const FleetConfig& fleet);

// Convenience wrappers over the load -> network -> flow -> schedule chain.
Rat opt_elevator_cost(const RequestSequence& seq, const Topology& line,
                      const FleetConfig& fleet);
TransportationSchedule opt_elevator_schedule(const RequestSequence& seq,
                                             const Topology& line,
                                             const FleetConfig& fleet);

}  // namespace loopline::elevator
