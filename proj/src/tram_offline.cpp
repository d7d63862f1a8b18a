#include "loopline/tram_offline.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace loopline::tram {

namespace {

void require_circuit(const Topology& topo) {
    if (!topo.is_circuit())
        throw std::invalid_argument("tram mode runs on circuits only");
}

bool overlaps(const PassengerInterval& a, const PassengerInterval& b) {
    // Open-interval overlap; touching endpoints is not a conflict.
    return a.start < b.end && b.start < a.end;
}

}  // namespace

Rat path_start(const Request& r, const Topology& topo) {
    return topo.position(r.origin);
}

Rat path_end(const Request& r, const Topology& topo) {
    if (r.destination == topo.origin()) return topo.total_length();
    Rat end = topo.position(r.destination);
    if (end < topo.position(r.origin))
        throw std::invalid_argument(
            "request " + std::to_string(r.origin) + "->" + std::to_string(r.destination) +
            " crosses the circuit origin");
    return end;
}

std::vector<PassengerInterval> split_to_intervals(const RequestSequence& seq,
                                                  const Topology& topo) {
    require_circuit(topo);
    std::vector<PassengerInterval> intervals;
    for (int i = 0; i < seq.count(); ++i) {
        const Request& r = seq.requests[i];
        Rat s = path_start(r, topo);
        Rat e = path_end(r, topo);
        for (int p = 1; p <= r.load; ++p)
            intervals.push_back({i, p, r.origin, r.destination, s, e});
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const PassengerInterval& a, const PassengerInterval& b) {
                  if (a.start != b.start) return a.start < b.start;
                  if (a.end != b.end) return a.end < b.end;
                  if (a.request != b.request) return a.request < b.request;
                  return a.passenger < b.passenger;
              });
    return intervals;
}

IntervalColoring greedy_color(std::vector<PassengerInterval> intervals) {
    IntervalColoring out;
    out.color.assign(intervals.size(), 0);
    for (size_t i = 0; i < intervals.size(); ++i) {
        std::vector<bool> used(i + 2, false);
        for (size_t j = 0; j < i; ++j)
            if (overlaps(intervals[i], intervals[j])) used[out.color[j]] = true;
        int c = 1;
        while (used[c]) ++c;
        out.color[i] = c;
        out.colors_used = std::max(out.colors_used, c);
    }

    // Clique number computed independently as the max number of intervals
    // covering one point; on this multiset that is the max edge load.
    int w = 0;
    for (size_t i = 0; i < intervals.size(); ++i) {
        int cover = 0;
        for (const PassengerInterval& other : intervals)
            if (other.start <= intervals[i].start && intervals[i].start < other.end) ++cover;
        w = std::max(w, cover);
    }
    out.clique_number = w;
    assert(out.colors_used == out.clique_number);
    out.intervals = std::move(intervals);
    return out;
}

TransportationSchedule opt_tram_schedule(const RequestSequence& seq,
                                         const Topology& topo,
                                         const FleetConfig& fleet) {
    require_circuit(topo);
    check_fleet(fleet);
    TransportationSchedule sched;
    sched.tours.resize(fleet.vehicles);
    IntervalColoring coloring = greedy_color(split_to_intervals(seq, topo));
    if (coloring.intervals.empty()) return sched;

    Rat t_last(0);
    for (const Request& r : seq.requests) t_last = std::max(t_last, r.release);

    const int subtours = (coloring.colors_used + fleet.capacity - 1) / fleet.capacity;
    const int n_nodes = topo.node_count();
    const Rat loop_time = topo.total_length() / fleet.speed;
    std::vector<int> loops_done(fleet.vehicles, 0);

    for (int s = 0; s < subtours; ++s) {
        const int lo_color = s * fleet.capacity + 1;
        const int hi_color = lo_color + fleet.capacity - 1;
        const int vehicle = s % fleet.vehicles;
        const Rat depart0 = t_last + loop_time * Rat(loops_done[vehicle]++);

        std::vector<const PassengerInterval*> group;
        for (size_t i = 0; i < coloring.intervals.size(); ++i)
            if (coloring.color[i] >= lo_color && coloring.color[i] <= hi_color)
                group.push_back(&coloring.intervals[i]);

        auto& tour = sched.tours[vehicle];
        Rat at = depart0;
        for (int e = 0; e < n_nodes; ++e) {
            Move mv;
            mv.vehicle = vehicle;
            mv.from = e;
            mv.to = topo.next_on_circuit(e);
            mv.length = topo.edge_length(e);
            mv.depart = at;
            mv.arrive = at + mv.length / fleet.speed;
            const Rat seg_lo = topo.position(e);
            std::vector<OnboardEntry> onboard;
            for (const PassengerInterval* pi : group) {
                if (pi->start <= seg_lo && seg_lo < pi->end) {
                    bool merged = false;
                    for (OnboardEntry& oe : onboard)
                        if (oe.request == pi->request) { ++oe.passengers; merged = true; break; }
                    if (!merged) onboard.push_back({pi->request, 1});
                }
                if (pi->start == seg_lo)
                    sched.pickups.push_back({pi->request, 1, e, at});
            }
            mv.onboard = std::move(onboard);
            at = mv.arrive;
            tour.push_back(std::move(mv));
            // Dropoffs at the node just reached.
            const Rat seg_hi = e + 1 < n_nodes ? topo.position(e + 1) : topo.total_length();
            for (const PassengerInterval* pi : group)
                if (pi->end == seg_hi)
                    sched.dropoffs.push_back({pi->request, 1, topo.next_on_circuit(e), at});
        }
    }
    return sched;
}

Rat opt_tram_cost(const RequestSequence& seq, const Topology& topo,
                  const FleetConfig& fleet) {
    require_circuit(topo);
    check_fleet(fleet);
    IntervalColoring coloring = greedy_color(split_to_intervals(seq, topo));
    const int w = coloring.clique_number;
    const int subtours = (w + fleet.capacity - 1) / fleet.capacity;
    return topo.total_length() * Rat(subtours);
}

}  // namespace loopline::tram
