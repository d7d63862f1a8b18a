#include "loopline/schedule.hpp"

#include <map>
#include <sstream>

namespace loopline {

namespace {

std::string kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::CapacityExceeded: return "capacity";
        case ViolationKind::ServedBeforeRelease: return "before-release";
        case ViolationKind::TourNotDepotClosed: return "depot";
        case ViolationKind::UnservedPassengers: return "unserved";
        case ViolationKind::IllegalMove: return "illegal-move";
        case ViolationKind::BadTiming: return "timing";
        case ViolationKind::WrongStop: return "wrong-stop";
        case ViolationKind::EventMismatch: return "event-mismatch";
    }
    return "?";
}

struct StopKey {
    int request;
    NodeId node;
    Rat time;
    bool operator<(const StopKey& o) const {
        if (request != o.request) return request < o.request;
        if (node != o.node) return node < o.node;
        return time < o.time;
    }
    bool operator==(const StopKey& o) const {
        return request == o.request && node == o.node && time == o.time;
    }
};

using StopTally = std::map<StopKey, int>;

StopTally tally(const std::vector<StopEvent>& events) {
    StopTally t;
    for (const StopEvent& e : events) t[{e.request, e.node, e.time}] += e.passengers;
    return t;
}

}  // namespace

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << violations.size() << " violation(s)";
    for (const Violation& v : violations)
        os << "\n  [" << kind_name(v.kind) << "] " << v.detail;
    return os.str();
}

ValidationReport validate_schedule(const TransportationSchedule& s,
                                   const RequestSequence& seq,
                                   const Topology& topo,
                                   const FleetConfig& fleet) {
    ValidationReport report;
    auto flag = [&](ViolationKind k, const std::string& d) {
        report.violations.push_back({k, d});
    };

    const int m = seq.count();
    std::vector<int> boarded(m, 0), dropped(m, 0);
    StopTally derived_pickups, derived_dropoffs;

    for (int v = 0; v < (int)s.tours.size(); ++v) {
        const auto& tour = s.tours[v];
        if (tour.empty()) continue;
        const std::string tag = "vehicle " + std::to_string(v);

        if (tour.front().from != topo.origin() || tour.back().to != topo.origin())
            flag(ViolationKind::TourNotDepotClosed, tag + " tour not closed at depot");

        std::map<int, int> onboard_prev;  // request -> passengers before this move
        for (size_t i = 0; i < tour.size(); ++i) {
            const Move& mv = tour[i];
            const std::string mtag = tag + " move " + std::to_string(i);

            // Edge legality and recorded length.
            bool legal_edge = true;
            Rat expect_len(0);
            if (topo.is_circuit()) {
                if (mv.to != topo.next_on_circuit(mv.from)) legal_edge = false;
                else expect_len = topo.edge_length(mv.from);
            } else {
                if (mv.to == mv.from + 1) expect_len = topo.edge_length(mv.from);
                else if (mv.to == mv.from - 1) expect_len = topo.edge_length(mv.to);
                else legal_edge = false;
            }
            if (!legal_edge)
                flag(ViolationKind::IllegalMove, mtag + " uses a non-adjacent or wrong-direction edge");
            else if (mv.length != expect_len)
                flag(ViolationKind::IllegalMove, mtag + " length does not match the edge");
            if (legal_edge && mv.arrive != mv.depart + mv.length / fleet.speed)
                flag(ViolationKind::BadTiming, mtag + " arrive != depart + length/speed");
            if (i > 0) {
                if (mv.from != tour[i - 1].to)
                    flag(ViolationKind::IllegalMove, mtag + " does not continue previous move");
                if (mv.depart < tour[i - 1].arrive)
                    flag(ViolationKind::BadTiming, mtag + " departs before previous arrival");
            }

            int load = 0;
            std::map<int, int> onboard_now;
            for (const OnboardEntry& e : mv.onboard) {
                if (e.request < 0 || e.request >= m || e.passengers < 1) {
                    flag(ViolationKind::IllegalMove, mtag + " has a malformed onboard entry");
                    continue;
                }
                load += e.passengers;
                onboard_now[e.request] += e.passengers;
            }
            if (load > fleet.capacity)
                flag(ViolationKind::CapacityExceeded,
                     mtag + " carries " + std::to_string(load) + " > Cap");

            // Diff against the previous move: boardings and alightings at mv.from.
            for (const auto& [req, now] : onboard_now) {
                int before = 0;
                if (auto it = onboard_prev.find(req); it != onboard_prev.end()) before = it->second;
                if (now > before) {
                    const Request& r = seq.requests[req];
                    if (mv.from != r.origin)
                        flag(ViolationKind::WrongStop,
                             mtag + " boards request " + std::to_string(req) + " away from its origin");
                    if (mv.depart < r.release)
                        flag(ViolationKind::ServedBeforeRelease,
                             "request " + std::to_string(req) + " boarded at t=" + mv.depart.str() +
                                 " before release t=" + r.release.str());
                    boarded[req] += now - before;
                    derived_pickups[{req, mv.from, mv.depart}] += now - before;
                }
            }
            for (const auto& [req, before] : onboard_prev) {
                int now = 0;
                if (auto it = onboard_now.find(req); it != onboard_now.end()) now = it->second;
                if (now < before) {
                    const Request& r = seq.requests[req];
                    if (mv.from != r.destination)
                        flag(ViolationKind::WrongStop,
                             mtag + " drops request " + std::to_string(req) + " away from its destination");
                    dropped[req] += before - now;
                    derived_dropoffs[{req, mv.from, tour[i - 1].arrive}] += before - now;
                }
            }
            onboard_prev = std::move(onboard_now);
        }

        // Whoever is still on board alights at the end of the tour.
        for (const auto& [req, cnt] : onboard_prev) {
            const Request& r = seq.requests[req];
            if (tour.back().to != r.destination)
                flag(ViolationKind::WrongStop,
                     tag + " ends with request " + std::to_string(req) + " away from its destination");
            dropped[req] += cnt;
            derived_dropoffs[{req, tour.back().to, tour.back().arrive}] += cnt;
        }
    }

    for (int r = 0; r < m; ++r) {
        if (boarded[r] != seq.requests[r].load || dropped[r] != seq.requests[r].load)
            flag(ViolationKind::UnservedPassengers,
                 "request " + std::to_string(r) + " served " + std::to_string(dropped[r]) + "/" +
                     std::to_string(seq.requests[r].load));
    }

    if (tally(s.pickups) != derived_pickups)
        flag(ViolationKind::EventMismatch, "recorded pickups disagree with moves");
    if (tally(s.dropoffs) != derived_dropoffs)
        flag(ViolationKind::EventMismatch, "recorded dropoffs disagree with moves");

    return report;
}

}  // namespace loopline
