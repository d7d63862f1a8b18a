#include "loopline/sim.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace loopline::sim {

namespace {

struct QueuedEvent {
    Event ev;
    int order;  // Release < Arrival < HorizonEnd at equal times
    int id;     // request or vehicle id
    long long seq;
};

struct QueuedEventLater {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        if (a.ev.time != b.ev.time) return b.ev.time < a.ev.time;
        if (a.order != b.order) return a.order > b.order;
        if (a.id != b.id) return a.id > b.id;
        return a.seq > b.seq;
    }
};

}  // namespace

struct Assignment {
    PassengerRef ref;
    int board_idx;
    int alight_idx;
};

struct Tour {
    int vehicle = -1;
    std::vector<NodeId> plan;
    int next_idx = 0;  // plan index the vehicle arrives at next
    bool done = false;
    bool is_line = false;
    int apex_idx = 0;
    Rat last_time;  // time the vehicle was at plan[next_idx - 1]
    std::vector<Assignment> assignments;
};

struct VehicleState {
    bool idle = true;
    int tour = -1;
};

class Simulation {
public:
    Simulation(Policy& policy, const Topology& topo, const RequestSequence& seq,
               const FleetConfig& fleet, const RunOptions& opts)
        : policy_(policy), topo_(topo), seq_(seq), fleet_(fleet), opts_(opts) {
        check_fleet(fleet);
        if (policy.topology_kind() != topo.kind())
            throw std::invalid_argument(std::string(policy.name()) +
                                        " does not run on this topology kind");
        vehicles_.resize(fleet.vehicles);
        released_.assign(seq.count(), false);
        assigned_.resize(seq.count());
        dropped_.assign(seq.count(), 0);
        for (int i = 0; i < seq.count(); ++i)
            assigned_[i].assign(seq.requests[i].load + 1, false);
        schedule_.tours.resize(fleet.vehicles);
    }

    TransportationSchedule run() {
        for (int i = 0; i < seq_.count(); ++i)
            push({seq_.requests[i].release, EventKind::Release, -1, i}, 0, i);
        push({seq_.horizon, EventKind::HorizonEnd, -1, -1}, 2, 0);

        Control ctl(*this);
        while (!queue_.empty()) {
            QueuedEvent qe = queue_.top();
            queue_.pop();
            now_ = qe.ev.time;
            apply(qe.ev);
            trace(qe.ev);
            policy_.on_event(ctl, qe.ev);
        }

        for (int i = 0; i < seq_.count(); ++i)
            if (dropped_[i] != seq_.requests[i].load)
                throw std::logic_error(std::string(policy_.name()) + " left request " +
                                       std::to_string(i) + " partially unserved");
        return std::move(schedule_);
    }

    // --- queries -----------------------------------------------------------

    const Topology& topology() const { return topo_; }
    const FleetConfig& fleet() const { return fleet_; }
    Rat now() const { return now_; }
    bool horizon_passed() const { return horizon_passed_; }
    bool instant_settled() const { return queue_.empty() || now_ < queue_.top().ev.time; }
    int vehicle_count() const { return (int)vehicles_.size(); }
    bool vehicle_idle(int v) const { return vehicles_.at(v).idle; }

    int next_idle_vehicle() {
        for (int i = 0; i < (int)vehicles_.size(); ++i) {
            int v = (rr_cursor_ + i) % (int)vehicles_.size();
            if (vehicles_[v].idle) {
                rr_cursor_ = (v + 1) % (int)vehicles_.size();
                return v;
            }
        }
        return -1;
    }

    std::vector<WaitingPassenger> pending() const {
        std::vector<WaitingPassenger> out;
        for (int i = 0; i < seq_.count(); ++i) {
            if (!released_[i]) continue;
            const Request& r = seq_.requests[i];
            for (int p = 1; p <= r.load; ++p)
                if (!assigned_[i][p])
                    out.push_back({{i, p}, r.origin, r.destination, r.release});
        }
        return out;  // request ids are release-ordered, so this is FIFO
    }

    bool tour_active(int t) const { return t >= 0 && t < (int)tours_.size() && !tours_[t].done; }

    bool tour_ascending(int t) const {
        const Tour& tour = tour_ref(t);
        if (!tour.is_line) throw std::logic_error("tour_ascending: not a line tour");
        return tour.next_idx <= tour.apex_idx;
    }

    NodeId tour_apex(int t) const {
        const Tour& tour = tour_ref(t);
        if (!tour.is_line) throw std::logic_error("tour_apex: not a line tour");
        return tour.plan[tour.apex_idx];
    }

    // --- commands ----------------------------------------------------------

    int launch_loop(int vehicle) {
        if (!topo_.is_circuit()) throw std::logic_error("launch_loop on a line");
        return launch(vehicle, loop_plan(), false, 0);
    }

    int launch_line_tour(int vehicle, NodeId apex) {
        if (topo_.is_circuit()) throw std::logic_error("launch_line_tour on a circuit");
        topo_.require_node(apex);
        if (apex < 1) throw std::logic_error("line tour apex must not be the depot");
        return launch(vehicle, line_plan(apex), true, apex);
    }

    bool try_assign(int t, const PassengerRef& p, bool allow_extend) {
        Tour& tour = tour_ref(t);
        if (tour.done) throw std::logic_error("assignment to a finished tour");
        const Request& r = request_of(p);
        if (!released_[p.request]) throw std::logic_error("assignment of an unreleased passenger");
        if (assigned_[p.request][p.passenger])
            throw std::logic_error("passenger assigned twice");

        int board, alight;
        if (!tour.is_line) {
            board = r.origin;
            alight = r.destination == 0 ? (int)tour.plan.size() - 1 : r.destination;
        } else if (r.is_up()) {
            board = r.origin;
            alight = r.destination;
            if (alight > tour.plan[tour.apex_idx]) {
                if (!allow_extend || tour.next_idx > tour.apex_idx) return false;
                if (board < tour.next_idx) return false;
                extend_apex(tour, r.destination);
                alight = r.destination;
            }
        } else {
            // Down passengers ride the descent; descent index of node v is
            // 2*apex - v.
            if (r.origin > tour.plan[tour.apex_idx]) return false;
            board = 2 * tour.apex_idx - r.origin;
            alight = 2 * tour.apex_idx - r.destination;
        }
        if (board < tour.next_idx) return false;
        for (int s = board; s < alight; ++s)
            if (segment_load(tour, s) + 1 > fleet_.capacity) return false;

        tour.assignments.push_back({p, board, alight});
        assigned_[p.request][p.passenger] = true;
        log("assign tour=" + std::to_string(t) + " request=" + std::to_string(p.request) +
            " passenger=" + std::to_string(p.passenger));
        return true;
    }

private:
    const Request& request_of(const PassengerRef& p) const {
        if (p.request < 0 || p.request >= seq_.count())
            throw std::logic_error("bad passenger reference");
        const Request& r = seq_.requests[p.request];
        if (p.passenger < 1 || p.passenger > r.load)
            throw std::logic_error("bad passenger index");
        return r;
    }

    Tour& tour_ref(int t) {
        if (t < 0 || t >= (int)tours_.size()) throw std::logic_error("bad tour handle");
        return tours_[t];
    }
    const Tour& tour_ref(int t) const { return const_cast<Simulation*>(this)->tour_ref(t); }

    std::vector<NodeId> loop_plan() const {
        std::vector<NodeId> plan;
        for (int v = 0; v < topo_.node_count(); ++v) plan.push_back(v);
        plan.push_back(0);
        return plan;
    }

    std::vector<NodeId> line_plan(NodeId apex) const {
        std::vector<NodeId> plan;
        for (int v = 0; v <= apex; ++v) plan.push_back(v);
        for (int v = apex - 1; v >= 0; --v) plan.push_back(v);
        return plan;
    }

    int launch(int vehicle, std::vector<NodeId> plan, bool is_line, NodeId apex) {
        if (vehicle < 0 || vehicle >= (int)vehicles_.size())
            throw std::logic_error("bad vehicle id");
        if (!vehicles_[vehicle].idle) throw std::logic_error("vehicle is not idle");
        Tour tour;
        tour.vehicle = vehicle;
        tour.plan = std::move(plan);
        tour.is_line = is_line;
        tour.apex_idx = apex;
        tour.last_time = now_;
        tours_.push_back(std::move(tour));
        int handle = (int)tours_.size() - 1;
        vehicles_[vehicle].idle = false;
        vehicles_[vehicle].tour = handle;
        push({now_, EventKind::Arrival, vehicle, -1}, 1, vehicle);
        log(std::string("launch vehicle=") + std::to_string(vehicle) +
            (is_line ? " line apex=" + std::to_string(apex) : " loop") +
            " tour=" + std::to_string(handle));
        return handle;
    }

    void extend_apex(Tour& tour, NodeId apex) {
        for (const Assignment& a : tour.assignments)
            if (a.alight_idx > tour.apex_idx)
                throw std::logic_error("extension with riders on the descent");
        tour.plan = line_plan(apex);
        tour.apex_idx = apex;
    }

    int segment_load(const Tour& tour, int seg) const {
        int load = 0;
        for (const Assignment& a : tour.assignments)
            if (a.board_idx <= seg && seg < a.alight_idx) ++load;
        return load;
    }

    void push(const Event& ev, int order, int id) {
        queue_.push({ev, order, id, seq_counter_++});
    }

    void apply(const Event& ev) {
        switch (ev.kind) {
            case EventKind::Release:
                released_[ev.request] = true;
                break;
            case EventKind::HorizonEnd:
                horizon_passed_ = true;
                break;
            case EventKind::Arrival:
                arrive(ev.vehicle);
                break;
        }
    }

    void arrive(int vehicle) {
        VehicleState& vs = vehicles_.at(vehicle);
        Tour& tour = tour_ref(vs.tour);
        const int idx = tour.next_idx;
        const NodeId node = tour.plan[idx];

        if (idx > 0) {
            Move mv;
            mv.vehicle = vehicle;
            mv.from = tour.plan[idx - 1];
            mv.to = node;
            mv.depart = tour.last_time;
            mv.arrive = now_;
            mv.length = edge_between(mv.from, mv.to);
            std::map<int, int> counts;
            for (const Assignment& a : tour.assignments)
                if (a.board_idx <= idx - 1 && idx - 1 < a.alight_idx) ++counts[a.ref.request];
            for (const auto& [req, cnt] : counts) mv.onboard.push_back({req, cnt});
            schedule_.tours[vehicle].push_back(std::move(mv));
        }
        std::map<int, int> on, off;
        for (const Assignment& a : tour.assignments) {
            if (a.alight_idx == idx) ++off[a.ref.request];
            if (a.board_idx == idx) ++on[a.ref.request];
        }
        for (const auto& [req, cnt] : off) {
            schedule_.dropoffs.push_back({req, cnt, node, now_});
            dropped_[req] += cnt;
        }
        for (const auto& [req, cnt] : on) schedule_.pickups.push_back({req, cnt, node, now_});

        tour.last_time = now_;
        tour.next_idx = idx + 1;
        if (tour.next_idx < (int)tour.plan.size()) {
            Rat len = edge_between(node, tour.plan[tour.next_idx]);
            push({now_ + len / fleet_.speed, EventKind::Arrival, vehicle, -1}, 1, vehicle);
        } else {
            tour.done = true;
            vs.idle = true;
            vs.tour = -1;
        }
    }

    Rat edge_between(NodeId a, NodeId b) const {
        if (topo_.is_circuit()) return topo_.edge_length(a);
        return topo_.edge_length(std::min(a, b));
    }

    void trace(const Event& ev) {
        if (!opts_.trace) return;
        std::ostream& os = *opts_.trace;
        os << "{\"t\":\"" << now_.str() << "\",";
        switch (ev.kind) {
            case EventKind::Release:
                os << "\"kind\":\"release\",\"request\":" << ev.request;
                break;
            case EventKind::Arrival:
                os << "\"kind\":\"arrival\",\"vehicle\":" << ev.vehicle;
                break;
            case EventKind::HorizonEnd:
                os << "\"kind\":\"horizon_end\"";
                break;
        }
        os << "}\n";
    }

    void log(const std::string& what) {
        if (opts_.decision_log)
            opts_.decision_log->push_back("t=" + now_.str() + " " + what);
    }

    Policy& policy_;
    const Topology& topo_;
    const RequestSequence& seq_;
    const FleetConfig& fleet_;
    const RunOptions& opts_;

    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, QueuedEventLater> queue_;
    long long seq_counter_ = 0;
    Rat now_;
    bool horizon_passed_ = false;
    int rr_cursor_ = 0;

    std::vector<VehicleState> vehicles_;
    std::vector<Tour> tours_;
    std::vector<bool> released_;
    std::vector<std::vector<bool>> assigned_;  // [request][passenger]
    std::vector<int> dropped_;
    TransportationSchedule schedule_;
};

const Topology& Control::topology() const { return sim_.topology(); }
const FleetConfig& Control::fleet() const { return sim_.fleet(); }
Rat Control::now() const { return sim_.now(); }
bool Control::horizon_passed() const { return sim_.horizon_passed(); }
bool Control::instant_settled() const { return sim_.instant_settled(); }
int Control::vehicle_count() const { return sim_.vehicle_count(); }
bool Control::vehicle_idle(int v) const { return sim_.vehicle_idle(v); }
int Control::next_idle_vehicle() { return sim_.next_idle_vehicle(); }
std::vector<WaitingPassenger> Control::pending() const { return sim_.pending(); }
bool Control::tour_active(int t) const { return sim_.tour_active(t); }
bool Control::tour_ascending(int t) const { return sim_.tour_ascending(t); }
NodeId Control::tour_apex(int t) const { return sim_.tour_apex(t); }
int Control::launch_loop(int v) { return sim_.launch_loop(v); }
int Control::launch_line_tour(int v, NodeId apex) { return sim_.launch_line_tour(v, apex); }
bool Control::try_assign(int t, const PassengerRef& p) { return sim_.try_assign(t, p, false); }
bool Control::try_assign_extending(int t, const PassengerRef& p) {
    return sim_.try_assign(t, p, true);
}

TransportationSchedule run(Policy& policy, const Topology& topo,
                           const RequestSequence& seq, const FleetConfig& fleet,
                           const RunOptions& opts) {
    Simulation sim(policy, topo, seq, fleet, opts);
    return sim.run();
}

}  // namespace loopline::sim
