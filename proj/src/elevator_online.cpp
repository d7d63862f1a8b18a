#include "loopline/elevator_online.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace loopline::elevator {

namespace {

using sim::Control;
using sim::Event;
using sim::Policy;
using sim::WaitingPassenger;

class MainPolicy : public Policy {
public:
    const char* name() const override { return "MAIN"; }
    TopologyKind topology_kind() const override { return TopologyKind::Line; }

    void on_event(Control& ctl, const Event& ev) override {
        if (ctl.vehicle_count() != 1)
            throw std::invalid_argument("MAIN runs a single vehicle");

        if (ev.kind == sim::EventKind::Release && ctl.tour_active(tour_))
            board_en_route(ctl);

        if (!ctl.instant_settled()) return;  // batch simultaneous releases
        while (ctl.vehicle_idle(0)) {
            auto pending = ctl.pending();
            if (pending.empty()) break;
            launch(ctl, pending);
        }
    }

private:
    void launch(Control& ctl, std::vector<WaitingPassenger>& pending) {
        const int cap = ctl.fleet().capacity;
        std::vector<WaitingPassenger> ups, downs;
        for (const WaitingPassenger& p : pending)
            (p.origin < p.destination ? ups : downs).push_back(p);

        if (!ups.empty()) {
            // Up-passengers by origin, then FIFO.
            std::sort(ups.begin(), ups.end(), [](const auto& a, const auto& b) {
                if (a.origin != b.origin) return a.origin < b.origin;
                if (a.release != b.release) return a.release < b.release;
                if (a.ref.request != b.ref.request) return a.ref.request < b.ref.request;
                return a.ref.passenger < b.ref.passenger;
            });
            int take = std::min<int>(cap, (int)ups.size());
            NodeId apex = 0;
            for (int i = 0; i < take; ++i) apex = std::max(apex, ups[i].destination);
            up_tour_ = true;
            tour_ = ctl.launch_line_tour(0, apex);
            for (int i = 0; i < take; ++i)
                if (!ctl.try_assign(tour_, ups[i].ref))
                    throw std::logic_error("MAIN up boarding plan rejected");
        } else {
            // Down-passengers FIFO; ride up empty to the furthest origin.
            int take = std::min<int>(cap, (int)downs.size());
            NodeId apex = 0;
            for (int i = 0; i < take; ++i) apex = std::max(apex, downs[i].origin);
            up_tour_ = false;
            tour_ = ctl.launch_line_tour(0, apex);
            for (int i = 0; i < take; ++i)
                if (!ctl.try_assign(tour_, downs[i].ref))
                    throw std::logic_error("MAIN down boarding plan rejected");
        }
    }

    void board_en_route(Control& ctl) {
        const bool ascending = ctl.tour_ascending(tour_);
        for (const WaitingPassenger& p : ctl.pending()) {
            const bool up = p.origin < p.destination;
            if (ascending && up) {
                if (up_tour_)
                    ctl.try_assign_extending(tour_, p.ref);
                else
                    ctl.try_assign(tour_, p.ref);  // only fits below the apex
            } else if (!ascending && !up) {
                ctl.try_assign(tour_, p.ref);
            }
        }
    }

    int tour_ = -1;
    bool up_tour_ = false;
};

}  // namespace

std::unique_ptr<sim::Policy> make_main() { return std::make_unique<MainPolicy>(); }

}  // namespace loopline::elevator
