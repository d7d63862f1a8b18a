#include "loopline/tram_online.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopline::tram {

namespace {

using sim::Control;
using sim::Event;
using sim::PassengerRef;
using sim::Policy;
using sim::WaitingPassenger;

class CircuitPolicy : public Policy {
public:
    TopologyKind topology_kind() const override { return TopologyKind::Circuit; }
};

// --- SIR --------------------------------------------------------------------

class SirPolicy : public CircuitPolicy {
public:
    const char* name() const override { return "SIR"; }

    void on_event(Control& ctl, const Event&) override {
        active_.erase(std::remove_if(active_.begin(), active_.end(),
                                     [&](int t) { return !ctl.tour_active(t); }),
                      active_.end());
        // En-route pickups first: oldest loop that can still take the passenger.
        for (const WaitingPassenger& p : ctl.pending())
            for (int t : active_)
                if (ctl.try_assign(t, p.ref)) break;
        // Then start loops while someone released is still unassigned.
        while (!ctl.pending().empty()) {
            int v = ctl.next_idle_vehicle();
            if (v < 0) break;
            int t = ctl.launch_loop(v);
            active_.push_back(t);
            for (const WaitingPassenger& p : ctl.pending()) ctl.try_assign(t, p.ref);
        }
    }

private:
    std::vector<int> active_;
};

// --- SIF variants -----------------------------------------------------------

class SifMPolicy : public CircuitPolicy {
public:
    const char* name() const override { return "SIF_M"; }

    void on_event(Control& ctl, const Event&) override {
        const int cap = ctl.fleet().capacity;
        auto pending = ctl.pending();
        for (const WaitingPassenger& p : pending)
            if (p.origin != ctl.topology().origin())
                throw std::invalid_argument("SIF_M requires a morning instance (origins at v_0)");
        while ((int)pending.size() >= cap || (ctl.horizon_passed() && !pending.empty())) {
            int v = ctl.next_idle_vehicle();
            if (v < 0) break;
            int t = ctl.launch_loop(v);
            int take = std::min<int>(cap, (int)pending.size());
            for (int i = 0; i < take; ++i)
                if (!ctl.try_assign(t, pending[i].ref))
                    throw std::logic_error("SIF_M boarding plan rejected");
            pending = ctl.pending();
        }
    }
};

class SifEPolicy : public CircuitPolicy {
public:
    const char* name() const override { return "SIF_E"; }

    void on_event(Control& ctl, const Event&) override {
        const int cap = ctl.fleet().capacity;
        auto pending = ctl.pending();
        for (const WaitingPassenger& p : pending)
            if (p.destination != ctl.topology().origin())
                throw std::invalid_argument("SIF_E requires an evening instance (destinations at v_0)");
        while ((int)pending.size() >= cap || (ctl.horizon_passed() && !pending.empty())) {
            int v = ctl.next_idle_vehicle();
            if (v < 0) break;
            int t = ctl.launch_loop(v);
            int take = std::min<int>(cap, (int)pending.size());
            for (int i = 0; i < take; ++i)
                if (!ctl.try_assign(t, pending[i].ref))
                    throw std::logic_error("SIF_E boarding plan rejected");
            pending = ctl.pending();
        }
    }
};

// SIF_L departure test: select pending passengers FIFO while they fit the
// capacity of one loop. If anyone was left out, some arc is at Cap; else
// the selection's own maximum edge load decides.
class SifLPolicy : public CircuitPolicy {
public:
    const char* name() const override { return "SIF_L"; }

    void on_event(Control& ctl, const Event&) override {
        if (!ctl.instant_settled()) return;  // judge simultaneous releases together
        const Topology& topo = ctl.topology();
        const int cap = ctl.fleet().capacity;
        const int edges = topo.edge_count();
        while (true) {
            auto pending = ctl.pending();
            if (pending.empty()) break;

            std::vector<int> load(edges, 0);
            std::vector<const WaitingPassenger*> selection;
            bool excluded = false;
            int max_load = 0;
            for (const WaitingPassenger& p : pending) {
                auto [lo, hi] = edge_span(p, topo);
                bool fits = true;
                for (int e = lo; e < hi; ++e)
                    if (load[e] + 1 > cap) { fits = false; break; }
                if (!fits) { excluded = true; continue; }
                for (int e = lo; e < hi; ++e) max_load = std::max(max_load, ++load[e]);
                selection.push_back(&p);
            }
            const bool full_on_an_arc = excluded || max_load == cap;
            if (!full_on_an_arc && !ctl.horizon_passed()) break;

            int v = ctl.next_idle_vehicle();
            if (v < 0) break;
            int t = ctl.launch_loop(v);
            for (const WaitingPassenger* p : selection)
                if (!ctl.try_assign(t, p->ref))
                    throw std::logic_error("SIF_L boarding plan rejected");
        }
    }

private:
    // Edge indices [lo, hi) covered on the cut-open path.
    static std::pair<int, int> edge_span(const WaitingPassenger& p, const Topology& topo) {
        int lo = p.origin;
        int hi = p.destination == topo.origin() ? topo.edge_count() : p.destination;
        if (hi < lo)
            throw std::invalid_argument("tram request crosses the circuit origin");
        return {lo, hi};
    }
};

}  // namespace

std::unique_ptr<sim::Policy> make_sir() { return std::make_unique<SirPolicy>(); }
std::unique_ptr<sim::Policy> make_sif_m() { return std::make_unique<SifMPolicy>(); }
std::unique_ptr<sim::Policy> make_sif_e() { return std::make_unique<SifEPolicy>(); }
std::unique_ptr<sim::Policy> make_sif_l() { return std::make_unique<SifLPolicy>(); }

}  // namespace loopline::tram
