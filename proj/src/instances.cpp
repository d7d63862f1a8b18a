#include "loopline/instances.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace loopline::gen {

namespace {

// Unbiased bounded draw on top of the standardized mt19937_64 stream;
// std::uniform_int_distribution is not portable across standard libraries.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("draw_below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do { v = rng(); } while (v >= limit);
    return v % bound;
}

long long draw_in(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + (long long)draw_below(rng, (std::uint64_t)(hi - lo + 1));
}

}  // namespace

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Morning: return "morning";
        case Scenario::Evening: return "evening";
        case Scenario::Lunch: return "lunch";
        case Scenario::General: return "general";
    }
    return "?";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "morning") return Scenario::Morning;
    if (name == "evening") return Scenario::Evening;
    if (name == "lunch") return Scenario::Lunch;
    if (name == "general") return Scenario::General;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

Instance gen_scenario(const ScenarioSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("scenario needs n >= 1");
    if (spec.request_count < 0 || spec.max_load < 1)
        throw std::invalid_argument("bad scenario request parameters");

    std::vector<Rat> lengths = spec.edge_lengths;
    const int edges = spec.kind == TopologyKind::Circuit ? spec.n + 1 : spec.n;
    if (lengths.empty()) lengths.assign(edges, Rat(1));
    if ((int)lengths.size() != edges)
        throw std::invalid_argument("edge_lengths must match the node count");
    Topology topo = spec.kind == TopologyKind::Circuit ? Topology::circuit(lengths)
                                                       : Topology::line(lengths);

    FleetConfig fleet{spec.vehicles, spec.capacity, Rat(1)};
    check_fleet(fleet);

    std::mt19937_64 rng(spec.seed);
    // Spread releases over a window proportional to the workload.
    long long window = 4 * (long long)(spec.request_count + 1);
    Rat total = topo.total_length();
    long long span = total.is_integer() ? total.num() : total.num() / total.den() + 1;
    window *= std::max(1LL, span / std::max(1, spec.n));

    std::vector<Request> requests;
    for (int i = 0; i < spec.request_count; ++i) {
        Request r;
        r.release = Rat(draw_in(rng, 0, window));
        r.load = (int)draw_in(rng, 1, spec.max_load);
        switch (spec.scenario) {
            case Scenario::Morning:
                r.origin = 0;
                r.destination = (NodeId)draw_in(rng, 1, spec.n);
                break;
            case Scenario::Evening:
                r.origin = (NodeId)draw_in(rng, 1, spec.n);
                r.destination = 0;
                break;
            case Scenario::Lunch:
                if (draw_below(rng, 2) == 0) {
                    r.origin = 0;
                    r.destination = (NodeId)draw_in(rng, 1, spec.n);
                } else {
                    r.origin = (NodeId)draw_in(rng, 1, spec.n);
                    r.destination = 0;
                }
                break;
            case Scenario::General:
                if (spec.kind == TopologyKind::Circuit) {
                    // Positions on the cut-open path; the origin never lies
                    // inside the request, so tram solvers accept it.
                    while (true) {
                        long long a = draw_in(rng, 0, spec.n);
                        long long b = draw_in(rng, 1, spec.n + 1);
                        if (a >= b || (a == 0 && b == spec.n + 1)) continue;
                        r.origin = (NodeId)a;
                        r.destination = b == spec.n + 1 ? 0 : (NodeId)b;
                        break;
                    }
                } else {
                    r.origin = (NodeId)draw_in(rng, 0, spec.n);
                    do {
                        r.destination = (NodeId)draw_in(rng, 0, spec.n);
                    } while (r.destination == r.origin);
                }
                break;
        }
        requests.push_back(r);
    }
    RequestSequence seq = checked_sequence(std::move(requests), Rat(window), topo);
    return Instance{std::move(topo), fleet, std::move(seq)};
}

const char* adversary_name(AdversaryFamily f) {
    switch (f) {
        case AdversaryFamily::SirGeneral: return "sir-general";
        case AdversaryFamily::SirLunch: return "sir-lunch";
        case AdversaryFamily::SirMorning: return "sir-morning";
        case AdversaryFamily::SirEvening: return "sir-evening";
        case AdversaryFamily::MainGeneral: return "main-general";
        case AdversaryFamily::MainLunch: return "main-lunch";
        case AdversaryFamily::MainMorning: return "main-morning";
        case AdversaryFamily::MainEvening: return "main-evening";
    }
    return "?";
}

AdversaryFamily adversary_from_name(const std::string& name) {
    for (AdversaryFamily f :
         {AdversaryFamily::SirGeneral, AdversaryFamily::SirLunch, AdversaryFamily::SirMorning,
          AdversaryFamily::SirEvening, AdversaryFamily::MainGeneral, AdversaryFamily::MainLunch,
          AdversaryFamily::MainMorning, AdversaryFamily::MainEvening})
        if (name == adversary_name(f)) return f;
    throw std::invalid_argument("unknown adversary family '" + name + "'");
}

bool adversary_is_tram(AdversaryFamily f) {
    switch (f) {
        case AdversaryFamily::SirGeneral:
        case AdversaryFamily::SirLunch:
        case AdversaryFamily::SirMorning:
        case AdversaryFamily::SirEvening:
            return true;
        default:
            return false;
    }
}

Scenario adversary_scenario(AdversaryFamily f) {
    switch (f) {
        case AdversaryFamily::SirGeneral:
        case AdversaryFamily::MainGeneral: return Scenario::General;
        case AdversaryFamily::SirLunch:
        case AdversaryFamily::MainLunch: return Scenario::Lunch;
        case AdversaryFamily::SirMorning:
        case AdversaryFamily::MainMorning: return Scenario::Morning;
        case AdversaryFamily::SirEvening:
        case AdversaryFamily::MainEvening: return Scenario::Evening;
    }
    throw std::invalid_argument("bad adversary family");
}

namespace {

// SIR worst case on a unit circuit: Cap uniform requests per arc, each
// released one full loop after the previous one, so every request costs a
// separate loop while one loop would serve an entire arc's batch.
std::vector<Request> sir_sequence(int cap, int n) {
    std::vector<Request> all;
    const long long circle = n + 1;
    long long j = 0;
    for (NodeId v = 0; v <= n; ++v)
        for (int c = 0; c < cap; ++c) {
            Request r;
            r.release = Rat(j * circle);
            r.origin = v;
            r.destination = v == n ? 0 : v + 1;
            r.load = 1;
            all.push_back(r);
            ++j;
        }
    return all;
}

// MAIN worst case on a unit line: an ascending block, 2*ell oscillation
// blocks at the far end, then a descending block; each release waits out
// the round trip MAIN needs for the previous request.
std::vector<Request> main_sequence(int cap, int n, int ell) {
    std::vector<Request> all;
    auto emit = [&](NodeId x, NodeId y, int count) {
        for (int c = 0; c < count; ++c) {
            Request r;
            if (all.empty()) {
                r.release = Rat(0);
            } else {
                const Request& prev = all.back();
                NodeId far = std::max(prev.origin, prev.destination);
                r.release = prev.release + Rat(2 * far);
            }
            r.origin = x;
            r.destination = y;
            r.load = 1;
            all.push_back(r);
        }
    };
    for (NodeId v = 0; v < n; ++v) emit(v, v + 1, cap);          // sigma_1
    for (int b = 0; b < ell; ++b) {                              // sigma_2
        emit(n, n - 1, cap);
        emit(n - 1, n, cap);
    }
    for (NodeId v = n; v >= 1; --v) emit(v, v - 1, cap);         // sigma_3
    return all;
}

}  // namespace

Instance gen_adversary(const AdversaryParams& p) {
    if (p.capacity < 1 || p.n < 1) throw std::invalid_argument("bad adversary parameters");
    if (p.family == AdversaryFamily::MainGeneral && p.ell < 1)
        throw std::invalid_argument("main-general needs ell >= 1");

    std::vector<Request> requests;
    Topology topo = adversary_is_tram(p.family)
                        ? Topology::circuit(std::vector<Rat>(p.n + 1, Rat(1)))
                        : Topology::line(std::vector<Rat>(p.n, Rat(1)));

    switch (p.family) {
        case AdversaryFamily::SirGeneral:
            requests = sir_sequence(p.capacity, p.n);
            break;
        case AdversaryFamily::SirLunch: {
            auto all = sir_sequence(p.capacity, p.n);
            requests.assign(all.begin(), all.begin() + p.capacity);
            requests.insert(requests.end(), all.end() - p.capacity, all.end());
            break;
        }
        case AdversaryFamily::SirMorning: {
            auto all = sir_sequence(p.capacity, p.n);
            requests.assign(all.begin(), all.begin() + p.capacity);
            break;
        }
        case AdversaryFamily::SirEvening: {
            auto all = sir_sequence(p.capacity, p.n);
            requests.assign(all.end() - p.capacity, all.end());
            break;
        }
        case AdversaryFamily::MainGeneral:
            requests = main_sequence(p.capacity, p.n, p.ell);
            break;
        case AdversaryFamily::MainLunch: {
            auto all = main_sequence(p.capacity, p.n, 1);
            requests.assign(all.begin(), all.begin() + p.capacity);
            requests.insert(requests.end(), all.end() - p.capacity, all.end());
            break;
        }
        case AdversaryFamily::MainMorning: {
            auto all = main_sequence(p.capacity, p.n, 1);
            requests.assign(all.begin(), all.begin() + p.capacity);
            break;
        }
        case AdversaryFamily::MainEvening: {
            auto all = main_sequence(p.capacity, p.n, 1);
            requests.assign(all.end() - p.capacity, all.end());
            break;
        }
    }

    Rat horizon(0);
    for (const Request& r : requests) horizon = std::max(horizon, r.release);
    FleetConfig fleet{1, p.capacity, Rat(1)};
    RequestSequence seq = checked_sequence(std::move(requests), horizon, topo);
    return Instance{std::move(topo), fleet, std::move(seq)};
}

}  // namespace loopline::gen
