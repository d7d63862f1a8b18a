#include <doctest.h>

#include "fixtures.hpp"
#include "loopline/elevator_offline.hpp"
#include "loopline/elevator_online.hpp"
#include "loopline/instances.hpp"
#include "loopline/sim.hpp"

using namespace loopline;

namespace {

Rat run_checked(const Instance& inst) {
    auto policy = elevator::make_main();
    TransportationSchedule s = sim::run(*policy, inst.topology, inst.requests, inst.fleet);
    ValidationReport r = validate_schedule(s, inst.requests, inst.topology, inst.fleet);
    REQUIRE_MESSAGE(r.ok(), r.summary());
    return total_tour_length(s);
}

}  // namespace

TEST_CASE("main on its worst-case sequence pays every subtour") {
    Instance inst = gen::gen_adversary({gen::AdversaryFamily::MainGeneral, 3, 5, 1});
    CHECK(run_checked(inst) == Rat(240));  // (|L| + 1 + 2) * 2|L| * Cap
    CHECK(elevator::opt_elevator_cost(inst.requests, inst.topology, inst.fleet) == Rat(12));
}

TEST_CASE("main with a single request drives out and back") {
    Topology line = Topology::line(std::vector<Rat>(5, Rat(1)));
    RequestSequence seq = checked_sequence({{Rat(0), 0, 3, 1}}, Rat(1), line);
    Instance inst{line, {1, 2, Rat(1)}, seq};
    CHECK(run_checked(inst) == Rat(6));
}

TEST_CASE("main serves a lone down request by riding up empty first") {
    Topology line = Topology::line(std::vector<Rat>(5, Rat(1)));
    RequestSequence seq = checked_sequence({{Rat(0), 4, 1, 1}}, Rat(1), line);
    Instance inst{line, {1, 2, Rat(1)}, seq};
    CHECK(run_checked(inst) == Rat(8));  // up to v4, serve down to v1, home
}

TEST_CASE("main on the morning worst case pays a round trip per passenger") {
    Instance inst = gen::gen_adversary({gen::AdversaryFamily::MainMorning, 3, 5, 1});
    CHECK(run_checked(inst) == Rat(6));  // Cap * 2 d(v0, v1)
    CHECK(elevator::opt_elevator_cost(inst.requests, inst.topology, inst.fleet) == Rat(2));
}

TEST_CASE("main batches simultaneous up requests up to capacity") {
    Topology line = Topology::line(std::vector<Rat>(4, Rat(1)));
    std::vector<Request> reqs;
    for (int i = 0; i < 3; ++i) reqs.push_back({Rat(0), 0, 2 + i % 2, 1});
    RequestSequence seq = checked_sequence(std::move(reqs), Rat(1), line);
    Instance inst{line, {1, 3, Rat(1)}, seq};
    CHECK(run_checked(inst) == Rat(6));  // one subtour to v3 and back
}

TEST_CASE("main boards newly released up requests mid-ascent, extending the apex") {
    Topology line = Topology::line(std::vector<Rat>(6, Rat(1)));
    // second request appears when the vehicle is between v1 and v2 and
    // wants to go beyond the current apex v3
    RequestSequence seq =
        checked_sequence({{Rat(0), 0, 3, 1}, {Rat(1), 2, 5, 1}}, Rat(2), line);
    Instance inst{line, {1, 2, Rat(1)}, seq};
    CHECK(run_checked(inst) == Rat(10));  // one extended subtour v0..v5..v0
}

TEST_CASE("main picks up down requests on the way home") {
    Topology line = Topology::line(std::vector<Rat>(6, Rat(1)));
    // down request released once the vehicle has turned around at v5
    RequestSequence seq =
        checked_sequence({{Rat(0), 0, 5, 1}, {Rat(6), 4, 1, 1}}, Rat(6), line);
    Instance inst{line, {1, 2, Rat(1)}, seq};
    CHECK(run_checked(inst) == Rat(10));  // the descent serves both
}

TEST_CASE("main requires a single vehicle") {
    Topology line = Topology::line(std::vector<Rat>(3, Rat(1)));
    RequestSequence seq = checked_sequence({{Rat(0), 0, 1, 1}}, Rat(1), line);
    Instance inst{line, {2, 2, Rat(1)}, seq};
    auto policy = elevator::make_main();
    CHECK_THROWS_AS(sim::run(*policy, inst.topology, inst.requests, inst.fleet),
                    std::invalid_argument);
}

TEST_CASE("main never beats the flow optimum and respects its bounds") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        gen::ScenarioSpec spec;
        spec.scenario = gen::Scenario::General;
        spec.kind = TopologyKind::Line;
        spec.n = 4;
        spec.request_count = 5;
        spec.max_load = 2;
        spec.capacity = 2;
        spec.seed = seed;
        Instance inst = gen::gen_scenario(spec);
        Rat opt = elevator::opt_elevator_cost(inst.requests, inst.topology, inst.fleet);
        Rat ttl = run_checked(inst);
        CHECK(opt <= ttl);
        CHECK(ttl <= Rat(2 * 2) * inst.topology.total_length() * opt);
    }
}
