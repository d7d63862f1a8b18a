#include <doctest.h>

#include <sstream>

#include "loopline/elevator_online.hpp"
#include "loopline/instances.hpp"
#include "loopline/sim.hpp"
#include "loopline/tram_online.hpp"

using namespace loopline;

TEST_CASE("simulated worst cases reproduce the closed-form totals") {
    SUBCASE("sir") {
        Instance inst = gen::gen_adversary({gen::AdversaryFamily::SirGeneral, 3, 3, 1});
        auto sir = tram::make_sir();
        TransportationSchedule s = sim::run(*sir, inst.topology, inst.requests, inst.fleet);
        CHECK(total_tour_length(s) == Rat(48));
    }
    SUBCASE("main") {
        Instance inst = gen::gen_adversary({gen::AdversaryFamily::MainGeneral, 3, 5, 1});
        auto main_policy = elevator::make_main();
        TransportationSchedule s =
            sim::run(*main_policy, inst.topology, inst.requests, inst.fleet);
        CHECK(total_tour_length(s) == Rat(240));
    }
}

TEST_CASE("an empty request sequence never moves a vehicle") {
    Topology topo = Topology::circuit(std::vector<Rat>(4, Rat(1)));
    RequestSequence seq = checked_sequence({}, Rat(5), topo);
    for (auto make : {tram::make_sir, tram::make_sif_m, tram::make_sif_e, tram::make_sif_l}) {
        auto policy = make();
        TransportationSchedule s = sim::run(*policy, topo, seq, {2, 3, Rat(1)});
        CHECK(total_tour_length(s) == Rat(0));
    }
    Topology line = Topology::line(std::vector<Rat>(4, Rat(1)));
    RequestSequence lseq = checked_sequence({}, Rat(5), line);
    auto main_policy = elevator::make_main();
    CHECK(total_tour_length(sim::run(*main_policy, line, lseq, {1, 3, Rat(1)})) == Rat(0));
}

TEST_CASE("policies only see released requests: permuting the future changes nothing") {
    // run SIR, log decisions, then swap the two last releases and compare
    // the decision prefix before their release time
    Topology topo = Topology::circuit(std::vector<Rat>(5, Rat(1)));
    std::vector<Request> reqs = {
        {Rat(0), 0, 2, 1}, {Rat(3), 1, 3, 1}, {Rat(20), 2, 4, 2}, {Rat(25), 0, 1, 1}};
    RequestSequence seq_a = checked_sequence(reqs, Rat(30), topo);
    std::swap(reqs[2].origin, reqs[3].origin);
    std::swap(reqs[2].destination, reqs[3].destination);
    std::swap(reqs[2].load, reqs[3].load);
    RequestSequence seq_b = checked_sequence(reqs, Rat(30), topo);

    auto run_log = [&](const RequestSequence& seq) {
        std::vector<std::string> log;
        sim::RunOptions opts;
        opts.decision_log = &log;
        auto sir = tram::make_sir();
        sim::run(*sir, topo, seq, {1, 2, Rat(1)}, opts);
        return log;
    };
    auto log_a = run_log(seq_a);
    auto log_b = run_log(seq_b);

    auto prefix = [](const std::vector<std::string>& log) {
        std::vector<std::string> out;
        for (const std::string& line : log) {
            // keep decisions strictly before t=20
            auto t = Rat::parse(line.substr(2, line.find(' ') - 2));
            if (t < Rat(20)) out.push_back(line);
        }
        return out;
    };
    CHECK(prefix(log_a) == prefix(log_b));
    CHECK(log_a != log_b);  // the tails do differ
}

TEST_CASE("main's decisions are also blind to the future") {
    Topology line = Topology::line(std::vector<Rat>(5, Rat(1)));
    std::vector<Request> reqs = {
        {Rat(0), 0, 3, 1}, {Rat(2), 4, 1, 2}, {Rat(30), 2, 5, 1}, {Rat(34), 5, 0, 1}};
    RequestSequence seq_a = checked_sequence(reqs, Rat(40), line);
    std::swap(reqs[2], reqs[3]);
    std::swap(reqs[2].release, reqs[3].release);
    RequestSequence seq_b = checked_sequence(reqs, Rat(40), line);

    auto run_log = [&](const RequestSequence& seq) {
        std::vector<std::string> log;
        sim::RunOptions opts;
        opts.decision_log = &log;
        auto policy = elevator::make_main();
        sim::run(*policy, line, seq, {1, 2, Rat(1)}, opts);
        return log;
    };
    auto prefix = [](const std::vector<std::string>& log) {
        std::vector<std::string> out;
        for (const std::string& line : log)
            if (Rat::parse(line.substr(2, line.find(' ') - 2)) < Rat(30)) out.push_back(line);
        return out;
    };
    CHECK(prefix(run_log(seq_a)) == prefix(run_log(seq_b)));
}

TEST_CASE("simulator time equals the schedule's own accounting") {
    Instance inst = gen::gen_adversary({gen::AdversaryFamily::SirLunch, 2, 3, 1});
    auto sir = tram::make_sir();
    TransportationSchedule s = sim::run(*sir, inst.topology, inst.requests, inst.fleet);
    Rat sum(0);
    for (const auto& tour : s.tours)
        for (const Move& mv : tour) sum += mv.length;
    CHECK(sum == total_tour_length(s));
}

TEST_CASE("trace output is one json line per event") {
    Topology topo = Topology::circuit(std::vector<Rat>(3, Rat(1)));
    RequestSequence seq = checked_sequence({{Rat(0), 0, 1, 1}}, Rat(2), topo);
    std::ostringstream trace;
    sim::RunOptions opts;
    opts.trace = &trace;
    auto sir = tram::make_sir();
    sim::run(*sir, topo, seq, {1, 1, Rat(1)}, opts);
    std::string text = trace.str();
    CHECK(text.find("\"kind\":\"release\"") != std::string::npos);
    CHECK(text.find("\"kind\":\"arrival\"") != std::string::npos);
    CHECK(text.find("\"kind\":\"horizon_end\"") != std::string::npos);
    // every line parses as a json object boundary
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
    }
}

TEST_CASE("a policy on the wrong topology kind is rejected") {
    Topology line = Topology::line(std::vector<Rat>(3, Rat(1)));
    RequestSequence seq = checked_sequence({}, Rat(1), line);
    auto sir = tram::make_sir();
    CHECK_THROWS_AS(sim::run(*sir, line, seq, {1, 1, Rat(1)}), std::invalid_argument);
}

namespace {

// deliberately dispatches the same vehicle while it is still out
struct DoubleLaunchPolicy : sim::Policy {
    const char* name() const override { return "double-launch"; }
    TopologyKind topology_kind() const override { return TopologyKind::Circuit; }
    void on_event(sim::Control& ctl, const sim::Event&) override {
        if (!ctl.pending().empty()) {
            ctl.launch_loop(0);
            ctl.launch_loop(0);
        }
    }
};

}  // namespace

TEST_CASE("illegal policy commands abort the run with a diagnostic") {
    Topology topo = Topology::circuit(std::vector<Rat>(3, Rat(1)));
    RequestSequence seq = checked_sequence({{Rat(0), 0, 1, 1}}, Rat(1), topo);
    DoubleLaunchPolicy bad;
    CHECK_THROWS_AS(sim::run(bad, topo, seq, {1, 1, Rat(1)}), std::logic_error);
}

TEST_CASE("ties are processed release first, then arrivals by vehicle") {
    // a release at the exact moment a loop ends must be visible to the
    // policy before the vehicle goes idle, so SIR launches at that instant
    Topology topo = Topology::circuit(std::vector<Rat>(3, Rat(1)));
    RequestSequence seq =
        checked_sequence({{Rat(0), 0, 1, 1}, {Rat(3), 0, 1, 1}}, Rat(3), topo);
    auto sir = tram::make_sir();
    TransportationSchedule s = sim::run(*sir, topo, seq, {1, 1, Rat(1)});
    REQUIRE(s.tours[0].size() == 6);
    CHECK(s.tours[0][3].depart == Rat(3));  // second loop starts immediately
    CHECK(total_tour_length(s) == Rat(6));
}
