#include "loopline/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "loopline/elevator_offline.hpp"
#include "loopline/elevator_online.hpp"
#include "loopline/schedule.hpp"
#include "loopline/sim.hpp"
#include "loopline/tram_offline.hpp"
#include "loopline/tram_online.hpp"

namespace loopline::experiment {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Sir: return "sir";
        case Algorithm::SifM: return "sif-m";
        case Algorithm::SifE: return "sif-e";
        case Algorithm::SifL: return "sif-l";
        case Algorithm::Main: return "main";
        case Algorithm::Opt: return "opt";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    for (Algorithm a : {Algorithm::Sir, Algorithm::SifM, Algorithm::SifE, Algorithm::SifL,
                        Algorithm::Main, Algorithm::Opt})
        if (name == algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

bool algorithm_is_tram(Algorithm a) {
    return a == Algorithm::Sir || a == Algorithm::SifM || a == Algorithm::SifE ||
           a == Algorithm::SifL;
}

Rat competitive_bound(Algorithm a, gen::Scenario scenario, const Topology& topo,
                      const FleetConfig& fleet) {
    const Rat cap{fleet.capacity};
    switch (a) {
        case Algorithm::Sir:
            switch (scenario) {
                case gen::Scenario::General: return cap * topo.total_length();
                case gen::Scenario::Lunch: return Rat(2) * cap;
                default: return cap;
            }
        case Algorithm::SifM:
        case Algorithm::SifE:
            return Rat(1);
        case Algorithm::SifL:
            return Rat(2);
        case Algorithm::Main:
            switch (scenario) {
                case gen::Scenario::General: return Rat(2) * cap * topo.total_length();
                case gen::Scenario::Lunch: return Rat(2) * cap;
                default: return cap;
            }
        case Algorithm::Opt:
            return Rat(1);
    }
    throw std::invalid_argument("bad algorithm");
}

namespace {

std::unique_ptr<sim::Policy> make_policy(Algorithm a) {
    switch (a) {
        case Algorithm::Sir: return tram::make_sir();
        case Algorithm::SifM: return tram::make_sif_m();
        case Algorithm::SifE: return tram::make_sif_e();
        case Algorithm::SifL: return tram::make_sif_l();
        case Algorithm::Main: return elevator::make_main();
        case Algorithm::Opt: break;
    }
    throw std::invalid_argument("no online policy for 'opt'");
}

}  // namespace

Row evaluate(Algorithm a, const Instance& inst, gen::Scenario scenario,
             const std::string& instance_id) {
    const bool tram_mode = inst.topology.is_circuit();
    if (a != Algorithm::Opt && algorithm_is_tram(a) != tram_mode)
        throw std::invalid_argument(std::string(algorithm_name(a)) +
                                    " does not match the instance topology");

    Rat opt = tram_mode ? tram::opt_tram_cost(inst.requests, inst.topology, inst.fleet)
                        : elevator::opt_elevator_cost(inst.requests, inst.topology, inst.fleet);

    Rat ttl;
    if (a == Algorithm::Opt) {
        ttl = opt;
    } else {
        auto policy = make_policy(a);
        TransportationSchedule sched =
            sim::run(*policy, inst.topology, inst.requests, inst.fleet);
        ValidationReport vr = validate_schedule(sched, inst.requests, inst.topology, inst.fleet);
        if (!vr.ok())
            throw std::logic_error("policy produced an invalid schedule: " + vr.summary());
        ttl = total_tour_length(sched);
    }

    Row row;
    row.instance_id = instance_id;
    row.algorithm = algorithm_name(a);
    row.scenario = gen::scenario_name(scenario);
    row.requests = inst.requests.count();
    row.capacity = inst.fleet.capacity;
    row.ttl = ttl;
    row.opt = opt;
    row.ratio = opt.is_zero() ? Rat(1) : ttl / opt;  // empty instance serves for free
    row.bound = competitive_bound(a, scenario, inst.topology, inst.fleet);
    row.bound_satisfied = row.ratio <= row.bound;
    return row;
}

Report run_jobs(std::vector<Job> jobs, int threads) {
    if (threads <= 0) {
        threads = (int)std::thread::hardware_concurrency();
        if (threads <= 0) threads = 4;
        threads = std::min(threads, 8);
    }
    threads = std::min<int>(threads, std::max<size_t>(jobs.size(), 1));

    Report report;
    report.rows.resize(jobs.size());
    std::mutex error_mutex;
    std::string first_error;
    std::atomic<size_t> next{0};

    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                report.rows[i] = evaluate(jobs[i].algorithm, jobs[i].instance,
                                          jobs[i].scenario, jobs[i].instance_id);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);

    std::sort(report.rows.begin(), report.rows.end(),
              [](const Row& a, const Row& b) { return a.instance_id < b.instance_id; });
    add_aggregates(report);
    return report;
}

void add_aggregates(Report& report) {
    report.aggregates.clear();
    std::map<std::tuple<std::string, std::string, int, int>, std::pair<int, Rat>> groups;
    for (const Row& r : report.rows) {
        auto& [count, sum] = groups[{r.algorithm, r.scenario, r.requests, r.capacity}];
        ++count;
        sum += r.ratio;
    }
    for (const auto& [key, acc] : groups) {
        Aggregate agg;
        agg.algorithm = std::get<0>(key);
        agg.scenario = std::get<1>(key);
        agg.requests = std::get<2>(key);
        agg.capacity = std::get<3>(key);
        agg.instances = acc.first;
        agg.mean_ratio = acc.second / Rat(acc.first);
        report.aggregates.push_back(std::move(agg));
    }
}

std::string to_csv(const Report& report) {
    std::ostringstream os;
    os << "kind,instance,algorithm,scenario,m,cap,ttl,opt,ratio,ratio_2dp,bound,bound_satisfied,"
          "instances,mean_ratio\n";
    for (const Row& r : report.rows)
        os << "row," << r.instance_id << "," << r.algorithm << "," << r.scenario << ","
           << r.requests << "," << r.capacity << "," << r.ttl.str() << "," << r.opt.str() << ","
           << r.ratio.str() << "," << r.ratio.fixed(2) << "," << r.bound.str() << ","
           << (r.bound_satisfied ? "true" : "false") << ",,\n";
    for (const Aggregate& a : report.aggregates)
        os << "aggregate,," << a.algorithm << "," << a.scenario << "," << a.requests << ","
           << a.capacity << ",,,," << a.mean_ratio.fixed(2) << ",,," << a.instances << ","
           << a.mean_ratio.str() << "\n";
    return os.str();
}

std::string to_json(const Report& report) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const Row& r : report.rows) {
        nlohmann::json jr;
        jr["instance"] = r.instance_id;
        jr["algorithm"] = r.algorithm;
        jr["scenario"] = r.scenario;
        jr["m"] = r.requests;
        jr["cap"] = r.capacity;
        jr["ttl"] = r.ttl.str();
        jr["opt"] = r.opt.str();
        jr["ratio"] = r.ratio.str();
        jr["ratio_2dp"] = r.ratio.fixed(2);
        jr["bound"] = r.bound.str();
        jr["bound_satisfied"] = r.bound_satisfied;
        j["rows"].push_back(std::move(jr));
    }
    j["aggregates"] = nlohmann::json::array();
    for (const Aggregate& a : report.aggregates) {
        nlohmann::json ja;
        ja["algorithm"] = a.algorithm;
        ja["scenario"] = a.scenario;
        ja["m"] = a.requests;
        ja["cap"] = a.capacity;
        ja["instances"] = a.instances;
        ja["mean_ratio"] = a.mean_ratio.str();
        ja["mean_ratio_2dp"] = a.mean_ratio.fixed(2);
        j["aggregates"].push_back(std::move(ja));
    }
    return j.dump(2) + "\n";
}

}  // namespace loopline::experiment
