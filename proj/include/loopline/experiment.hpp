#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopline/instance.hpp"
#include "loopline/instances.hpp"

namespace loopline::experiment {

enum class Algorithm { Sir, SifM, SifE, SifL, Main, Opt };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);
bool algorithm_is_tram(Algorithm a);

// Worst-case competitive factor c for (algorithm, scenario) on the given
// instance geometry; ratios are compared against it exactly.
Rat competitive_bound(Algorithm a, gen::Scenario scenario, const Topology& topo,
                      const FleetConfig& fleet);

struct Row {
    std::string instance_id;
    std::string algorithm;
    std::string scenario;
    int requests = 0;
    int capacity = 0;
    Rat ttl;
    Rat opt;
    Rat ratio;
    Rat bound;
    bool bound_satisfied = true;
};

struct Aggregate {
    std::string algorithm;
    std::string scenario;
    int requests = 0;
    int capacity = 0;
    int instances = 0;
    Rat mean_ratio;
};

struct Report {
    std::vector<Row> rows;
    std::vector<Aggregate> aggregates;  // grouped by (algorithm, scenario, m, Cap)
    bool all_bounds_satisfied() const {
        for (const Row& r : rows)
            if (!r.bound_satisfied) return false;
        return true;
    }
};

// Runs one policy (or the offline optimum itself) against one instance and
// scores it against the offline optimum.
Row evaluate(Algorithm a, const Instance& inst, gen::Scenario scenario,
             const std::string& instance_id);

struct Job {
    Algorithm algorithm;
    gen::Scenario scenario;
    Instance instance;
    std::string instance_id;
};

// Evaluates jobs on a worker pool; rows come back sorted by instance id.
Report run_jobs(std::vector<Job> jobs, int threads = 0);

void add_aggregates(Report& report);

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

}  // namespace loopline::experiment
