// loopline command line: generate instances and run policy-vs-optimum
// experiments with competitive-bound checks.
//
//   loopline gen --scenario morning --m 5 --n 4 --cap 3 --seed 7 --out inst.json
//   loopline gen --adversary main-general --cap 3 --n 5 --l 2 --out adv.json
//   loopline run --algorithm sir --adversary sir-general --cap 3 --n 3
//   loopline run --algorithm sif-m --scenario morning --m 20 --cap 5 --seed 1 --instances 100
//   loopline run --algorithm main --in inst.json --format json --out report.json
//
// Exit status: 0 when every ratio satisfies its competitive bound, 1 on a
// bound violation, 2 on usage errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "loopline/experiment.hpp"
#include "loopline/instance.hpp"
#include "loopline/instances.hpp"

namespace {

using namespace loopline;

struct CommonArgs {
    std::string algorithm;
    std::string mode;
    std::string scenario;
    std::string adversary;
    int cap = 1;
    int vipas = 1;
    int m = 10;
    int n = 4;
    int ell = 1;
    int z_max = 1;
    long long edge_len = 1;
    std::uint64_t seed = 0;
    int instances = 1;
    std::string in_path;
    std::string out_path;
    std::string format = "csv";
};

gen::ScenarioSpec scenario_spec(const CommonArgs& a, bool tram, std::uint64_t seed) {
    gen::ScenarioSpec spec;
    spec.scenario = gen::scenario_from_name(a.scenario);
    spec.kind = tram ? TopologyKind::Circuit : TopologyKind::Line;
    spec.n = a.n;
    spec.request_count = a.m;
    spec.max_load = a.z_max;
    spec.vehicles = tram ? a.vipas : 1;  // elevator mode runs one vehicle per line
    spec.capacity = a.cap;
    spec.seed = seed;
    int edges = tram ? a.n + 1 : a.n;
    spec.edge_lengths.assign(edges, Rat(a.edge_len));
    return spec;
}

bool infer_tram(const CommonArgs& a, const experiment::Algorithm alg) {
    if (!a.mode.empty()) {
        if (a.mode == "tram") return true;
        if (a.mode == "elevator") return false;
        throw CLI::ValidationError("--mode must be tram or elevator");
    }
    if (alg == experiment::Algorithm::Opt)
        throw CLI::ValidationError("--algorithm opt needs an explicit --mode");
    return experiment::algorithm_is_tram(alg);
}

int cmd_run(const CommonArgs& args) {
    experiment::Algorithm alg = experiment::algorithm_from_name(args.algorithm);
    std::vector<experiment::Job> jobs;

    if (!args.in_path.empty()) {
        Instance inst = load_instance(args.in_path);
        bool tram = inst.topology.is_circuit();
        if (alg != experiment::Algorithm::Opt && experiment::algorithm_is_tram(alg) != tram)
            throw CLI::ValidationError("algorithm '" + args.algorithm +
                                       "' does not run on this instance's topology");
        gen::Scenario sc =
            args.scenario.empty() ? gen::Scenario::General : gen::scenario_from_name(args.scenario);
        jobs.push_back({alg, sc, std::move(inst), args.in_path});
    } else if (!args.adversary.empty()) {
        gen::AdversaryFamily fam = gen::adversary_from_name(args.adversary);
        bool tram = infer_tram(args, alg);
        if (gen::adversary_is_tram(fam) != tram)
            throw CLI::ValidationError("adversary '" + args.adversary +
                                       "' does not match the requested mode");
        gen::AdversaryParams p{fam, args.cap, args.n, args.ell};
        jobs.push_back({alg, gen::adversary_scenario(fam), gen::gen_adversary(p), args.adversary});
    } else if (!args.scenario.empty()) {
        bool tram = infer_tram(args, alg);
        for (int i = 0; i < args.instances; ++i) {
            std::uint64_t seed = args.seed + (std::uint64_t)i;
            gen::ScenarioSpec spec = scenario_spec(args, tram, seed);
            char id[64];
            std::snprintf(id, sizeof id, "%s-s%llu-%04d", args.scenario.c_str(),
                          (unsigned long long)seed, i);
            jobs.push_back({alg, spec.scenario, gen::gen_scenario(spec), id});
        }
    } else {
        throw CLI::ValidationError("run needs one of --in, --adversary or --scenario");
    }

    experiment::Report report = experiment::run_jobs(std::move(jobs));
    std::string rendered =
        args.format == "json" ? experiment::to_json(report) : experiment::to_csv(report);
    if (args.out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + args.out_path);
        out << rendered;
    }
    return report.all_bounds_satisfied() ? 0 : 1;
}

int cmd_gen(const CommonArgs& args) {
    auto make = [&]() -> Instance {
        if (!args.adversary.empty()) {
            gen::AdversaryFamily fam = gen::adversary_from_name(args.adversary);
            return gen::gen_adversary({fam, args.cap, args.n, args.ell});
        }
        if (!args.scenario.empty()) {
            bool tram = args.mode.empty() ? true : args.mode == "tram";
            return gen::gen_scenario(scenario_spec(args, tram, args.seed));
        }
        throw CLI::ValidationError("gen needs --scenario or --adversary");
    };
    Instance inst = make();
    if (args.out_path.empty()) {
        std::cout << to_json_text(inst);
    } else {
        save_instance(inst, args.out_path);
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--mode", args.mode, "tram|elevator");
    cmd->add_option("--scenario", args.scenario, "morning|evening|lunch|general");
    cmd->add_option("--adversary", args.adversary,
                    "sir-general|sir-lunch|sir-morning|sir-evening|main-general|main-lunch|"
                    "main-morning|main-evening");
    cmd->add_option("--cap", args.cap, "vehicle capacity");
    cmd->add_option("--vipas", args.vipas, "fleet size");
    cmd->add_option("--m", args.m, "number of requests");
    cmd->add_option("--n", args.n, "nodes are v_0..v_n");
    cmd->add_option("--l", args.ell, "oscillation blocks (main-general)");
    cmd->add_option("--z-max", args.z_max, "maximum request load");
    cmd->add_option("--edge-len", args.edge_len, "uniform edge length");
    cmd->add_option("--seed", args.seed, "rng seed");
    cmd->add_option("--out", args.out_path, "output file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online pickup-and-delivery on circuits and lines"};
    app.require_subcommand(1);

    CommonArgs run_args, gen_args;
    CLI::App* run = app.add_subcommand("run", "run a policy against the offline optimum");
    add_common(run, run_args);
    run->add_option("--algorithm", run_args.algorithm, "sir|sif-m|sif-e|sif-l|main|opt")
        ->required();
    run->add_option("--instances", run_args.instances, "instances per scenario sweep");
    run->add_option("--in", run_args.in_path, "instance file to load");
    run->add_option("--format", run_args.format, "csv|json");

    CLI::App* genc = app.add_subcommand("gen", "write an instance file");
    add_common(genc, gen_args);

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_args);
        return cmd_gen(gen_args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
