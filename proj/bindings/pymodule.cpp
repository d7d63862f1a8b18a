// Python bindings for the main operations: instance I/O, generators,
// offline optima, online policy simulation and experiment evaluation.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loopline/elevator_offline.hpp"
#include "loopline/elevator_online.hpp"
#include "loopline/experiment.hpp"
#include "loopline/instance.hpp"
#include "loopline/instances.hpp"
#include "loopline/schedule.hpp"
#include "loopline/sim.hpp"
#include "loopline/tram_offline.hpp"
#include "loopline/tram_online.hpp"

namespace py = pybind11;
using namespace loopline;

namespace {

gen::ScenarioSpec spec_from_kwargs(const std::string& scenario, const std::string& kind,
                                   int n, int m, int z_max, int vipas, int cap,
                                   std::uint64_t seed) {
    gen::ScenarioSpec spec;
    spec.scenario = gen::scenario_from_name(scenario);
    spec.kind = kind == "circuit" ? TopologyKind::Circuit
              : kind == "line"    ? TopologyKind::Line
                                  : throw std::invalid_argument("kind must be circuit or line");
    spec.n = n;
    spec.request_count = m;
    spec.max_load = z_max;
    spec.vehicles = vipas;
    spec.capacity = cap;
    spec.seed = seed;
    return spec;
}

std::unique_ptr<sim::Policy> policy_by_name(const std::string& name) {
    experiment::Algorithm a = experiment::algorithm_from_name(name);
    switch (a) {
        case experiment::Algorithm::Sir: return tram::make_sir();
        case experiment::Algorithm::SifM: return tram::make_sif_m();
        case experiment::Algorithm::SifE: return tram::make_sif_e();
        case experiment::Algorithm::SifL: return tram::make_sif_l();
        case experiment::Algorithm::Main: return elevator::make_main();
        default: throw std::invalid_argument("'" + name + "' is not an online policy");
    }
}

py::dict row_to_dict(const experiment::Row& r) {
    py::dict d;
    d["instance"] = r.instance_id;
    d["algorithm"] = r.algorithm;
    d["scenario"] = r.scenario;
    d["m"] = r.requests;
    d["cap"] = r.capacity;
    d["ttl"] = r.ttl.str();
    d["opt"] = r.opt.str();
    d["ratio"] = r.ratio.str();
    d["ratio_float"] = r.ratio.to_double();
    d["bound"] = r.bound.str();
    d["bound_satisfied"] = r.bound_satisfied;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, module) {
    module.doc() = "online pickup-and-delivery on circuits and lines";

    py::class_<Instance>(module, "Instance")
        .def_static("from_json", &instance_from_json_text, py::arg("text"))
        .def_static("load", &load_instance, py::arg("path"))
        .def("to_json", &to_json_text)
        .def("save", &save_instance, py::arg("path"))
        .def_property_readonly("request_count",
                               [](const Instance& i) { return i.requests.count(); })
        .def_property_readonly("capacity", [](const Instance& i) { return i.fleet.capacity; })
        .def_property_readonly("kind", [](const Instance& i) {
            return i.topology.is_circuit() ? "circuit" : "line";
        })
        .def_property_readonly("total_length",
                               [](const Instance& i) { return i.topology.total_length().str(); })
        .def("requests", [](const Instance& i) {
            py::list out;
            for (const Request& r : i.requests.requests) {
                py::dict d;
                d["t"] = r.release.str();
                d["x"] = r.origin;
                d["y"] = r.destination;
                d["z"] = r.load;
                out.append(d);
            }
            return out;
        });

    module.def(
        "gen_scenario",
        [](const std::string& scenario, const std::string& kind, int n, int m, int z_max,
           int vipas, int cap, std::uint64_t seed) {
            return gen::gen_scenario(
                spec_from_kwargs(scenario, kind, n, m, z_max, vipas, cap, seed));
        },
        py::arg("scenario"), py::arg("kind") = "circuit", py::arg("n") = 4, py::arg("m") = 10,
        py::arg("z_max") = 1, py::arg("vipas") = 1, py::arg("cap") = 1, py::arg("seed") = 0);

    module.def(
        "gen_adversary",
        [](const std::string& family, int cap, int n, int ell) {
            return gen::gen_adversary({gen::adversary_from_name(family), cap, n, ell});
        },
        py::arg("family"), py::arg("cap") = 3, py::arg("n") = 3, py::arg("ell") = 1);

    module.def(
        "run_policy",
        [](const std::string& algorithm, const Instance& inst) {
            auto policy = policy_by_name(algorithm);
            TransportationSchedule sched =
                sim::run(*policy, inst.topology, inst.requests, inst.fleet);
            ValidationReport vr =
                validate_schedule(sched, inst.requests, inst.topology, inst.fleet);
            py::dict out;
            out["ttl"] = total_tour_length(sched).str();
            out["ttl_float"] = total_tour_length(sched).to_double();
            out["valid"] = vr.ok();
            int moves = 0;
            for (const auto& t : sched.tours) moves += (int)t.size();
            out["moves"] = moves;
            return out;
        },
        py::arg("algorithm"), py::arg("instance"));

    module.def(
        "opt_cost",
        [](const Instance& inst) {
            Rat c = inst.topology.is_circuit()
                        ? tram::opt_tram_cost(inst.requests, inst.topology, inst.fleet)
                        : elevator::opt_elevator_cost(inst.requests, inst.topology, inst.fleet);
            return c.str();
        },
        py::arg("instance"));

    module.def(
        "arc_loads",
        [](const Instance& inst) {
            auto loads = elevator::compute_arc_loads(inst.requests, inst.topology, inst.fleet);
            py::dict d;
            d["up_load"] = loads.up_load;
            d["down_load"] = loads.down_load;
            d["up_mult"] = loads.up_mult;
            d["down_mult"] = loads.down_mult;
            return d;
        },
        py::arg("instance"));

    module.def(
        "evaluate",
        [](const std::string& algorithm, const Instance& inst, const std::string& scenario,
           const std::string& instance_id) {
            experiment::Row row =
                experiment::evaluate(experiment::algorithm_from_name(algorithm), inst,
                                     gen::scenario_from_name(scenario), instance_id);
            return row_to_dict(row);
        },
        py::arg("algorithm"), py::arg("instance"), py::arg("scenario") = "general",
        py::arg("instance_id") = "instance");
}
