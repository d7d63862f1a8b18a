#include "loopline/instance.hpp"

#include <fstream>
#include <json.hpp>

namespace loopline {

namespace {

using nlohmann::json;

json rat_to_json(const Rat& r) {
    if (r.is_integer()) return json(r.num());
    return json(r.str());
}

Rat rat_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_float()) return Rat::from_double_exact(j.get<double>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw std::invalid_argument(std::string("instance: bad rational for ") + what);
}

}  // namespace

std::string to_json_text(const Instance& inst) {
    json j;
    j["topology"]["kind"] = inst.topology.is_circuit() ? "circuit" : "line";
    json lens = json::array();
    for (const Rat& l : inst.topology.edge_lengths()) lens.push_back(rat_to_json(l));
    j["topology"]["edge_lengths"] = std::move(lens);
    j["fleet"]["k"] = inst.fleet.vehicles;
    j["fleet"]["cap"] = inst.fleet.capacity;
    j["fleet"]["speed"] = rat_to_json(inst.fleet.speed);
    j["horizon"] = rat_to_json(inst.requests.horizon);
    json reqs = json::array();
    for (const Request& r : inst.requests.requests) {
        json jr;
        jr["t"] = rat_to_json(r.release);
        jr["x"] = r.origin;
        jr["y"] = r.destination;
        jr["z"] = r.load;
        reqs.push_back(std::move(jr));
    }
    j["requests"] = std::move(reqs);
    return j.dump(2) + "\n";
}

Instance instance_from_json_text(const std::string& text) {
    json j = json::parse(text);
    const json& jt = j.at("topology");
    std::vector<Rat> lens;
    for (const json& l : jt.at("edge_lengths")) lens.push_back(rat_from_json(l, "edge length"));
    std::string kind = jt.at("kind").get<std::string>();
    Topology topo = kind == "circuit" ? Topology::circuit(std::move(lens))
                  : kind == "line"    ? Topology::line(std::move(lens))
                                      : throw std::invalid_argument("instance: kind must be circuit or line");

    FleetConfig fleet;
    fleet.vehicles = j.at("fleet").at("k").get<int>();
    fleet.capacity = j.at("fleet").at("cap").get<int>();
    fleet.speed = rat_from_json(j.at("fleet").at("speed"), "speed");
    check_fleet(fleet);

    Rat horizon = rat_from_json(j.at("horizon"), "horizon");
    std::vector<Request> reqs;
    for (const json& jr : j.at("requests")) {
        Request r;
        r.release = rat_from_json(jr.at("t"), "release");
        r.origin = jr.at("x").get<int>();
        r.destination = jr.at("y").get<int>();
        r.load = jr.at("z").get<int>();
        reqs.push_back(r);
    }
    RequestSequence seq = checked_sequence(std::move(reqs), horizon, topo);
    return Instance{std::move(topo), fleet, std::move(seq)};
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json_text(inst);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return instance_from_json_text(text);
}

}  // namespace loopline
