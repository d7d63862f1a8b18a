#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopline/instance.hpp"

namespace loopline::gen {

enum class Scenario { Morning, Evening, Lunch, General };

const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

// Seeded random instance resembling one of the daily demand patterns.
// Morning: all origins at v_0; Evening: all destinations at v_0; Lunch:
// every request touches v_0; General: unconstrained (circuit requests
// never wrap the origin). Reproducible: the generator is mt19937_64 with
// rejection sampling for bounded draws, so equal seeds give byte-identical
// instance files on every platform.
struct ScenarioSpec {
    Scenario scenario = Scenario::General;
    TopologyKind kind = TopologyKind::Circuit;
    int n = 4;                      // nodes are v_0..v_n
    std::vector<Rat> edge_lengths;  // empty = unit edges
    int request_count = 10;
    int max_load = 1;
    int vehicles = 1;
    int capacity = 1;
    std::uint64_t seed = 0;
};

Instance gen_scenario(const ScenarioSpec& spec);

// Adversarial request families with exact release spacing; each drives
// its target policy to the competitive bound it is named after.
enum class AdversaryFamily {
    SirGeneral,
    SirLunch,
    SirMorning,
    SirEvening,
    MainGeneral,
    MainLunch,
    MainMorning,
    MainEvening,
};

const char* adversary_name(AdversaryFamily f);
AdversaryFamily adversary_from_name(const std::string& name);
bool adversary_is_tram(AdversaryFamily f);
Scenario adversary_scenario(AdversaryFamily f);

struct AdversaryParams {
    AdversaryFamily family = AdversaryFamily::SirGeneral;
    int capacity = 3;
    int n = 3;    // circuit v_0..v_n (|C| = n+1) or line v_0..v_n (|L| = n), unit edges
    int ell = 1;  // oscillation blocks for MainGeneral
};

Instance gen_adversary(const AdversaryParams& params);

}  // namespace loopline::gen
