#pragma once

#include <string>

#include "hmhd/experiments.hpp"

namespace hmhd {

/// Parsed flat key-value configuration (one `key = value` per line, `#`
/// comments, lists comma separated). `scenario` selects one of the six
/// scenario kinds or one of the probe kinds (inequality_probe,
/// lemma_ode_check). Unknown keys and unknown scenario names are rejected
/// with the offending key in the message.
struct RunConfig {
    std::string scenario;
    ScenarioConfig sc;      // populated for scenario kinds
    ProbeConfig probe;      // populated for inequality_probe
    LemmaCase lemma;        // explicit case for lemma_ode_check ...
    int lemma_cases = 0;    // ... or a seeded battery of this size
    std::uint64_t lemma_seed = 1;
    std::string out_dir;
    int checkpoint_every = 0;

    bool is_probe() const {
        return scenario == "inequality_probe" || scenario == "lemma_ode_check";
    }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace hmhd
