#include "hmhd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hmhd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config: key '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(v, &pos);
    } catch (...) {
        bad(key, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) bad(key, "expected a number, got '" + v + "'");
    return x;
}

long long parse_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &pos);
    } catch (...) {
        bad(key, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) bad(key, "expected an integer, got '" + v + "'");
    return x;
}

std::vector<std::string> split(const std::string& v, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ScenarioKind kind_from_name(const std::string& name) {
    if (name == "local_existence") return ScenarioKind::local_existence;
    if (name == "small_data_global") return ScenarioKind::small_data_global;
    if (name == "mollifier_convergence") return ScenarioKind::mollifier_convergence;
    if (name == "blowup_monitor") return ScenarioKind::blowup_monitor;
    if (name == "generalized_hall_sweep") return ScenarioKind::generalized_hall_sweep;
    if (name == "liouville_decay") return ScenarioKind::liouville_decay;
    throw std::invalid_argument("config: key 'scenario': unknown scenario name '" +
                                name + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        if (kv.count(key)) bad(key, "duplicate key");
        kv[key] = value;
    }

    if (!kv.count("scenario"))
        throw std::invalid_argument("config: missing required key 'scenario'");

    RunConfig rc;
    rc.scenario = kv["scenario"];
    kv.erase("scenario");
    const bool probe_kind = rc.is_probe();
    if (!probe_kind) rc.sc.kind = kind_from_name(rc.scenario);

    auto take = [&](const char* key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) return {};
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("n"); !v.empty()) rc.sc.n = rc.probe.n = int(parse_int("n", v));
    if (auto v = take("m"); !v.empty()) rc.sc.m = rc.probe.m = int(parse_int("m", v));
    if (auto v = take("nu"); !v.empty()) rc.sc.phys.nu = parse_double("nu", v);
    if (auto v = take("eta"); !v.empty()) rc.sc.phys.eta = parse_double("eta", v);
    if (auto v = take("hall"); !v.empty()) rc.sc.phys.hall = parse_double("hall", v);
    if (auto v = take("eps"); !v.empty()) rc.sc.phys.eps = parse_double("eps", v);
    if (auto v = take("alpha"); !v.empty()) rc.sc.phys.alpha = parse_double("alpha", v);
    if (auto v = take("beta"); !v.empty()) rc.sc.phys.beta = parse_double("beta", v);

    if (auto v = take("family"); !v.empty()) rc.sc.ic.family = v;
    if (auto v = take("amplitude"); !v.empty())
        rc.sc.ic.amplitude = parse_double("amplitude", v);
    if (auto v = take("seed"); !v.empty()) {
        const long long s = parse_int("seed", v);
        if (s < 0) bad("seed", "must be >= 0");
        rc.sc.ic.seed = rc.probe.seed = rc.lemma_seed = std::uint64_t(s);
    }

    if (auto v = take("t_end"); !v.empty())
        rc.sc.control.t_end = rc.lemma.t_end = parse_double("t_end", v);
    if (auto v = take("dt_max"); !v.empty()) rc.sc.control.dt_max = parse_double("dt_max", v);
    if (auto v = take("cfl_advective"); !v.empty())
        rc.sc.control.cfl_advective = parse_double("cfl_advective", v);
    if (auto v = take("cfl_hall"); !v.empty())
        rc.sc.control.cfl_hall = parse_double("cfl_hall", v);
    if (auto v = take("record_every"); !v.empty())
        rc.sc.control.record_every = int(parse_int("record_every", v));

    if (auto v = take("outdir"); !v.empty()) rc.out_dir = v;
    if (auto v = take("checkpoint_every"); !v.empty())
        rc.checkpoint_every = int(parse_int("checkpoint_every", v));

    if (auto v = take("eps_list"); !v.empty())
        for (const auto& s : split(v, ','))
            rc.sc.eps_list.push_back(parse_double("eps_list", s));
    if (auto v = take("amplitude_list"); !v.empty())
        for (const auto& s : split(v, ','))
            rc.sc.amplitude_list.push_back(parse_double("amplitude_list", s));
    if (auto v = take("seed_list"); !v.empty())
        for (const auto& s : split(v, ','))
            rc.sc.seed_list.push_back(std::uint64_t(parse_int("seed_list", s)));
    if (auto v = take("alpha_beta_list"); !v.empty()) {
        for (const auto& pair : split(v, ',')) {
            const auto parts = split(pair, ':');
            if (parts.size() != 2)
                bad("alpha_beta_list", "expected 'alpha:beta' pairs, got '" + pair + "'");
            rc.sc.alpha_beta_list.emplace_back(parse_double("alpha_beta_list", parts[0]),
                                               parse_double("alpha_beta_list", parts[1]));
        }
    }

    if (auto v = take("fields"); !v.empty()) rc.probe.fields = int(parse_int("fields", v));
    if (auto v = take("amp_min"); !v.empty()) rc.probe.amp_min = parse_double("amp_min", v);
    if (auto v = take("amp_max"); !v.empty()) rc.probe.amp_max = parse_double("amp_max", v);
    if (auto v = take("max_bandwidth"); !v.empty())
        rc.probe.max_bandwidth = int(parse_int("max_bandwidth", v));

    if (auto v = take("cases"); !v.empty()) rc.lemma_cases = int(parse_int("cases", v));
    if (auto v = take("a"); !v.empty()) rc.lemma.a = parse_double("a", v);
    if (auto v = take("x0"); !v.empty()) rc.lemma.x0 = parse_double("x0", v);
    if (auto v = take("y0"); !v.empty()) rc.lemma.y0 = parse_double("y0", v);
    if (auto v = take("d_values"); !v.empty()) {
        rc.lemma.d_values.clear();
        for (const auto& s : split(v, ','))
            rc.lemma.d_values.push_back(parse_double("d_values", s));
    }

    if (!kv.empty()) bad(kv.begin()->first, "unknown key");

    if (rc.checkpoint_every < 0) bad("checkpoint_every", "must be >= 0");
    if (rc.checkpoint_every > 0 &&
        rc.checkpoint_every % rc.sc.control.record_every != 0)
        bad("checkpoint_every", "must be a multiple of record_every");

    if (!probe_kind) rc.sc.validate();
    return rc;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace hmhd
