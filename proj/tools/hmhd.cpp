// Command-line surface: run / check / probe / resume.
// Exit codes: 0 all-pass, 1 verdict failure, 2 usage or config error.
// Thread count is controlled by OMP_NUM_THREADS only.

#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "hmhd/config.hpp"

namespace {

using namespace hmhd;

// One lock file per output directory so concurrent runs cannot interleave.
class DirLock {
  public:
    explicit DirLock(const std::string& dir) {
        if (dir.empty()) return;
        std::filesystem::create_directories(dir);
        path_ = dir + "/.hmhd_lock";
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            throw std::runtime_error("output directory is locked by another run: " + dir);
    }
    ~DirLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

  private:
    std::string path_;
    int fd_ = -1;
};

void print_criteria(const std::vector<CriterionResult>& criteria) {
    for (const auto& c : criteria) {
        std::printf("  [%s] %-40s value=%.6g%s%s\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.value, c.detail.empty() ? "" : "  ",
                    c.detail.c_str());
    }
}

void write_verdict_json(const Verdict& v, const std::string& out_dir) {
    if (out_dir.empty()) return;
    nlohmann::json j;
    j["scenario"] = to_string(v.kind);
    j["pass"] = v.pass();
    for (const auto& c : v.criteria)
        j["criteria"].push_back({{"name", c.name},
                                 {"pass", c.pass},
                                 {"value", c.value},
                                 {"detail", c.detail}});
    j["measured"] = v.measured;
    j["series"] = v.series_paths;
    std::ofstream f(out_dir + "/verdict.json");
    f << j.dump(2) << "\n";
}

int cmd_run(const std::string& config_path) {
    RunConfig rc = load_config_file(config_path);
    if (rc.is_probe()) {
        std::fprintf(stderr, "error: '%s' is a probe scenario; use `hmhd probe`\n",
                     rc.scenario.c_str());
        return 2;
    }
    DirLock lock(rc.out_dir);
    RunIo io{rc.out_dir, rc.checkpoint_every};
    Verdict v = run_scenario(rc.sc, io);
    std::printf("scenario %s\n", to_string(v.kind));
    print_criteria(v.criteria);
    for (const auto& [k, val] : v.measured) std::printf("  measured %-38s %.12g\n", k.c_str(), val);
    write_verdict_json(v, rc.out_dir);
    return v.pass() ? 0 : 1;
}

int cmd_resume(const std::string& ckpt_path, const std::string& config_path) {
    RunConfig rc = load_config_file(config_path);
    if (rc.is_probe()) {
        std::fprintf(stderr, "error: cannot resume a probe scenario\n");
        return 2;
    }
    DirLock lock(rc.out_dir);
    RunIo io{rc.out_dir, rc.checkpoint_every};
    Verdict v = resume_scenario(rc.sc, io, ckpt_path);
    std::printf("resumed scenario %s from %s\n", to_string(v.kind), ckpt_path.c_str());
    print_criteria(v.criteria);
    write_verdict_json(v, rc.out_dir);
    return v.pass() ? 0 : 1;
}

int cmd_check() {
    auto results = builtin_checks();
    std::printf("built-in invariant suite\n");
    print_criteria(results);
    for (const auto& c : results)
        if (!c.pass) return 1;
    return 0;
}

int cmd_probe(const std::string& config_path) {
    RunConfig rc = load_config_file(config_path);
    if (!rc.is_probe()) {
        std::fprintf(stderr, "error: scenario '%s' is not a probe; use `hmhd run`\n",
                     rc.scenario.c_str());
        return 2;
    }
    DirLock lock(rc.out_dir);
    if (rc.scenario == "inequality_probe") {
        ProbeReport rep = inequality_probe(rc.probe);
        std::printf("inequality_probe: %zu fields (%d excluded)\n", rep.samples.size(),
                    rep.excluded);
        std::printf("  max r = %.6g, mean r = %.6g\n", rep.max_r, rep.mean_r);
        std::printf("  slope of log r vs log amplitude (top decade) = %.4f\n",
                    rep.slope_large_amp);
        std::printf("  [%s] ratio bounded, no growth trend\n", rep.pass ? "PASS" : "FAIL");
        if (!rc.out_dir.empty()) {
            std::ofstream f(rc.out_dir + "/probe_samples.csv");
            f << "amplitude,bandwidth,r\n";
            for (const auto& s : rep.samples)
                f << s.amplitude << "," << s.bandwidth << "," << s.r << "\n";
        }
        return rep.pass ? 0 : 1;
    }
    // lemma_ode_check
    std::vector<LemmaOutcome> outcomes;
    if (rc.lemma_cases > 0) {
        outcomes = lemma_battery(rc.lemma_cases, rc.lemma_seed);
    } else {
        outcomes.push_back(lemma_ode_check(rc.lemma));
    }
    int fails = 0, na = 0;
    for (const auto& o : outcomes) {
        if (o.status == LemmaStatus::fail) ++fails;
        if (o.status == LemmaStatus::not_applicable) ++na;
    }
    std::printf("lemma_ode_check: %zu cases, %d not applicable, %d bound violations\n",
                outcomes.size(), na, fails);
    if (outcomes.size() == 1) {
        const auto& o = outcomes.front();
        std::printf("  gate value %.6g, worst value %.6g at t=%.4g\n", o.gate_value,
                    o.worst_value, o.t_worst);
        if (o.status == LemmaStatus::not_applicable)
            std::printf("  initial condition violates the gate; check not applicable\n");
    }
    std::printf("  [%s] lemma bound on every admissible trajectory\n",
                fails == 0 ? "PASS" : "FAIL");
    return fails == 0 ? 0 : 1;
}

int usage() {
    std::fprintf(stderr,
                 "usage:\n"
                 "  hmhd run <config>               execute a scenario\n"
                 "  hmhd check                      run the built-in invariant suite\n"
                 "  hmhd probe <config>             inequality_probe / lemma_ode_check\n"
                 "  hmhd resume <checkpoint> <config>  continue a run\n");
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) return usage();
    const std::string cmd = argv[1];
    try {
        if (cmd == "run" && argc == 3) return cmd_run(argv[2]);
        if (cmd == "check" && argc == 2) return cmd_check();
        if (cmd == "probe" && argc == 3) return cmd_probe(argv[2]);
        if (cmd == "resume" && argc == 4) return cmd_resume(argv[2], argv[3]);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return usage();
}
