#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hmhd/diagnostics.hpp"
#include "hmhd/timestepper.hpp"

namespace hmhd {

enum class ScenarioKind {
    local_existence,
    small_data_global,
    mollifier_convergence,
    blowup_monitor,
    generalized_hall_sweep,
    liouville_decay,
};

const char* to_string(ScenarioKind k);

struct InitialCondition {
    std::string family = "random_band_limited";
    double amplitude = 1.0;
    std::uint64_t seed = 1;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::small_data_global;
    int n = 32;
    int m = 3;
    PhysParams phys;
    StepControl control;
    InitialCondition ic;
    std::vector<double> eps_list;                          // mollifier_convergence
    std::vector<std::pair<double, double>> alpha_beta_list;  // generalized_hall_sweep
    std::vector<double> amplitude_list;  // local_existence sweep, small_data bisection
    std::vector<std::uint64_t> seed_list;  // blowup / liouville ensembles

    void validate() const;
};

struct CriterionResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;  // carries the violating sample on failure
};

struct Verdict {
    ScenarioKind kind = ScenarioKind::small_data_global;
    std::vector<CriterionResult> criteria;
    std::map<std::string, double> measured;
    std::vector<std::string> series_paths;

    bool pass() const;
};

/// Optional file emission for a scenario run.
struct RunIo {
    std::string out_dir;       // empty: nothing written
    int checkpoint_every = 0;  // steps; 0: no checkpoints
};

/// Solenoidal initial data scaled to the requested L2 amplitude. Families:
/// beltrami (u = curl eigenfield, B = 0), single_mode_b (u = 0,
/// B ~ (0,0,sin x)), random_band_limited (u, B random, modes |k| <= n/6,
/// seeded), taylor_green (u = TG vortex, B = insulating TG field).
State make_initial(const std::string& family, double amplitude,
                   std::uint64_t seed, GridPtr g);

Verdict run_scenario(const ScenarioConfig& c, const RunIo& io = {});

/// Continue a single-run scenario from a checkpoint.
Verdict resume_scenario(const ScenarioConfig& c, const RunIo& io,
                        const std::string& checkpoint_path);

// ---- Lyapounov-lemma brute force -------------------------------------------

/// One verification case for the comparison lemma behind the small-data
/// argument: integrate the saturated worst case
///   s' = (a (s + sqrt(2 s)) - 1) D(t),   s = x^2 + y^2,  x = y extremal,
/// with fine explicit steps over a piecewise-constant nonnegative D, and
/// test that s + sqrt(2 s) never exceeds its initial value whenever the gate
/// s0 + sqrt(2 s0) < 1/a holds.
struct LemmaCase {
    double a = 1.0;
    double x0 = 0.1;
    double y0 = 0.1;
    std::vector<double> d_values = {1.0};  // equal-length segments over [0, T]
    double t_end = 5.0;
};

enum class LemmaStatus { pass, fail, not_applicable };

struct LemmaOutcome {
    LemmaStatus status = LemmaStatus::pass;
    double gate_value = 0.0;    // s0 + sqrt(2 s0), must be < 1/a to apply
    double worst_value = 0.0;   // max over t of s + sqrt(2 s)
    double t_worst = 0.0;
    std::vector<std::pair<double, double>> trajectory;  // (t, s) samples
};

LemmaOutcome lemma_ode_check(const LemmaCase& c);

/// Seeded battery of admissible cases; returns one result per case.
std::vector<LemmaOutcome> lemma_battery(int cases, std::uint64_t seed);

// ---- logarithmic Sobolev probe ----------------------------------------------

struct ProbeConfig {
    int n = 32;
    int m = 3;
    int fields = 500;
    double amp_min = 1e-2;
    double amp_max = 1e2;
    int max_bandwidth = 10;  // capped at floor(n/3)
    std::uint64_t seed = 1;
};

struct ProbeSample {
    double amplitude = 0.0;
    int bandwidth = 0;
    double r = 0.0;
};

struct ProbeReport {
    std::vector<ProbeSample> samples;
    int excluded = 0;   // degenerate fields skipped, with notice
    double max_r = 0.0;
    double mean_r = 0.0;
    /// OLS slope of log r against log amplitude over the top decade.
    double slope_large_amp = 0.0;
    bool pass = false;  // max_r finite and |slope| <= 0.1
};

/// Ratio statistics for ||f||_inf <= C (1 + ||f||_B0) log(1 + ||f||_{H^{m-1}})
/// over a seeded ensemble of random band-limited scalar fields.
ProbeReport inequality_probe(const ProbeConfig& c);

// ---- built-in invariant battery (the `check` subcommand) ---------------------

std::vector<CriterionResult> builtin_checks(std::uint64_t seed = 1);

}  // namespace hmhd
