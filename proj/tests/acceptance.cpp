// Acceptance suite: one line per criterion, exit 0 only if every criterion
// passes. Criteria may be selected by number on the command line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "hmhd/experiments.hpp"
#include "hmhd/kernels.hpp"
#include "hmhd/records_io.hpp"

using namespace hmhd;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

VectorField random_solenoidal_b(const GridPtr& g, std::uint64_t seed, double amp) {
    return make_initial("random_band_limited", amp, seed, g).b;
}

// Criteria 1 and 2 share one run: random band-limited data, n = 32, m = 3,
// nu = eta = 1, T = 1, records every step.
struct EnergyRunResult {
    Outcome energy, divergence;
    double runtime = 0.0;
};

EnergyRunResult energy_and_divergence_run() {
    const auto t0 = std::chrono::steady_clock::now();
    EnergyRunResult res;

    GridPtr g = Grid::make(32);
    State s = make_initial("random_band_limited", 1.0, 1, g);
    PhysParams p;  // nu = eta = hall = 1
    StepControl c;
    c.t_end = 1.0;
    c.dt_max = 2e-4;  // keeps the trapezoidal budget error inside the 1e-6 slack
    c.record_every = 1;

    Stepper st(g, p);
    Recorder rec(g, 3, p);
    rec.sample(s);
    const int kcut = g->dealias_cutoff();
    while (s.t < c.t_end - 1e-12) {
        const double dt =
            std::min(stable_dt(rec.last_linf_u(), rec.last_linf_b(), kcut, p, c),
                     c.t_end - s.t);
        s = st.step(s, dt);
        rec.sample(s);
    }
    res.runtime = seconds_since(t0);

    BudgetReport rep = energy_budget(rec.records());
    const bool time_ok = res.runtime < 60.0;
    res.energy.pass = !rep.violation && time_ok;
    res.energy.detail = "min deficit " + fmt(rep.min_deficit) + " (tol " +
                        fmt(-BudgetReport::tol_rel * rep.initial_energy) + ") at t=" +
                        fmt(rep.t_min) + ", runtime " + fmt(res.runtime) + "s";

    double worst_rel = 0.0;
    double t_worst = 0.0;
    for (const auto& r : rec.records()) {
        const double scale_u = std::max(kcut * r.linf_u, 1e-30);
        const double scale_b = std::max(kcut * r.linf_b, 1e-30);
        const double rel = std::max(r.div_u_max / scale_u, r.div_b_max / scale_b);
        if (rel > worst_rel) {
            worst_rel = rel;
            t_worst = r.t;
        }
    }
    res.divergence.pass = worst_rel <= 1e-12;
    res.divergence.detail =
        "max relative divergence " + fmt(worst_rel) + " at t=" + fmt(t_worst);
    return res;
}

Outcome hall_antisymmetry() {
    const auto t0 = std::chrono::steady_clock::now();
    GridPtr g = Grid::make(32);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        VectorField b = random_solenoidal_b(g, seed, 0.5 + 0.01 * double(seed));
        VectorField h = hall_term(b);
        double ip = 0.0;
        for (int c = 0; c < 3; ++c)
            ip += kernels::dot_real(h.comp(c).coeffs(), b.comp(c).coeffs());
        ip *= 8.0 * std::pow(std::numbers::pi, 3);
        const double h1 = sobolev_norm(b, 1);
        worst = std::max(worst, std::abs(ip) / (h1 * h1));
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = worst <= 1e-12 && dt < 30.0;
    o.detail = "max |<hall(B),B>| / ||B||_H1^2 = " + fmt(worst) + " over 100 fields, " +
               fmt(dt) + "s";
    return o;
}

Outcome exact_linear_decay() {
    GridPtr g = Grid::make(32);
    PhysParams p;
    const double dt = 0.01;
    const int steps = 100;

    // B = A (0,0,sin x), u = 0: pure resistive decay
    State sb(g);
    sb.b.z.at(1, 0, 0) = cplx(0.0, -0.5 * 1.7);
    sb.b.z.at(-1, 0, 0) = cplx(0.0, 0.5 * 1.7);
    Stepper st(g, p);
    State endb = sb;
    for (int i = 0; i < steps; ++i) endb = st.step(endb, dt);
    VectorField expected = sb.b;
    expected *= std::exp(-1.0);
    VectorField diff = endb.b;
    diff -= expected;
    const double err_b = l2_norm(diff) / l2_norm(sb.b);

    // Beltrami u, B = 0: exact Navier-Stokes decay
    State su(g);
    su.u.y.at(1, 0, 0) = cplx(0.0, -0.5);
    su.u.y.at(-1, 0, 0) = cplx(0.0, 0.5);
    su.u.z.at(1, 0, 0) = 0.5;
    su.u.z.at(-1, 0, 0) = 0.5;
    State endu = su;
    for (int i = 0; i < steps; ++i) endu = st.step(endu, dt);
    VectorField expu = su.u;
    expu *= std::exp(-1.0);
    VectorField diffu = endu.u;
    diffu -= expu;
    const double err_u = l2_norm(diffu) / l2_norm(su.u);

    Outcome o;
    o.pass = err_b <= 1e-12 && err_u <= 1e-12;
    o.detail = "relative error: resistive " + fmt(err_b) + ", Beltrami " + fmt(err_u);
    return o;
}

Outcome temporal_order() {
    GridPtr g = Grid::make(32);
    State s0 = make_initial("taylor_green", 1.0, 1, g);
    PhysParams p;
    p.nu = 0.05;
    p.eta = 0.05;
    Stepper st(g, p);

    const double T = 0.08, h = 0.01;
    auto run = [&](double dt) {
        State s = s0;
        const int steps = int(std::round(T / dt));
        for (int i = 0; i < steps; ++i) s = st.step(s, dt);
        return s;
    };
    const State ref = run(h / 8.0);
    auto err = [&](const State& s) {
        VectorField du = s.u, db = s.b;
        du -= ref.u;
        db -= ref.b;
        const double eu = l2_norm(du), eb = l2_norm(db);
        return std::sqrt(eu * eu + eb * eb);
    };
    const double e4 = err(run(4 * h)), e2 = err(run(2 * h)), e1 = err(run(h));
    const double p1 = std::log2(e4 / e2), p2 = std::log2(e2 / e1);
    Outcome o;
    o.pass = p1 >= 3.5 && p2 >= 3.5;
    o.detail = "observed orders " + fmt(p1) + ", " + fmt(p2) + " (errors " + fmt(e4) +
               " / " + fmt(e2) + " / " + fmt(e1) + ")";
    return o;
}

Outcome small_data_monotone() {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig c;
    c.kind = ScenarioKind::small_data_global;
    c.n = 32;
    c.m = 3;
    c.ic = {"random_band_limited", 1e-3, 1};
    c.phys = PhysParams{};  // nu = 1
    c.control.t_end = 5.0;
    c.control.dt_max = 0.02;
    c.control.record_every = 1;
    Verdict v = run_scenario(c);
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = v.pass() && dt < 120.0;
    o.detail = (v.pass() ? "H^m energy non-increasing over T=5"
                         : v.criteria.front().detail) +
               ", " + fmt(dt) + "s";
    return o;
}

Outcome mollifier_consistency() {
    ScenarioConfig c;
    c.kind = ScenarioKind::mollifier_convergence;
    c.n = 32;
    c.m = 3;
    c.ic = {"taylor_green", 0.5, 1};
    c.control.t_end = 0.5;
    c.control.dt_max = 2e-3;
    c.control.record_every = 25;
    c.eps_list = {0.2, 0.1, 0.05};
    Verdict v = run_scenario(c);
    Outcome o;
    o.pass = v.pass();
    o.detail = "deviations " + fmt(v.measured.at("deviation_eps_0.2")) + " > " +
               fmt(v.measured.at("deviation_eps_0.1")) + " > " +
               fmt(v.measured.at("deviation_eps_0.05"));
    if (!v.pass()) o.detail += " — " + v.criteria.back().detail;
    return o;
}

Outcome blowup_functionals_cross_grid() {
    auto chat_at = [&](int n) {
        ScenarioConfig c;
        c.kind = ScenarioKind::blowup_monitor;
        c.n = n;
        c.m = 3;
        c.ic = {"random_band_limited", 0.8, 1};
        c.seed_list = {1, 2};
        c.control.t_end = 0.25;
        c.control.dt_max = 2e-3;
        c.control.record_every = 2;
        Verdict v = run_scenario(c);
        return std::tuple{v.measured.at("c_hat"), v.measured.at("samples"), v.pass()};
    };
    auto [c16, n16, ok16] = chat_at(16);
    auto [c32, n32, ok32] = chat_at(32);
    const double ratio = std::max(c16, c32) / std::max(std::min(c16, c32), 1e-300);
    Outcome o;
    o.pass = ok16 && ok32 && std::isfinite(c16) && std::isfinite(c32) && ratio <= 4.0 &&
             n16 + n32 >= 200;
    o.detail = "max A/X: n=16 " + fmt(c16) + ", n=32 " + fmt(c32) + ", ratio " +
               fmt(ratio) + " over " + fmt(n16 + n32) + " samples";
    return o;
}

Outcome lemma_brute_force() {
    const auto t0 = std::chrono::steady_clock::now();
    auto outcomes = lemma_battery(100, 2024);
    int fails = 0, applicable = 0;
    for (const auto& oc : outcomes) {
        if (oc.status == LemmaStatus::fail) ++fails;
        if (oc.status != LemmaStatus::not_applicable) ++applicable;
    }
    const double dt = seconds_since(t0);
    Outcome o;
    o.pass = fails == 0 && applicable == 100 && dt < 10.0;
    o.detail = fmt(double(applicable)) + " admissible tuples, " + fmt(double(fails)) +
               " bound violations, " + fmt(dt) + "s";
    return o;
}

Outcome generalized_hall_regression() {
    GridPtr g = Grid::make(32);
    State s(g);
    s.b = random_solenoidal_b(g, 5, 0.8);
    PhysParams p;  // eta = 1, hall = 1
    p.alpha = 0.0;
    p.beta = 2.0;

    Stepper standard(g, p, EvolveMode::hall_only);
    Stepper generalized(g, p, EvolveMode::generalized_hall);
    State a = s, b = s;
    double worst = 0.0;
    const double dt = 1e-3;
    for (int i = 0; i < 300; ++i) {
        a = standard.step(a, dt);
        b = generalized.step(b, dt);
        if (i % 10 == 9) {
            VectorField d = a.b;
            d -= b.b;
            worst = std::max(worst, l2_norm(d) / std::max(l2_norm(a.b), 1e-300));
        }
    }
    Outcome o;
    o.pass = worst <= 1e-12;
    o.detail = "max relative deviation over samples: " + fmt(worst);
    return o;
}

Outcome liouville_consistency() {
    ScenarioConfig c;
    c.kind = ScenarioKind::liouville_decay;
    c.n = 32;
    c.m = 3;
    c.ic = {"random_band_limited", 0.5, 1};
    c.seed_list = {1, 2, 3};
    c.control.t_end = 20.0;
    c.control.dt_max = 0.02;
    c.control.record_every = 10;
    Verdict v = run_scenario(c);
    Outcome o;
    o.pass = v.pass();
    o.detail = "energy ratios";
    for (std::uint64_t seed : {1, 2, 3})
        o.detail += " " + fmt(v.measured.at("energy_ratio_s" + std::to_string(seed)));
    if (!v.pass())
        for (const auto& cr : v.criteria)
            if (!cr.pass) o.detail += " — FAILED " + cr.name + ": " + cr.detail;
    return o;
}

Outcome log_sobolev_probe() {
    ProbeConfig pc;
    pc.n = 32;
    pc.m = 3;
    pc.fields = 500;
    pc.amp_min = 1e-2;
    pc.amp_max = 1e2;
    pc.max_bandwidth = 10;
    pc.seed = 7;
    ProbeReport rep = inequality_probe(pc);
    Outcome o;
    o.pass = rep.pass;
    o.detail = "max r " + fmt(rep.max_r) + ", mean r " + fmt(rep.mean_r) +
               ", large-amplitude slope " + fmt(rep.slope_large_amp) + " (tol 0.1) over " +
               fmt(double(rep.samples.size())) + " fields";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto selected = [&](int i) { return wanted.empty() || wanted.count(i); };

    std::vector<std::pair<std::string, Outcome>> results;
    auto report = [&](int idx, const std::string& name, const Outcome& o) {
        results.emplace_back(name, o);
        std::printf("[%s] %2d. %-28s %s\n", o.pass ? "PASS" : "FAIL", idx, name.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    };

    if (selected(1) || selected(2)) {
        EnergyRunResult er = energy_and_divergence_run();
        if (selected(1)) report(1, "energy_inequality", er.energy);
        if (selected(2)) report(2, "divergence_propagation", er.divergence);
    }
    if (selected(3)) report(3, "hall_antisymmetry", hall_antisymmetry());
    if (selected(4)) report(4, "exact_linear_decay", exact_linear_decay());
    if (selected(5)) report(5, "temporal_order", temporal_order());
    if (selected(6)) report(6, "small_data_monotone_decay", small_data_monotone());
    if (selected(7)) report(7, "mollifier_consistency", mollifier_consistency());
    if (selected(8)) report(8, "blowup_functional_consistency", blowup_functionals_cross_grid());
    if (selected(9)) report(9, "lemma_ode_brute_force", lemma_brute_force());
    if (selected(10)) report(10, "generalized_hall_regression", generalized_hall_regression());
    if (selected(11)) report(11, "liouville_consistency", liouville_consistency());
    if (selected(12)) report(12, "log_sobolev_probe", log_sobolev_probe());

    int failures = 0;
    for (const auto& [name, o] : results)
        if (!o.pass) ++failures;
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", results.size());
    return failures == 0 ? 0 : 1;
}
