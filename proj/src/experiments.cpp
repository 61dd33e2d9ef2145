#include "hmhd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hmhd/checkpoint.hpp"
#include "hmhd/kernels.hpp"
#include "hmhd/records_io.hpp"

namespace hmhd {

const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::local_existence: return "local_existence";
        case ScenarioKind::small_data_global: return "small_data_global";
        case ScenarioKind::mollifier_convergence: return "mollifier_convergence";
        case ScenarioKind::blowup_monitor: return "blowup_monitor";
        case ScenarioKind::generalized_hall_sweep: return "generalized_hall_sweep";
        case ScenarioKind::liouville_decay: return "liouville_decay";
    }
    return "?";
}

bool Verdict::pass() const {
    for (const auto& c : criteria)
        if (!c.pass) return false;
    return true;
}

void ScenarioConfig::validate() const {
    phys.validate();
    control.validate();
    if (!(ic.amplitude > 0.0))
        throw std::invalid_argument("ScenarioConfig: amplitude must be > 0");
    if (kind == ScenarioKind::mollifier_convergence && eps_list.empty())
        throw std::invalid_argument("ScenarioConfig: mollifier_convergence needs eps_list");
    if (kind == ScenarioKind::generalized_hall_sweep && alpha_beta_list.empty())
        throw std::invalid_argument(
            "ScenarioConfig: generalized_hall_sweep needs alpha_beta_list");
    if (m <= 2) throw std::invalid_argument("ScenarioConfig: m must be >= 3");
}

// ---------------------------------------------------------------------------
// Initial conditions
// ---------------------------------------------------------------------------

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void scale_to_l2(VectorField& v, double amplitude) {
    const double norm = l2_norm(v);
    v *= norm > 0.0 ? amplitude / norm : 0.0;
}

bool canonical_mode(int kx, int ky, int kz) {
    if (kx != 0) return kx > 0;
    if (ky != 0) return ky > 0;
    return kz > 0;
}

// Mean-free random scalar with Gaussian coefficients on |k| <= bandwidth and
// spectral envelope exp(-|k|^2 / (2 k0^2)); k0 <= 0 gives a flat envelope.
SpectralField random_scalar(const GridPtr& g, int bandwidth, double k0,
                            std::mt19937_64& rng) {
    SpectralField f(g);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = g->n();
    const double bw2 = double(bandwidth) * bandwidth;
    for (int ix = 0; ix < n; ++ix) {
        const int kx = g->wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            const int ky = g->wavenumber(iy);
            for (int iz = 0; iz < n; ++iz) {
                const int kz = g->wavenumber(iz);
                const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                if (k2 == 0.0 || k2 > bw2) continue;
                if (!canonical_mode(kx, ky, kz)) continue;
                const double env = k0 > 0.0 ? std::exp(-k2 / (2.0 * k0 * k0)) : 1.0;
                const cplx c(env * normal(rng), env * normal(rng));
                f.at(kx, ky, kz) = c;
                f.at(-kx, -ky, -kz) = std::conj(c);
            }
        }
    }
    return f;
}

void fill_trig(VectorField& v,
               double (*fx)(double, double, double),
               double (*fy)(double, double, double),
               double (*fz)(double, double, double)) {
    const GridPtr& g = v.grid_ptr();
    const int n = g->n();
    aligned_vector<double> px(g->size()), py(g->size()), pz(g->size());
    std::size_t i = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++i) {
                const double x = two_pi * ix / n, y = two_pi * iy / n, z = two_pi * iz / n;
                px[i] = fx(x, y, z);
                py[i] = fy(x, y, z);
                pz[i] = fz(x, y, z);
            }
    v = from_physical3(g, px, py, pz);
}

}  // namespace

State make_initial(const std::string& family, double amplitude,
                   std::uint64_t seed, GridPtr g) {
    State s(g);
    if (family == "beltrami") {
        // u = (0, sin x, cos x): curl u = u
        s.u.y.at(1, 0, 0) = cplx(0.0, -0.5);
        s.u.y.at(-1, 0, 0) = cplx(0.0, 0.5);
        s.u.z.at(1, 0, 0) = 0.5;
        s.u.z.at(-1, 0, 0) = 0.5;
        scale_to_l2(s.u, amplitude);
    } else if (family == "single_mode_b") {
        s.b.z.at(1, 0, 0) = cplx(0.0, -0.5);
        s.b.z.at(-1, 0, 0) = cplx(0.0, 0.5);
        scale_to_l2(s.b, amplitude);
    } else if (family == "random_band_limited") {
        std::mt19937_64 rng(seed);
        const int bw = std::max(1, g->n() / 6);
        const double k0 = 1.5;
        for (int c = 0; c < 3; ++c) s.u.comp(c) = random_scalar(g, bw, k0, rng);
        for (int c = 0; c < 3; ++c) s.b.comp(c) = random_scalar(g, bw, k0, rng);
        leray_project_inplace(s.u);
        leray_project_inplace(s.b);
        dealias_inplace(s.u);
        dealias_inplace(s.b);
        scale_to_l2(s.u, amplitude);
        scale_to_l2(s.b, amplitude);
    } else if (family == "taylor_green") {
        fill_trig(
            s.u,
            [](double x, double y, double z) { return std::sin(x) * std::cos(y) * std::cos(z); },
            [](double x, double y, double z) { return -std::cos(x) * std::sin(y) * std::cos(z); },
            [](double, double, double) { return 0.0; });
        fill_trig(
            s.b,
            [](double x, double y, double z) { return std::cos(x) * std::sin(y) * std::sin(z); },
            [](double x, double y, double z) { return std::sin(x) * std::cos(y) * std::sin(z); },
            [](double x, double y, double z) { return -2.0 * std::sin(x) * std::sin(y) * std::cos(z); });
        scale_to_l2(s.u, amplitude);
        scale_to_l2(s.b, amplitude);
    } else {
        throw std::invalid_argument("make_initial: unknown family '" + family + "'");
    }
    return s;
}

// ---------------------------------------------------------------------------
// Shared integration loop
// ---------------------------------------------------------------------------

namespace {

struct RunOutput {
    std::vector<DiagnosticsRecord> records;
    State final_state;
    bool unstable = false;
    double t_unstable = 0.0;
    std::vector<State> snapshots;
};

struct IntegrateOpts {
    bool keep_snapshots = false;
    std::string checkpoint_dir;
    int checkpoint_every = 0;
    double diss_u_offset = 0.0;
    double diss_b_offset = 0.0;
};

RunOutput integrate(State s, const PhysParams& p, const StepControl& c,
                    EvolveMode mode, int m, const IntegrateOpts& opts = {}) {
    c.validate();
    RunOutput out;
    Stepper stepper(s.grid_ptr(), p, mode);
    Recorder rec(s.grid_ptr(), m, p, mode);
    dealias_inplace(s.u);
    dealias_inplace(s.b);

    const int kcut = s.grid().dealias_cutoff();
    rec.sample(s);
    if (opts.keep_snapshots) out.snapshots.push_back(s);
    int step_idx = 0;
    bool fresh_linf = true;
    const double t_eps = 1e-12 * std::max(1.0, c.t_end);

    while (s.t < c.t_end - t_eps) {
        double dt;
        if (fresh_linf) {
            dt = stable_dt(rec.last_linf_u(), rec.last_linf_b(), kcut, p, c);
        } else {
            dt = stable_dt(s, p, c);
        }
        dt = std::min(dt, c.t_end - s.t);
        try {
            s = stepper.step(s, dt);
        } catch (const instability_error& e) {
            out.unstable = true;
            out.t_unstable = e.t;
            break;
        }
        ++step_idx;
        const bool at_end = s.t >= c.t_end - t_eps;
        if (step_idx % c.record_every == 0 || at_end) {
            rec.sample(s);
            if (opts.keep_snapshots) out.snapshots.push_back(s);
            fresh_linf = true;
        } else {
            fresh_linf = false;
        }
        if (opts.checkpoint_every > 0 && !opts.checkpoint_dir.empty() &&
            step_idx % opts.checkpoint_every == 0) {
            save_checkpoint(s, opts.checkpoint_dir + "/ckpt_latest.bin");
        }
    }

    out.records = rec.records();
    if (opts.diss_u_offset != 0.0 || opts.diss_b_offset != 0.0) {
        for (auto& r : out.records) {
            r.diss_u += opts.diss_u_offset;
            r.diss_b += opts.diss_b_offset;
        }
    }
    out.final_state = std::move(s);
    return out;
}

IntegrateOpts ckpt_opts(const RunIo& io) {
    IntegrateOpts opts;
    if (!io.out_dir.empty() && io.checkpoint_every > 0) {
        std::filesystem::create_directories(io.out_dir);
        opts.checkpoint_dir = io.out_dir;
        opts.checkpoint_every = io.checkpoint_every;
    }
    return opts;
}

std::string emit_series(const RunIo& io, const std::string& name,
                        const std::vector<DiagnosticsRecord>& records,
                        Verdict& v) {
    if (io.out_dir.empty() || records.empty()) return {};
    std::filesystem::create_directories(io.out_dir);
    const std::string path = io.out_dir + "/" + name;
    write_records(records, path);
    v.series_paths.push_back(path);
    return path;
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(6);
    ss << x;
    return ss.str();
}

double trapezoid_int_a(const std::vector<DiagnosticsRecord>& rs, std::size_t upto) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= upto && i < rs.size(); ++i)
        acc += 0.5 * (rs[i - 1].a_of_t + rs[i].a_of_t) * (rs[i].t - rs[i - 1].t);
    return acc;
}

// ---------------------------------------------------------------------------
// Scenario implementations
// ---------------------------------------------------------------------------

Verdict scenario_local_existence(const ScenarioConfig& c, const RunIo& io) {
    Verdict v{ScenarioKind::local_existence, {}, {}, {}};
    std::vector<double> amps =
        c.amplitude_list.empty() ? std::vector<double>{c.ic.amplitude} : c.amplitude_list;
    GridPtr g = Grid::make(c.n);
    int idx = 0;
    for (double amp : amps) {
        State s0 = make_initial(c.ic.family, amp, c.ic.seed, g);
        RunOutput out = integrate(s0, c.phys, c.control, EvolveMode::full, c.m,
                                  amps.size() == 1 ? ckpt_opts(io) : IntegrateOpts{});
        const double x0 = out.records.front().x_of_t;
        double t_hat = c.control.t_end;
        bool doubled = false;
        bool finite_before_doubling = true;
        std::string viol;
        for (const auto& r : out.records) {
            if (!std::isfinite(r.x_of_t)) {
                finite_before_doubling = false;
                viol = "nonfinite X at t=" + fmt(r.t);
                break;
            }
            if (r.x_of_t >= 2.0 * x0) {
                t_hat = r.t;
                doubled = true;
                break;
            }
        }
        if (out.unstable && !doubled) {
            finite_before_doubling = false;
            viol = "instability at t=" + fmt(out.t_unstable) + " before X doubled";
        }
        const std::string tag = "_amp" + std::to_string(idx);
        v.criteria.push_back({"bounded_until_doubling" + tag, finite_before_doubling,
                              t_hat,
                              finite_before_doubling
                                  ? (doubled ? "X doubled at t=" + fmt(t_hat)
                                             : "X never doubled on horizon")
                                  : viol});
        v.measured["x0" + tag] = x0;
        v.measured["t_hat" + tag] = t_hat;
        v.measured["t_hat_times_x0" + tag] = t_hat * x0;
        emit_series(io, "series" + tag + ".csv", out.records, v);
        ++idx;
    }
    return v;
}

bool monotone_hm_decay(const std::vector<DiagnosticsRecord>& rs, double slack,
                       std::string& viol) {
    for (std::size_t i = 1; i < rs.size(); ++i) {
        const double q_prev = rs[i - 1].hm_u * rs[i - 1].hm_u + rs[i - 1].hm_b * rs[i - 1].hm_b;
        const double q = rs[i].hm_u * rs[i].hm_u + rs[i].hm_b * rs[i].hm_b;
        if (q > q_prev * (1.0 + slack)) {
            viol = "H^m energy grew at t=" + fmt(rs[i].t) + ": " + fmt(q_prev) +
                   " -> " + fmt(q);
            return false;
        }
    }
    return true;
}

Verdict scenario_small_data(const ScenarioConfig& c, const RunIo& io) {
    Verdict v{ScenarioKind::small_data_global, {}, {}, {}};
    GridPtr g = Grid::make(c.n);
    constexpr double slack = 1e-10;

    auto monotone_at = [&](double amp) {
        State s0 = make_initial(c.ic.family, amp, c.ic.seed, g);
        RunOutput out = integrate(s0, c.phys, c.control, EvolveMode::full, c.m);
        std::string viol;
        return !out.unstable && monotone_hm_decay(out.records, slack, viol);
    };

    std::vector<DiagnosticsRecord> records;
    {
        State s0 = make_initial(c.ic.family, c.ic.amplitude, c.ic.seed, g);
        RunOutput out = integrate(s0, c.phys, c.control, EvolveMode::full, c.m,
                                  ckpt_opts(io));
        records = out.records;
        std::string viol;
        const bool mono =
            !out.unstable && monotone_hm_decay(out.records, slack, viol);
        if (out.unstable) viol = "instability at t=" + fmt(out.t_unstable);
        v.criteria.push_back({"monotone_decay", mono, c.ic.amplitude, viol});
    }
    emit_series(io, "series.csv", records, v);

    if (!c.amplitude_list.empty()) {
        std::vector<double> amps = c.amplitude_list;
        std::sort(amps.begin(), amps.end());
        int lo = 0, hi = static_cast<int>(amps.size()) - 1, best = -1;
        while (lo <= hi) {
            const int mid = (lo + hi) / 2;
            if (monotone_at(amps[mid])) {
                best = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        v.measured["largest_monotone_amplitude"] = best >= 0 ? amps[best] : 0.0;
    }
    return v;
}

Verdict scenario_mollifier(const ScenarioConfig& c, const RunIo& io) {
    Verdict v{ScenarioKind::mollifier_convergence, {}, {}, {}};
    GridPtr g = Grid::make(c.n);
    State s0 = make_initial(c.ic.family, c.ic.amplitude, c.ic.seed, g);

    IntegrateOpts opts;
    opts.keep_snapshots = true;

    PhysParams p_ref = c.phys;
    p_ref.eps = 0.0;
    RunOutput ref = integrate(s0, p_ref, c.control, EvolveMode::full, c.m, opts);
    emit_series(io, "series_eps0.csv", ref.records, v);

    std::vector<double> eps_sorted = c.eps_list;
    std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<>());

    std::vector<double> deviations;
    for (double eps : eps_sorted) {
        PhysParams p_eps = c.phys;
        p_eps.eps = eps;
        State s0e(g);
        s0e.u = mollify(s0.u, eps);  // regularized data J_eps(u0, B0)
        s0e.b = mollify(s0.b, eps);
        RunOutput out = integrate(s0e, p_eps, c.control, EvolveMode::full, c.m, opts);
        const std::size_t nshared = std::min(ref.snapshots.size(), out.snapshots.size());
        double dev = 0.0;
        for (std::size_t i = 0; i < nshared; ++i) {
            const State& a = ref.snapshots[i];
            const State& b = out.snapshots[i];
            if (std::abs(a.t - b.t) > 1e-9 * std::max(1.0, std::abs(a.t)))
                throw std::runtime_error("mollifier_convergence: sample times diverged");
            double d2 = 0.0;
            for (int comp = 0; comp < 3; ++comp) {
                d2 += kernels::abs2_diff_sum(a.u.comp(comp).coeffs(), b.u.comp(comp).coeffs());
                d2 += kernels::abs2_diff_sum(a.b.comp(comp).coeffs(), b.b.comp(comp).coeffs());
            }
            dev = std::max(dev, std::sqrt(d2 * 8.0 * std::numbers::pi * std::numbers::pi *
                                          std::numbers::pi));
        }
        deviations.push_back(dev);
        v.measured["deviation_eps_" + fmt(eps)] = dev;
        emit_series(io, "series_eps" + fmt(eps) + ".csv", out.records, v);
    }

    bool decreasing = true;
    std::string viol;
    for (std::size_t i = 1; i < deviations.size(); ++i) {
        if (!(deviations[i] < deviations[i - 1])) {
            decreasing = false;
            viol = "deviation(eps=" + fmt(eps_sorted[i]) + ") = " + fmt(deviations[i]) +
                   " !< deviation(eps=" + fmt(eps_sorted[i - 1]) + ") = " +
                   fmt(deviations[i - 1]);
            break;
        }
    }
    v.criteria.push_back({"deviations_strictly_decreasing", decreasing,
                          deviations.empty() ? 0.0 : deviations.back(), viol});
    return v;
}

Verdict scenario_blowup(const ScenarioConfig& c, const RunIo& io) {
    Verdict v{ScenarioKind::blowup_monitor, {}, {}, {}};
    GridPtr g = Grid::make(c.n);
    std::vector<std::uint64_t> seeds =
        c.seed_list.empty() ? std::vector<std::uint64_t>{c.ic.seed} : c.seed_list;

    double c_hat = 0.0, x_growth_max = 0.0, int_a_max = 0.0;
    std::size_t total_samples = 0;
    for (std::uint64_t seed : seeds) {
        State s0 = make_initial(c.ic.family, c.ic.amplitude, seed, g);
        RunOutput out = integrate(s0, c.phys, c.control, EvolveMode::full, c.m,
                                  seeds.size() == 1 ? ckpt_opts(io) : IntegrateOpts{});
        const auto& rs = out.records;
        total_samples += rs.size();
        const std::string tag = "_s" + std::to_string(seed);

        bool finite = true;
        std::string viol;
        double run_c_hat = 0.0;
        for (const auto& r : rs) {
            if (!std::isfinite(r.x_of_t) || !std::isfinite(r.a_of_t)) {
                finite = false;
                viol = "nonfinite X or A at t=" + fmt(r.t);
                break;
            }
            run_c_hat = std::max(run_c_hat, r.a_of_t / r.x_of_t);
        }
        v.criteria.push_back({"samples_finite" + tag, finite, double(rs.size()), viol});

        const double x0 = rs.front().x_of_t;
        const double x_growth = rs.back().x_of_t / x0;
        const double int_a = trapezoid_int_a(rs, rs.size() - 1);

        // Equivalence consistency: a blow-up indicated by one functional must
        // be indicated by the other.
        bool consistent = true;
        std::string detail = "no divergence on horizon; X and int A both bounded";
        if (out.unstable) {
            const double int_a_half = trapezoid_int_a(rs, rs.size() / 2);
            consistent = x_growth >= 4.0 && int_a > 2.0 * int_a_half;
            detail = consistent
                         ? "instability at t=" + fmt(out.t_unstable) +
                               " flagged by both X growth and accelerating int A"
                         : "instability at t=" + fmt(out.t_unstable) +
                               " with X growth " + fmt(x_growth) + " and int A " +
                               fmt(int_a) + " (lone divergence)";
        }
        v.criteria.push_back({"divergence_consistency" + tag, consistent, x_growth, detail});

        c_hat = std::max(c_hat, run_c_hat);
        x_growth_max = std::max(x_growth_max, x_growth);
        int_a_max = std::max(int_a_max, int_a);
        v.measured["c_hat" + tag] = run_c_hat;
        emit_series(io, "series" + tag + ".csv", rs, v);
    }
    v.measured["c_hat"] = c_hat;
    v.measured["x_growth_max"] = x_growth_max;
    v.measured["int_a_max"] = int_a_max;
    v.measured["samples"] = double(total_samples);
    v.criteria.push_back({"a_bounded_by_x", std::isfinite(c_hat), c_hat,
                          "run-constant C_hat = max A/X"});
    return v;
}

Verdict scenario_sweep(const ScenarioConfig& c, const RunIo& io) {
    Verdict v{ScenarioKind::generalized_hall_sweep, {}, {}, {}};
    GridPtr g = Grid::make(c.n);
    State base = make_initial(c.ic.family, c.ic.amplitude, c.ic.seed, g);
    base.u = VectorField(g);  // B-only problem

    for (const auto& [alpha, beta] : c.alpha_beta_list) {
        PhysParams p = c.phys;
        p.alpha = alpha;
        p.beta = beta;
        const std::string tag = "_a" + fmt(alpha) + "_b" + fmt(beta);
        RunOutput out = integrate(base, p, c.control, EvolveMode::generalized_hall, c.m);
        double sup_hm = 0.0;
        for (const auto& r : out.records) sup_hm = std::max(sup_hm, r.hm_b);
        const double h0 = out.records.front().hm_b;
        const double sup_ratio = h0 > 0.0 ? sup_hm / h0 : 0.0;
        const double end_ratio =
            h0 > 0.0 ? out.records.back().hm_b / h0 : 0.0;
        v.measured["sup_ratio" + tag] = sup_ratio;
        v.measured["end_ratio" + tag] = end_ratio;
        // Trend report (not asserted): growth flagged when the sup exceeds the
        // initial norm beyond transient tolerance.
        v.measured["grows" + tag] = sup_ratio > 1.1 ? 1.0 : 0.0;
        v.measured["wellposed_regime" + tag] = beta >= alpha + 2.0 ? 1.0 : 0.0;
        v.criteria.push_back(
            {"completed" + tag, !out.unstable, sup_ratio,
             out.unstable ? "instability at t=" + fmt(out.t_unstable)
                          : "sup ||B||_Hm / initial = " + fmt(sup_ratio)});
        emit_series(io, "series" + tag + ".csv", out.records, v);
    }
    return v;
}

Verdict scenario_liouville(const ScenarioConfig& c, const RunIo& io) {
    Verdict v{ScenarioKind::liouville_decay, {}, {}, {}};
    GridPtr g = Grid::make(c.n);
    std::vector<std::uint64_t> seeds =
        c.seed_list.empty() ? std::vector<std::uint64_t>{c.ic.seed} : c.seed_list;
    constexpr double ratio_tol = 1e-6;

    for (std::uint64_t seed : seeds) {
        const std::string tag = "_s" + std::to_string(seed);
        State s0 = make_initial(c.ic.family, c.ic.amplitude, seed, g);
        auto [ru0, rb0] = stationary_residual(s0.u, s0.b, c.phys);
        RunOutput out = integrate(s0, c.phys, c.control, EvolveMode::full, c.m,
                                  seeds.size() == 1 ? ckpt_opts(io) : IntegrateOpts{});
        auto [ruT, rbT] = stationary_residual(out.final_state.u, out.final_state.b, c.phys);
        const auto& first = out.records.front();
        const auto& last = out.records.back();

        auto ratio_ok = [&](double final, double initial) {
            if (initial <= 1e-12) return final <= 1e-12;  // identically-zero channel
            return final <= ratio_tol * initial;
        };
        const bool eu_ok = ratio_ok(last.energy_u, first.energy_u);
        const bool eb_ok = ratio_ok(last.energy_b, first.energy_b);
        const bool ru_ok = ratio_ok(ruT, ru0);
        const bool rb_ok = ratio_ok(rbT, rb0);
        v.criteria.push_back({"energy_decay" + tag, eu_ok && eb_ok,
                              std::max(first.energy_u > 0 ? last.energy_u / first.energy_u : 0.0,
                                       first.energy_b > 0 ? last.energy_b / first.energy_b : 0.0),
                              eu_ok && eb_ok ? "" : "energies did not decay below 1e-6 of initial"});
        v.criteria.push_back({"residual_decay" + tag, ru_ok && rb_ok,
                              ru0 > 0 ? ruT / ru0 : 0.0,
                              ru_ok && rb_ok ? "" : "stationary residual did not vanish"});

        // A numerically stationary end state with surviving energy would be a
        // counterexample to the Liouville property.
        const bool nontrivial_stationary =
            (ruT + rbT <= ratio_tol * std::max(ru0 + rb0, 1e-14)) &&
            (last.energy_u + last.energy_b > ratio_tol * (first.energy_u + first.energy_b));
        v.criteria.push_back({"no_nontrivial_stationary" + tag, !nontrivial_stationary,
                              last.energy_u + last.energy_b,
                              nontrivial_stationary
                                  ? "stationary residual vanished while energy survived"
                                  : ""});
        v.measured["energy_ratio" + tag] =
            (first.energy_u + first.energy_b) > 0
                ? (last.energy_u + last.energy_b) / (first.energy_u + first.energy_b)
                : 0.0;
        v.measured["residual_u_ratio" + tag] = ru0 > 0 ? ruT / ru0 : 0.0;
        v.measured["residual_b_ratio" + tag] = rb0 > 0 ? rbT / rb0 : 0.0;
        emit_series(io, "series" + tag + ".csv", out.records, v);
    }
    return v;
}

}  // namespace

Verdict run_scenario(const ScenarioConfig& c, const RunIo& io) {
    c.validate();
    switch (c.kind) {
        case ScenarioKind::local_existence: return scenario_local_existence(c, io);
        case ScenarioKind::small_data_global: return scenario_small_data(c, io);
        case ScenarioKind::mollifier_convergence: return scenario_mollifier(c, io);
        case ScenarioKind::blowup_monitor: return scenario_blowup(c, io);
        case ScenarioKind::generalized_hall_sweep: return scenario_sweep(c, io);
        case ScenarioKind::liouville_decay: return scenario_liouville(c, io);
    }
    throw std::logic_error("run_scenario: unknown kind");
}

Verdict resume_scenario(const ScenarioConfig& c, const RunIo& io,
                        const std::string& checkpoint_path) {
    c.validate();
    if (c.kind == ScenarioKind::mollifier_convergence ||
        c.kind == ScenarioKind::generalized_hall_sweep)
        throw std::invalid_argument("resume: not supported for multi-run scenarios");

    GridPtr g = Grid::make(c.n);
    State s = load_checkpoint(checkpoint_path, g);

    IntegrateOpts opts;
    // If the original series is present, offset the dissipation integrals so
    // the resumed columns continue the uninterrupted ones.
    if (!io.out_dir.empty()) {
        const std::string orig = io.out_dir + "/series.csv";
        if (std::filesystem::exists(orig)) {
            for (const auto& r : read_records(orig)) {
                if (std::abs(r.t - s.t) <= 1e-9 * std::max(1.0, std::abs(s.t))) {
                    opts.diss_u_offset = r.diss_u;
                    opts.diss_b_offset = r.diss_b;
                    break;
                }
            }
        }
    }
    opts.checkpoint_dir = io.out_dir;
    opts.checkpoint_every = io.checkpoint_every;

    Verdict v{c.kind, {}, {}, {}};
    RunOutput out = integrate(s, c.phys, c.control,
                              c.kind == ScenarioKind::generalized_hall_sweep
                                  ? EvolveMode::generalized_hall
                                  : EvolveMode::full,
                              c.m, opts);
    v.criteria.push_back({"resumed_run_stable", !out.unstable, out.final_state.t,
                          out.unstable ? "instability at t=" + fmt(out.t_unstable) : ""});
    emit_series(io, "series_resumed.csv", out.records, v);
    return v;
}

// ---------------------------------------------------------------------------
// Lemma brute force
// ---------------------------------------------------------------------------

LemmaOutcome lemma_ode_check(const LemmaCase& c) {
    if (!(c.a > 0.0) || c.x0 < 0.0 || c.y0 < 0.0 || !(c.t_end > 0.0))
        throw std::invalid_argument("lemma_ode_check: bad case");
    for (double d : c.d_values)
        if (d < 0.0) throw std::invalid_argument("lemma_ode_check: D must be >= 0");

    LemmaOutcome out;
    const double s0 = c.x0 * c.x0 + c.y0 * c.y0;
    out.gate_value = s0 + std::sqrt(2.0 * s0);
    if (!(out.gate_value < 1.0 / c.a)) {
        out.status = LemmaStatus::not_applicable;
        return out;
    }

    // Saturated worst case: ds/dt = (a (s + sqrt(2 s)) - 1) D.
    auto rhs = [&](double s, double d) {
        return (c.a * (s + std::sqrt(2.0 * std::max(s, 0.0))) - 1.0) * d;
    };

    const double bound = out.gate_value * (1.0 + 1e-12) + 1e-12;
    const std::size_t nseg = c.d_values.size();
    const double seg_len = c.t_end / double(nseg);
    const double h_target = c.t_end / 2e5;

    double s = s0, t = 0.0;
    out.worst_value = out.gate_value;
    out.t_worst = 0.0;
    out.trajectory.emplace_back(0.0, s);
    out.status = LemmaStatus::pass;
    for (std::size_t seg = 0; seg < nseg; ++seg) {
        const double d = c.d_values[seg];
        const int steps = std::max(1, int(std::ceil(seg_len / h_target)));
        const double h = seg_len / steps;
        for (int i = 0; i < steps; ++i) {
            const double k1 = rhs(s, d);
            const double k2 = rhs(s + 0.5 * h * k1, d);
            const double k3 = rhs(s + 0.5 * h * k2, d);
            const double k4 = rhs(s + h * k3, d);
            s = std::max(0.0, s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
            t += h;
            const double value = s + std::sqrt(2.0 * s);
            if (value > out.worst_value) {
                out.worst_value = value;
                out.t_worst = t;
            }
            if (value > bound) out.status = LemmaStatus::fail;
        }
        out.trajectory.emplace_back(t, s);
    }
    return out;
}

std::vector<LemmaOutcome> lemma_battery(int cases, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<LemmaOutcome> out;
    for (int i = 0; i < cases; ++i) {
        LemmaCase c;
        c.a = std::pow(10.0, -1.0 + 2.0 * unif(rng));  // a in [0.1, 10]
        // admissible s0: v0 = s0 + sqrt(2 s0) = frac / a with frac in (0.05, 0.95)
        const double v0 = (0.05 + 0.9 * unif(rng)) / c.a;
        const double w = 0.5 * (-std::sqrt(2.0) + std::sqrt(2.0 + 4.0 * v0));
        const double s0 = w * w;
        const double theta = 0.5 * std::numbers::pi * unif(rng);
        c.x0 = std::sqrt(s0) * std::cos(theta);
        c.y0 = std::sqrt(s0) * std::sin(theta);
        const int nseg = 2 + int(unif(rng) * 6.0);
        c.d_values.clear();
        for (int sgi = 0; sgi < nseg; ++sgi)
            c.d_values.push_back(std::abs(normal(rng)) * 2.0);
        c.t_end = 5.0;
        out.push_back(lemma_ode_check(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Logarithmic Sobolev probe
// ---------------------------------------------------------------------------

ProbeReport inequality_probe(const ProbeConfig& c) {
    if (c.m < 3) throw std::invalid_argument("inequality_probe: m must be >= 3");
    if (c.fields <= 0) throw std::invalid_argument("inequality_probe: empty ensemble");
    GridPtr g = Grid::make(c.n);
    const int max_bw = std::min(c.max_bandwidth, g->dealias_cutoff());

    ProbeReport rep;
    std::mt19937_64 rng(c.seed);

    const std::vector<int> bandwidths = [&] {
        std::vector<int> b;
        for (int bw = 2; bw <= max_bw; bw += 2) b.push_back(bw);
        if (b.empty()) b.push_back(max_bw);
        return b;
    }();
    const int n_amp = std::max(1, c.fields / int(bandwidths.size() * 4));
    const double log_lo = std::log(c.amp_min), log_hi = std::log(c.amp_max);

    double sum_r = 0.0;
    for (int ia = 0; ia < n_amp && int(rep.samples.size()) < c.fields; ++ia) {
        const double amp =
            std::exp(log_lo + (log_hi - log_lo) * (n_amp == 1 ? 0.5 : double(ia) / (n_amp - 1)));
        for (int bw : bandwidths) {
            for (int rep_i = 0; rep_i < 4 && int(rep.samples.size()) < c.fields; ++rep_i) {
                SpectralField f = random_scalar(g, bw, 0.0, rng);
                const double norm = l2_norm(f);
                if (norm == 0.0) {
                    ++rep.excluded;
                    continue;
                }
                f *= amp / norm;
                const double hm1 = sobolev_norm(f, c.m - 1);
                const double logterm = std::log(1.0 + hm1);
                if (logterm == 0.0) {  // constant/degenerate field
                    ++rep.excluded;
                    continue;
                }
                const double r =
                    linf_norm(f) / ((1.0 + besov_norm_b0(f)) * logterm);
                rep.samples.push_back({amp, bw, r});
                sum_r += r;
                rep.max_r = std::max(rep.max_r, r);
            }
        }
    }
    rep.mean_r = rep.samples.empty() ? 0.0 : sum_r / double(rep.samples.size());

    // Trend of log r against log amplitude over the top decade.
    const double amp_cut = c.amp_max / 10.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& s : rep.samples) {
        if (s.amplitude < amp_cut || s.r <= 0.0) continue;
        const double x = std::log(s.amplitude), y = std::log(s.r);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    rep.slope_large_amp =
        cnt > 1 ? (cnt * sxy - sx * sy) / std::max(cnt * sxx - sx * sx, 1e-30) : 0.0;
    rep.pass = std::isfinite(rep.max_r) && std::abs(rep.slope_large_amp) <= 0.1;
    return rep;
}

// ---------------------------------------------------------------------------
// Built-in invariant battery
// ---------------------------------------------------------------------------

namespace {

State random_state(GridPtr g, double amplitude, std::uint64_t seed) {
    return make_initial("random_band_limited", amplitude, seed, std::move(g));
}

double rel(double err, double scale) { return err / std::max(scale, 1e-300); }

}  // namespace

std::vector<CriterionResult> builtin_checks(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    GridPtr g = Grid::make(16);
    State s = random_state(g, 1.0, seed);
    const double volume = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

    auto push = [&](const std::string& name, double value, double tol) {
        out.push_back({name, value <= tol, value,
                       "value " + fmt(value) + " vs tol " + fmt(tol)});
    };

    {  // transform round trip
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal(0.0, 1.0);
        aligned_vector<double> samples(g->size());
        for (auto& x : samples) x = normal(rng);
        SpectralField f = from_physical(g, samples);
        aligned_vector<double> back = to_physical(f);
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            err = std::max(err, std::abs(back[i] - samples[i]));
            scale = std::max(scale, std::abs(samples[i]));
        }
        push("transform_roundtrip", rel(err, scale), 1e-13);
    }
    {  // curl of gradient vanishes
        SpectralField phi = s.u.x;
        VectorField grad(g);
        for (int c = 0; c < 3; ++c) grad.comp(c) = derivative(phi, c);
        const double err = l2_norm(curl(grad));
        push("curl_grad_zero", rel(err, l2_norm(grad)), 1e-12);
    }
    {  // divergence of curl vanishes
        VectorField w = curl(s.u);
        push("div_curl_zero", rel(linf_norm(divergence(w)), linf_norm(w)), 1e-12);
    }
    {  // projector idempotent
        VectorField p1 = leray_project(s.b);
        VectorField p2 = leray_project(p1);
        p2 -= p1;
        push("leray_idempotent", rel(l2_norm(p2), l2_norm(p1)), 1e-13);
    }
    {  // Lambda^2 = -Laplacian
        SpectralField a = fractional_laplacian(s.b.x, 2.0);
        SpectralField b(g);
        auto k2 = g->k2();
        auto src = s.b.x.coeffs();
        auto dst = b.coeffs();
        for (std::size_t i = 0; i < k2.size(); ++i) dst[i] = k2[i] * src[i];
        a -= b;
        push("fractional_s2_matches_laplacian", rel(l2_norm(a), l2_norm(b)), 1e-14);
    }
    {  // cross antisymmetry (exact)
        VectorField ab = cross_physical(s.u, s.b);
        VectorField ba = cross_physical(s.b, s.u);
        ab += ba;
        push("cross_antisymmetry", l2_norm(ab), 0.0);
    }
    {  // Hall term energy neutrality
        const double ip = [&] {
            VectorField h = hall_term(s.b);
            double acc = 0.0;
            for (int c = 0; c < 3; ++c)
                acc += kernels::dot_real(h.comp(c).coeffs(), s.b.comp(c).coeffs());
            return acc * volume;
        }();
        const double h1 = sobolev_norm(s.b, 1);
        push("hall_energy_neutrality", std::abs(ip) / (h1 * h1), 1e-12);
    }
    {  // induction / Lorentz energy exchange
        double acc = 0.0;
        VectorField ind = induction_term(s.u, s.b);
        VectorField lor = lorentz_term(s.b);
        for (int c = 0; c < 3; ++c) {
            acc += kernels::dot_real(ind.comp(c).coeffs(), s.b.comp(c).coeffs());
            acc += kernels::dot_real(lor.comp(c).coeffs(), s.u.comp(c).coeffs());
        }
        acc *= volume;
        const double scale = l2_norm(ind) * l2_norm(s.b) + l2_norm(lor) * l2_norm(s.u);
        push("induction_lorentz_exchange", rel(std::abs(acc), scale), 1e-11);
    }
    {  // advection energy neutrality
        VectorField adv = leray_project(advection_term(s.u));
        double acc = 0.0;
        for (int c = 0; c < 3; ++c)
            acc += kernels::dot_real(adv.comp(c).coeffs(), s.u.comp(c).coeffs());
        acc *= volume;
        push("advection_energy_neutrality",
             rel(std::abs(acc), l2_norm(adv) * l2_norm(s.u)), 1e-11);
    }
    {  // mollifier commutes with curl and projection
        VectorField a = mollify(curl(s.u), 0.3);
        VectorField b = curl(mollify(s.u, 0.3));
        a -= b;
        push("mollify_commutes_curl", rel(l2_norm(a), l2_norm(b)), 1e-14);
        VectorField c1 = mollify(leray_project(s.b), 0.3);
        VectorField c2 = leray_project(mollify(s.b, 0.3));
        c1 -= c2;
        push("mollify_commutes_leray", rel(l2_norm(c1), l2_norm(c2)), 1e-14);
    }
    {  // H^0 equals L2
        const double a = sobolev_norm(s.u, 0);
        const double b = l2_norm(s.u);
        push("sobolev0_equals_l2", rel(std::abs(a - b), b), 1e-12);
    }
    {  // shells partition Parseval
        ShellDecomposition shells(g);
        SpectralField f = s.b.y;
        f.at(0, 0, 0) = 0.0;
        double sum = 0.0;
        for (int j = 1; j <= shells.num_shells(); ++j) {
            const double nj = l2_norm(shells.restrict_to(f, j));
            sum += nj * nj;
        }
        const double total = l2_norm(f);
        push("shell_parseval", rel(std::abs(sum - total * total), total * total), 1e-12);
    }
    {  // Besov bounded by the shell operator L1 bound times L-inf
        ShellDecomposition shells(g);
        const double c_shell = shells.operator_l1_bound();
        const double besov = besov_norm_b0(s.u.y);
        const double linf = linf_norm(s.u.y);
        push("besov_le_cshell_linf", besov <= c_shell * linf * (1.0 + 1e-12) ? 0.0 : 1.0, 0.0);
        out.back().detail = "besov " + fmt(besov) + " <= C_shell " + fmt(c_shell) +
                            " * linf " + fmt(linf);
    }
    {  // functional bounds
        const double x = functional_X(s, 3);
        const double a = functional_A(s);
        push("x_at_least_one", x >= 1.0 ? 0.0 : 1.0, 0.0);
        push("a_positive", a > 0.0 ? 0.0 : 1.0, 0.0);
    }
    return out;
}

}  // namespace hmhd
