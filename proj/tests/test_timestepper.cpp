#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmhd/experiments.hpp"
#include "hmhd/timestepper.hpp"
#include "oracle_fields.hpp"

using namespace hmhd;

namespace {

State single_mode_b(const GridPtr& g, double amp) {
    State s(g);
    s.b.z.at(1, 0, 0) = cplx(0.0, -0.5 * amp);
    s.b.z.at(-1, 0, 0) = cplx(0.0, 0.5 * amp);
    return s;
}

State beltrami_u(const GridPtr& g, double amp) {
    State s(g);
    s.u.y.at(1, 0, 0) = cplx(0.0, -0.5 * amp);
    s.u.y.at(-1, 0, 0) = cplx(0.0, 0.5 * amp);
    s.u.z.at(1, 0, 0) = cplx(0.5 * amp, 0.0);
    s.u.z.at(-1, 0, 0) = cplx(0.5 * amp, 0.0);
    return s;
}

State advance(Stepper& st, State s, double dt, int steps) {
    for (int i = 0; i < steps; ++i) s = st.step(s, dt);
    return s;
}

}  // namespace

TEST_CASE("stable_dt formula and caps") {
    PhysParams p;
    StepControl c;
    c.dt_max = 0.05;

    // rest state hits the cap
    GridPtr g = Grid::make(16);
    State s(g);
    CHECK(stable_dt(s, p, c) == doctest::Approx(0.05).epsilon(1e-14));

    // direct evaluation of the pinned example
    StepControl c2;
    c2.dt_max = 1e9;
    c2.cfl_advective = 0.5;
    c2.cfl_hall = 0.2;
    CHECK(stable_dt(0.0, 1.0, 10, p, c2) == doctest::Approx(0.002).epsilon(1e-12));

    // doubling n doubles k_max: advective bound halves, Hall bound quarters
    const double adv16 = stable_dt(1.0, 0.0, Grid(16).dealias_cutoff(), p, c2);
    const double adv32 = stable_dt(1.0, 0.0, Grid(32).dealias_cutoff(), p, c2);
    CHECK(adv16 == doctest::Approx(2.0 * adv32).epsilon(1e-12));
    const double hall16 = stable_dt(0.0, 1.0, Grid(16).dealias_cutoff(), p, c2);
    const double hall32 = stable_dt(0.0, 1.0, Grid(32).dealias_cutoff(), p, c2);
    CHECK(hall16 == doctest::Approx(4.0 * hall32).epsilon(1e-12));

    StepControl bad;
    bad.cfl_hall = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("integrating factor is exact on the resistive single-mode flow") {
    GridPtr g = Grid::make(16);
    const double amp = 2.3;
    State s = single_mode_b(g, amp);
    PhysParams p;  // nu 1, eta 1
    Stepper st(g, p);

    const double l2_0 = l2_norm(s.b);
    State end = advance(st, s, 0.01, 100);  // T = 1
    VectorField expected = s.b;
    expected *= std::exp(-1.0);
    VectorField diff = end.b;
    diff -= expected;
    CHECK(l2_norm(diff) <= 1e-12 * l2_0);
    CHECK(l2_norm(end.u) <= 1e-12 * l2_0);
}

TEST_CASE("integrating factor is exact on Beltrami Navier-Stokes decay") {
    GridPtr g = Grid::make(16);
    State s = beltrami_u(g, 1.7);
    PhysParams p;
    Stepper st(g, p);

    const double l2_0 = l2_norm(s.u);
    State end = advance(st, s, 0.01, 100);
    VectorField expected = s.u;
    expected *= std::exp(-1.0);
    VectorField diff = end.u;
    diff -= expected;
    CHECK(l2_norm(diff) <= 1e-12 * l2_0);
    CHECK(l2_norm(end.b) == 0.0);
}

TEST_CASE("observed temporal order is at least 3.5") {
    GridPtr g = Grid::make(16);
    State s0 = make_initial("taylor_green", 1.0, 1, g);
    PhysParams p;
    p.nu = 0.05;  // keep dissipation from hiding the nonlinear error
    p.eta = 0.05;
    Stepper st(g, p);

    const double T = 0.08;
    const double h = 0.01;
    auto run = [&](double dt) {
        const int steps = int(std::round(T / dt));
        return advance(st, s0, dt, steps);
    };
    State ref = run(h / 8.0);
    auto err = [&](const State& s) {
        VectorField du = s.u, db = s.b;
        du -= ref.u;
        db -= ref.b;
        return std::sqrt(l2_norm(du) * l2_norm(du) + l2_norm(db) * l2_norm(db));
    };
    const double e4 = err(run(4 * h));
    const double e2 = err(run(2 * h));
    const double e1 = err(run(h));
    const double p1 = std::log2(e4 / e2);
    const double p2 = std::log2(e2 / e1);
    CAPTURE(e4);
    CAPTURE(e2);
    CAPTURE(e1);
    CHECK(p1 >= 3.5);
    CHECK(p2 >= 3.5);
    CHECK(p1 <= 5.0);
    CHECK(p2 <= 5.0);
}

TEST_CASE("energy never increases and divergence stays clean across steps") {
    GridPtr g = Grid::make(16);
    State s = make_initial("random_band_limited", 1.0, 5, g);
    PhysParams p;
    StepControl c;
    c.dt_max = 2e-3;
    Stepper st(g, p);

    double e_prev = 0.5 * (l2_norm(s.u) * l2_norm(s.u) + l2_norm(s.b) * l2_norm(s.b));
    const int kcut = g->dealias_cutoff();
    for (int i = 0; i < 200; ++i) {
        s = st.step(s, stable_dt(s, p, c));
        const double e = 0.5 * (l2_norm(s.u) * l2_norm(s.u) + l2_norm(s.b) * l2_norm(s.b));
        CHECK(e <= e_prev * (1.0 + 1e-10));
        e_prev = e;
    }
    CHECK(divergence_linf(s.u) <= 1e-12 * std::max(1.0, kcut * linf_norm(s.u)));
    CHECK(divergence_linf(s.b) <= 1e-12 * std::max(1.0, kcut * linf_norm(s.b)));
    CHECK(s.t == doctest::Approx(200 * 2e-3).epsilon(1e-10));
}

TEST_CASE("nonfinite results raise instability_error") {
    // weak dissipation so the integrating factor cannot rescue a wildly
    // CFL-violating whistler step
    GridPtr g = Grid::make(16);
    State s = make_initial("random_band_limited", 3.0, 3, g);
    PhysParams p;
    p.nu = 1e-3;
    p.eta = 1e-3;
    Stepper st(g, p);
    CHECK_THROWS_AS(
        {
            for (int i = 0; i < 50; ++i) s = st.step(s, 0.5);
        },
        instability_error);
}

TEST_CASE("step rejects nonpositive dt") {
    GridPtr g = Grid::make(16);
    Stepper st(g, PhysParams{});
    State s(g);
    CHECK_THROWS_AS(st.step(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(st.step(s, -0.1), std::invalid_argument);
}

TEST_CASE("hall_only stepping freezes u and matches the generalized (0,2) flow") {
    GridPtr g = Grid::make(16);
    State s(g);
    s.b = oracle::random_solenoidal(g, 5, 77, 0.8);
    PhysParams p;  // eta 1, hall 1
    p.alpha = 0.0;
    p.beta = 2.0;

    Stepper standard(g, p, EvolveMode::hall_only);
    Stepper generalized(g, p, EvolveMode::generalized_hall);
    State a = s, b = s;
    for (int i = 0; i < 25; ++i) {
        a = standard.step(a, 2e-3);
        b = generalized.step(b, 2e-3);
    }
    CHECK(l2_norm(a.u) == 0.0);
    CHECK(l2_norm(b.u) == 0.0);
    CHECK(oracle::rel_l2_diff(a.b, b.b) <= 1e-12);
}
