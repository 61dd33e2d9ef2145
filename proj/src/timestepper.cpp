#include "hmhd/timestepper.hpp"

#include <cmath>

#include "hmhd/kernels.hpp"

namespace hmhd {

void StepControl::validate() const {
    if (!(dt_max > 0.0) || !(cfl_advective > 0.0) || !(cfl_hall > 0.0))
        throw std::invalid_argument("StepControl: factors must be > 0");
    if (record_every < 1)
        throw std::invalid_argument("StepControl: record_every must be >= 1");
}

double stable_dt(double linf_u, double linf_b, int k_max, const PhysParams& p,
                 const StepControl& c) {
    constexpr double tiny = 1e-30;
    const double adv = c.cfl_advective / ((linf_u + linf_b) * k_max + tiny);
    const double hall = c.cfl_hall / (p.hall * linf_b * double(k_max) * k_max + tiny);
    return std::min(c.dt_max, std::min(adv, hall));
}

double stable_dt(const State& s, const PhysParams& p, const StepControl& c) {
    aligned_vector<double> px, py, pz;
    to_physical3(s.u, px, py, pz);
    const double lu = std::max({kernels::max_abs(px), kernels::max_abs(py),
                                kernels::max_abs(pz)});
    to_physical3(s.b, px, py, pz);
    const double lb = std::max({kernels::max_abs(px), kernels::max_abs(py),
                                kernels::max_abs(pz)});
    return stable_dt(lu, lb, s.grid().dealias_cutoff(), p, c);
}

Stepper::Stepper(GridPtr g, PhysParams p, EvolveMode mode)
    : grid_(std::move(g)), params_(p), mode_(mode) {
    params_.validate();
    if (mode_ == EvolveMode::generalized_hall) params_.validate_generalized();
    const std::size_t sz = grid_->size();
    sym_u_.resize(sz);
    sym_b_.resize(sz);
    e1_u_.resize(sz);
    e2_u_.resize(sz);
    e1_b_.resize(sz);
    e2_b_.resize(sz);
    linear_symbol_u(*grid_, params_, sym_u_);
    linear_symbol_b(*grid_, params_, mode_, sym_b_);
}

void Stepper::refresh_multipliers(double dt) {
    if (dt == cached_dt_) return;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(sym_u_.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        e1_u_[i] = std::exp(0.5 * dt * sym_u_[i]);
        e2_u_[i] = std::exp(dt * sym_u_[i]);
        e1_b_[i] = std::exp(0.5 * dt * sym_b_[i]);
        e2_b_[i] = std::exp(dt * sym_b_[i]);
    }
    cached_dt_ = dt;
}

State Stepper::step(const State& s, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    refresh_multipliers(dt);

    // Lawson integrating-factor RK4: with y' = L y + N(y) and E_s = exp(s L),
    //   N1 = N(y),  N2 = N(E_.5 (y + dt/2 N1)),  N3 = N(E_.5 y + dt/2 N2),
    //   N4 = N(E_1 y + dt E_.5 N3),
    //   y+ = E_1 y + dt/6 (E_1 N1 + 2 E_.5 (N2 + N3) + N4).
    const bool evolve_u = mode_ == EvolveMode::full;

    State work;
    work.u = VectorField::uninit(grid_);
    work.b = VectorField::uninit(grid_);
    work.t = s.t;
    Rhs n1 = nonlinear_rhs(s, params_, mode_);

    for (int c = 0; c < 3; ++c) {
        if (evolve_u)
            kernels::stage_pre(work.u.comp(c).coeffs(), e1_u_, s.u.comp(c).coeffs(),
                               0.5 * dt, n1.du.comp(c).coeffs());
        else
            work.u.comp(c) = s.u.comp(c);
        kernels::stage_pre(work.b.comp(c).coeffs(), e1_b_, s.b.comp(c).coeffs(),
                           0.5 * dt, n1.db.comp(c).coeffs());
    }
    Rhs n2 = nonlinear_rhs(work, params_, mode_);

    for (int c = 0; c < 3; ++c) {
        if (evolve_u)
            kernels::stage_mid(work.u.comp(c).coeffs(), e1_u_, s.u.comp(c).coeffs(),
                               0.5 * dt, n2.du.comp(c).coeffs());
        kernels::stage_mid(work.b.comp(c).coeffs(), e1_b_, s.b.comp(c).coeffs(),
                           0.5 * dt, n2.db.comp(c).coeffs());
    }
    Rhs n3 = nonlinear_rhs(work, params_, mode_);

    for (int c = 0; c < 3; ++c) {
        if (evolve_u)
            kernels::stage_end(work.u.comp(c).coeffs(), e2_u_, e1_u_,
                               s.u.comp(c).coeffs(), dt, n3.du.comp(c).coeffs());
        kernels::stage_end(work.b.comp(c).coeffs(), e2_b_, e1_b_,
                           s.b.comp(c).coeffs(), dt, n3.db.comp(c).coeffs());
    }
    Rhs n4 = nonlinear_rhs(work, params_, mode_);

    State out = s;
    for (int c = 0; c < 3; ++c) {
        if (evolve_u)
            kernels::rk4_combine(out.u.comp(c).coeffs(), dt, e1_u_, e2_u_,
                                 n1.du.comp(c).coeffs(), n2.du.comp(c).coeffs(),
                                 n3.du.comp(c).coeffs(), n4.du.comp(c).coeffs());
        kernels::rk4_combine(out.b.comp(c).coeffs(), dt, e1_b_, e2_b_,
                             n1.db.comp(c).coeffs(), n2.db.comp(c).coeffs(),
                             n3.db.comp(c).coeffs(), n4.db.comp(c).coeffs());
    }
    if (evolve_u) leray_project_inplace(out.u);
    out.t = s.t + dt;

    for (int c = 0; c < 3; ++c) {
        if (!kernels::all_finite(out.u.comp(c).coeffs()) ||
            !kernels::all_finite(out.b.comp(c).coeffs()))
            throw instability_error(out.t);
    }
    return out;
}

}  // namespace hmhd
