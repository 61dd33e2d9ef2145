#pragma once

#include <stdexcept>

#include "hmhd/hall_mhd.hpp"

namespace hmhd {

/// Step-size policy. The advective bound scales with k_max = floor(n/3) (the
/// largest retained wavenumber per dimension), the Hall/whistler bound with
/// k_max^2 since the Hall term carries second derivatives.
struct StepControl {
    double dt_max = 0.01;
    double cfl_advective = 0.5;
    double cfl_hall = 0.2;
    double t_end = 1.0;
    int record_every = 1;

    void validate() const;
};

/// Thrown when a step produces nonfinite values; interpreted as loss of
/// regularity at the discrete level by the blow-up monitor.
struct instability_error : std::runtime_error {
    double t;
    explicit instability_error(double t_)
        : std::runtime_error("nonfinite state after step"), t(t_) {}
};

/// dt = min(dt_max,
///          cfl_advective / ((max|u| + max|B|) k_max + tiny),
///          cfl_hall / (hall max|B| k_max^2 + tiny)),  tiny = 1e-30.
double stable_dt(double linf_u, double linf_b, int k_max, const PhysParams& p,
                 const StepControl& c);
double stable_dt(const State& s, const PhysParams& p, const StepControl& c);

/// Classical four-stage Runge-Kutta on the nonlinear terms combined with the
/// exact integrating factor exp(sym * dt) on the linear dissipation. u is
/// re-projected solenoidal after the step. Holds the dissipation multiplier
/// cache, so reuse one instance across steps.
class Stepper {
  public:
    Stepper(GridPtr g, PhysParams p, EvolveMode mode = EvolveMode::full);

    const PhysParams& params() const { return params_; }
    EvolveMode mode() const { return mode_; }

    /// Advance by dt. Throws instability_error on nonfinite results.
    State step(const State& s, double dt);

  private:
    void refresh_multipliers(double dt);

    GridPtr grid_;
    PhysParams params_;
    EvolveMode mode_;
    aligned_vector<double> sym_u_, sym_b_;
    aligned_vector<double> e1_u_, e2_u_, e1_b_, e2_b_;
    double cached_dt_ = -1.0;
};

}  // namespace hmhd
