#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hmhd/hall_mhd.hpp"

namespace hmhd {

/// Dyadic shells 2^{j-1} <= |k| < 2^j, j = 1 .. floor(log2 k_max)+1, over the
/// full wavenumber lattice; the k = 0 mode belongs to no shell. Shells
/// partition all nonzero modes.
class ShellDecomposition {
  public:
    explicit ShellDecomposition(GridPtr g);

    int num_shells() const { return num_shells_; }
    /// Shell index per mode (1-based); 0 marks the mean mode.
    std::span<const std::int16_t> shell_of() const { return shell_of_; }

    /// Restriction of f to shell j (modes outside zeroed).
    SpectralField restrict_to(const SpectralField& f, int j) const;

    /// L-infinity -> L-infinity operator norm of the sharp shell restriction,
    /// max over shells of (1/n^3) sum_x |K_j(x)| with K_j the shell kernel.
    double operator_l1_bound() const;

  private:
    GridPtr grid_;
    int num_shells_;
    aligned_vector<std::int16_t> shell_of_;
};

/// sqrt( sum_k (1+|k|^2)^m |f^(k)|^2 (2pi)^3 ), the multiplier form of the
/// H^m norm; vectors take the root-sum-square of components.
double sobolev_norm(const SpectralField& f, int m);
double sobolev_norm(const VectorField& v, int m);

/// L2 norm, = sobolev_norm(., 0).
double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& v);

/// Physical-space max-abs (max over components for vectors).
double linf_norm(const SpectralField& f);
double linf_norm(const VectorField& v);
/// max-abs over the nine spectral derivatives d_j v_i.
double grad_linf(const VectorField& v);

/// Homogeneous Besov B^0_{inf,inf} norm with sharp dyadic shells: max over
/// shells of the physical max-abs of the shell restriction.
double besov_norm_b0(const SpectralField& f);

/// X(t) = 1 + ||B||_{H^m}^2 + ||u||_{H^m}^2 (requires m >= 3).
double functional_X(const State& s, int m);

/// A(t) = ||curl u||_{B^0_inf,inf} (max over components)
///        + (1 + ||u||_inf^2 + ||B||_inf^2 + ||grad B||_inf^2)
///          / (1 + log(1 + ||u||_inf + ||B||_inf + ||grad B||_inf)).
double functional_A(const State& s);

/// Physical max-abs of the spectral divergence.
double divergence_linf(const VectorField& v);

/// Pressure from the stationary representation: solves
/// -Lap(p + |B|^2/2) = sum_{j,l} d_j d_l (u_j u_l - B_j B_l) spectrally,
/// mean of p set to 0.
SpectralField pressure_recover(const VectorField& u, const VectorField& b);

/// L2 norms of the stationary-system residuals
///   r_u = || P[u.grad u - (curl B) x B] - nu Lap u ||,
///   r_b = || -curl(u x B) + curl((curl B) x B) - Lap B ||.
std::pair<double, double> stationary_residual(const VectorField& u,
                                              const VectorField& b,
                                              const PhysParams& p);

/// One time sample of every monitored quantity. diss_* are the running
/// trapezoidal integrals of nu ||grad u||^2 and eta ||grad B||^2 (gradients
/// of J_eps u, J_eps B in mollified mode).
struct DiagnosticsRecord {
    double t = 0.0;
    double energy_u = 0.0, energy_b = 0.0;
    double hm_u = 0.0, hm_b = 0.0;
    double x_of_t = 0.0, a_of_t = 0.0;
    double besov_omega = 0.0;
    double linf_u = 0.0, linf_b = 0.0, linf_grad_b = 0.0;
    double div_u_max = 0.0, div_b_max = 0.0;
    double diss_u = 0.0, diss_b = 0.0;
};

/// Computes records along a run and accumulates the dissipation integrals at
/// the sampling cadence.
class Recorder {
  public:
    Recorder(GridPtr g, int m, PhysParams p, EvolveMode mode = EvolveMode::full);

    const DiagnosticsRecord& sample(const State& s);
    const std::vector<DiagnosticsRecord>& records() const { return records_; }

    /// Physical max-abs of u and b at the last sample (reused for the CFL).
    double last_linf_u() const { return last_linf_u_; }
    double last_linf_b() const { return last_linf_b_; }

  private:
    GridPtr grid_;
    int m_;
    PhysParams params_;
    ShellDecomposition shells_;
    aligned_vector<double> hm_weight_;    // (1+|k|^2)^m
    aligned_vector<double> diss_weight_u_, diss_weight_b_;
    std::vector<DiagnosticsRecord> records_;
    double prev_t_ = 0.0, prev_gu_ = 0.0, prev_gb_ = 0.0;
    double last_linf_u_ = 0.0, last_linf_b_ = 0.0;
};

/// Energy-budget audit of a recorded history: for each sample,
/// deficit(t) = E(0) - [E(t) + diss_u(t) + diss_b(t)]; the inequality is
/// violated when the most negative deficit drops below -tol_rel * E(0).
struct BudgetReport {
    static constexpr double tol_rel = 1e-6;
    double initial_energy = 0.0;
    double min_deficit = 0.0;
    double t_min = 0.0;
    bool violation = false;
};
BudgetReport energy_budget(const std::vector<DiagnosticsRecord>& history);

}  // namespace hmhd
