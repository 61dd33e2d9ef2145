#pragma once

#include <span>

#include "hmhd/field.hpp"
#include "hmhd/spectral_ops.hpp"

namespace hmhd {

/// Physical parameters of the system. The resistivity multiplies the Delta B
/// term and must stay positive; nu = 0 selects the inviscid momentum
/// equation. eps > 0 switches every right-hand side to the mollified system,
/// alpha/beta parameterize the generalized Hall problem.
struct PhysParams {
    double nu = 1.0;
    double eta = 1.0;
    double hall = 1.0;
    double eps = 0.0;
    double alpha = 0.0;
    double beta = 2.0;

    void validate() const;
    void validate_generalized() const;
};

/// Evolving pair (u, B) plus simulation time.
struct State {
    VectorField u, b;
    double t = 0.0;

    State() = default;
    explicit State(GridPtr g) : u(g), b(g) {}
    const Grid& grid() const { return u.grid(); }
    const GridPtr& grid_ptr() const { return u.grid_ptr(); }
};

/// Which unknowns evolve: the full coupled system, the magnetic equation
/// alone with u frozen (the Hall problem without fluid coupling), or the
/// fractional generalization of the latter.
enum class EvolveMode { full, hall_only, generalized_hall };

// ---- individual terms ------------------------------------------------------

/// (curl B) x B, dealiased.
VectorField lorentz_term(const VectorField& b);
/// curl((curl B) x B); solenoidal.
VectorField hall_term(const VectorField& b);
/// curl(u x B), dealiased, solenoidal.
VectorField induction_term(const VectorField& u, const VectorField& b);
/// (u . grad) u, spectral derivatives and physical products, dealiased.
VectorField advection_term(const VectorField& u);

/// Mollifier J_eps as the Gaussian multiplier exp(-eps^2 |k|^2 / 2);
/// eps = 0 is the identity.
SpectralField mollify(const SpectralField& f, double eps);
VectorField mollify(const VectorField& v, double eps);

// ---- assembled right-hand sides ---------------------------------------------

struct Rhs {
    VectorField du, db;
    Rhs() = default;
    explicit Rhs(GridPtr g) : du(g), db(g) {}
};

/// Full PDE right-hand side including dissipation. With eps = 0:
///   du = P[-(u.grad)u + (curl B) x B] + nu Lap u
///   db = curl(u x B) - hall * curl((curl B) x B) + eta Lap B.
/// With eps > 0 every nonlinear term is J_eps(term(J_eps args)) and the
/// dissipation acts through J_eps^2.
Rhs assemble_rhs(const State& s, const PhysParams& p);

/// -curl((Lambda^alpha curl B) x B) - Lambda^beta B.
VectorField generalized_hall_rhs(const VectorField& b, const PhysParams& p);

// ---- stepper plumbing --------------------------------------------------------

/// Nonlinear part only (dissipation handled by the integrating factor).
/// Shares the physical-space transforms across terms; term for term it is
/// bit-identical to composing the public operations above.
Rhs nonlinear_rhs(const State& s, const PhysParams& p, EvolveMode mode);

/// Dissipation symbols: u-equation -nu |k|^2 exp(-eps^2 |k|^2), b-equation
/// -eta |k|^2 exp(-eps^2 |k|^2), or -|k|^beta in generalized mode.
void linear_symbol_u(const Grid& g, const PhysParams& p, std::span<double> sym);
void linear_symbol_b(const Grid& g, const PhysParams& p, EvolveMode mode,
                     std::span<double> sym);

}  // namespace hmhd
