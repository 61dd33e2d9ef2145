#include "hmhd/hall_mhd.hpp"

#include <cmath>
#include <stdexcept>

#include "hmhd/fft.hpp"
#include "hmhd/kernels.hpp"

namespace hmhd {

void PhysParams::validate() const {
    if (!(eta > 0.0)) throw std::invalid_argument("PhysParams: eta must be > 0");
    if (nu < 0.0) throw std::invalid_argument("PhysParams: nu must be >= 0");
    if (hall < 0.0) throw std::invalid_argument("PhysParams: hall must be >= 0");
    if (eps < 0.0) throw std::invalid_argument("PhysParams: eps must be >= 0");
}

void PhysParams::validate_generalized() const {
    if (alpha < 0.0) throw std::invalid_argument("PhysParams: alpha must be >= 0");
    if (!(beta > 0.0)) throw std::invalid_argument("PhysParams: beta must be > 0");
}

namespace {

// Physical-space images of one vector field, shared across the terms of one
// right-hand side evaluation.
struct Phys {
    aligned_vector<double> x, y, z;
    std::span<const double> comp(int i) const {
        return i == 0 ? std::span<const double>{x}
                      : (i == 1 ? std::span<const double>{y} : std::span<const double>{z});
    }
};

Phys phys_of(const VectorField& v) {
    Phys p;
    to_physical3(v, p.x, p.y, p.z);
    return p;
}

// a x b pointwise, forward transform, dealias. Same kernel sequence as
// cross_physical, minus the transforms of already-available inputs.
VectorField cross_fwd(const GridPtr& g, const Phys& a, const Phys& b) {
    aligned_vector<double> ox(a.x.size()), oy(a.x.size()), oz(a.x.size());
    kernels::cross_pointwise(a.x, a.y, a.z, b.x, b.y, b.z, ox, oy, oz);
    VectorField out = from_physical3(g, ox, oy, oz);
    dealias_inplace(out);
    return out;
}

// (u . grad) u given the physical image of u.
VectorField advection_from(const VectorField& u, const Phys& up) {
    const GridPtr& g = u.grid_ptr();
    aligned_vector<double> acc[3];
    for (int i = 0; i < 3; ++i) {
        acc[i].assign(g->size(), 0.0);
        for (int j = 0; j < 3; ++j) {
            aligned_vector<double> dj = derivative_physical(u.comp(i), j);
            kernels::fma_pointwise(acc[i], up.comp(j), dj);
        }
    }
    VectorField out = from_physical3(g, acc[0], acc[1], acc[2]);
    dealias_inplace(out);
    return out;
}

}  // namespace

VectorField lorentz_term(const VectorField& b) {
    return cross_physical(curl(b), b);
}

VectorField hall_term(const VectorField& b) {
    return curl(lorentz_term(b));
}

VectorField induction_term(const VectorField& u, const VectorField& b) {
    require_same_grid(u.grid(), b.grid());
    return curl(cross_physical(u, b));
}

VectorField advection_term(const VectorField& u) {
    return advection_from(u, phys_of(u));
}

SpectralField mollify(const SpectralField& f, double eps) {
    if (eps < 0.0) throw std::invalid_argument("mollify: eps must be >= 0");
    SpectralField out = f;
    if (eps == 0.0) return out;
    auto k2 = f.grid().k2();
    auto c = out.coeffs();
    const double h = 0.5 * eps * eps;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) c[i] *= std::exp(-h * k2[i]);
    return out;
}

VectorField mollify(const VectorField& v, double eps) {
    VectorField out(v.grid_ptr());
    out.x = mollify(v.x, eps);
    out.y = mollify(v.y, eps);
    out.z = mollify(v.z, eps);
    return out;
}

Rhs nonlinear_rhs(const State& s, const PhysParams& p, EvolveMode mode) {
    p.validate();
    const GridPtr& g = s.grid_ptr();
    Rhs rhs(g);

    if (mode == EvolveMode::generalized_hall) {
        p.validate_generalized();
        VectorField cb = curl(s.b);
        VectorField hall = curl(cross_physical(fractional_laplacian(cb, p.alpha), s.b));
        rhs.db -= hall;
        return rhs;
    }

    if (p.eps == 0.0) {
        const Phys bp = phys_of(s.b);
        const Phys cbp = phys_of(curl(s.b));
        const Phys up = phys_of(s.u);
        VectorField lor = cross_fwd(g, cbp, bp);

        if (mode == EvolveMode::full) {
            rhs.du = lor;
            rhs.du -= advection_from(s.u, up);
            leray_project_inplace(rhs.du);
        }
        rhs.db = curl(cross_fwd(g, up, bp));
        VectorField hall = curl(lor);
        hall *= p.hall;
        rhs.db -= hall;
        return rhs;
    }

    // Mollified system: every nonlinearity is J(term(J args)), so the inner
    // Lorentz expression J((curl JB) x JB) is shared between the momentum
    // equation and the Hall term.
    const VectorField ju = mollify(s.u, p.eps);
    const VectorField jb = mollify(s.b, p.eps);
    const Phys jbp = phys_of(jb);
    const Phys cjbp = phys_of(curl(jb));
    const Phys jup = phys_of(ju);
    VectorField lor = mollify(cross_fwd(g, cjbp, jbp), p.eps);

    if (mode == EvolveMode::full) {
        rhs.du = lor;
        rhs.du -= mollify(advection_from(ju, jup), p.eps);
        leray_project_inplace(rhs.du);
    }
    rhs.db = curl(mollify(cross_fwd(g, jup, jbp), p.eps));
    VectorField hall = curl(lor);
    hall *= p.hall;
    rhs.db -= hall;
    return rhs;
}

void linear_symbol_u(const Grid& g, const PhysParams& p, std::span<double> sym) {
    auto k2 = g.k2();
    const double h = p.eps * p.eps;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(sym.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        sym[i] = -p.nu * k2[i] * (p.eps == 0.0 ? 1.0 : std::exp(-h * k2[i]));
}

void linear_symbol_b(const Grid& g, const PhysParams& p, EvolveMode mode,
                     std::span<double> sym) {
    auto k2 = g.k2();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(sym.size());
    if (mode == EvolveMode::generalized_hall) {
        const double half_beta = 0.5 * p.beta;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            sym[i] = k2[i] == 0.0 ? 0.0 : -std::pow(k2[i], half_beta);
        return;
    }
    const double h = p.eps * p.eps;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        sym[i] = -p.eta * k2[i] * (p.eps == 0.0 ? 1.0 : std::exp(-h * k2[i]));
}

Rhs assemble_rhs(const State& s, const PhysParams& p) {
    Rhs rhs = nonlinear_rhs(s, p, EvolveMode::full);
    const Grid& g = s.grid();
    aligned_vector<double> sym(g.size());
    linear_symbol_u(g, p, sym);
    for (int c = 0; c < 3; ++c)
        kernels::axpy_multiplier(rhs.du.comp(c).coeffs(), sym, s.u.comp(c).coeffs());
    linear_symbol_b(g, p, EvolveMode::full, sym);
    for (int c = 0; c < 3; ++c)
        kernels::axpy_multiplier(rhs.db.comp(c).coeffs(), sym, s.b.comp(c).coeffs());
    return rhs;
}

VectorField generalized_hall_rhs(const VectorField& b, const PhysParams& p) {
    p.validate_generalized();
    VectorField out = curl(cross_physical(fractional_laplacian(curl(b), p.alpha), b));
    out *= -1.0;
    out -= fractional_laplacian(b, p.beta);
    return out;
}

}  // namespace hmhd
