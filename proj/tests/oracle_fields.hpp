// Shared test oracles: analytic trig fields evaluated on the collocation
// grid, plus seeded random fields. Expected values in the tests are frozen
// closed forms (hand-differentiated), compared pointwise on the grid.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "hmhd/diagnostics.hpp"
#include "hmhd/field.hpp"

namespace oracle {

using hmhd::aligned_vector;
using hmhd::cplx;
using hmhd::GridPtr;
using hmhd::SpectralField;
using hmhd::VectorField;

using Fn = std::function<double(double, double, double)>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline const double volume = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

inline aligned_vector<double> sample(const GridPtr& g, const Fn& f) {
    const int n = g->n();
    aligned_vector<double> out(g->size());
    std::size_t i = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++i)
                out[i] = f(two_pi * ix / n, two_pi * iy / n, two_pi * iz / n);
    return out;
}

inline SpectralField scalar(const GridPtr& g, const Fn& f) {
    return hmhd::from_physical(g, sample(g, f));
}

inline VectorField vec(const GridPtr& g, const Fn& fx, const Fn& fy, const Fn& fz) {
    VectorField v(g);
    v.x = scalar(g, fx);
    v.y = scalar(g, fy);
    v.z = scalar(g, fz);
    return v;
}

/// max over grid points of |field - expected|.
inline double max_err(const SpectralField& f, const Fn& expected) {
    aligned_vector<double> got = hmhd::to_physical(f);
    aligned_vector<double> want = sample(f.grid_ptr(), expected);
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        worst = std::max(worst, std::abs(got[i] - want[i]));
    return worst;
}

inline double max_err(const VectorField& v, const Fn& fx, const Fn& fy, const Fn& fz) {
    return std::max({max_err(v.x, fx), max_err(v.y, fy), max_err(v.z, fz)});
}

inline bool bit_equal(const SpectralField& a, const SpectralField& b) {
    auto ca = a.coeffs(), cb = b.coeffs();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (ca[i] != cb[i]) return false;
    return true;
}

inline bool bit_equal(const VectorField& a, const VectorField& b) {
    return bit_equal(a.x, b.x) && bit_equal(a.y, b.y) && bit_equal(a.z, b.z);
}

inline double rel_l2_diff(const VectorField& a, const VectorField& b) {
    VectorField d = a;
    d -= b;
    const double scale = std::max(hmhd::l2_norm(a), hmhd::l2_norm(b));
    return scale > 0 ? hmhd::l2_norm(d) / scale : hmhd::l2_norm(d);
}

/// Seeded random mean-free scalar with a flat band |k| <= bandwidth.
inline SpectralField random_scalar(const GridPtr& g, int bandwidth, std::uint64_t seed) {
    SpectralField f(g);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = g->n();
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                const int kx = g->wavenumber(ix), ky = g->wavenumber(iy),
                          kz = g->wavenumber(iz);
                const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                if (k2 == 0.0 || k2 > double(bandwidth) * bandwidth) continue;
                const bool canonical =
                    kx != 0 ? kx > 0 : (ky != 0 ? ky > 0 : kz > 0);
                if (!canonical) continue;
                const cplx c(normal(rng), normal(rng));
                f.at(kx, ky, kz) = c;
                f.at(-kx, -ky, -kz) = std::conj(c);
            }
    return f;
}

/// Seeded random solenoidal band-limited vector field.
inline VectorField random_solenoidal(const GridPtr& g, int bandwidth,
                                     std::uint64_t seed, double l2_amplitude = 1.0) {
    VectorField v(g);
    for (int c = 0; c < 3; ++c)
        v.comp(c) = random_scalar(g, bandwidth, seed * 3 + std::uint64_t(c));
    hmhd::leray_project_inplace(v);
    hmhd::dealias_inplace(v);
    const double norm = hmhd::l2_norm(v);
    if (norm > 0) v *= l2_amplitude / norm;
    return v;
}

}  // namespace oracle
