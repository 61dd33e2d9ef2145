#pragma once

#include <cstddef>
#include <span>

#include "hmhd/types.hpp"

namespace hmhd::kernels {

// Data-parallel inner loops of the solver. The functions in this namespace
// are the OpenMP production paths; kernels::ref holds plain serial loops
// with the same contracts, kept as the reference the tests compare against.
//
// Reductions use fixed-size chunking: partial sums are formed per 4096-element
// chunk and combined in chunk order, so the result is bit-identical for any
// thread count. Elementwise kernels are trivially thread-count-invariant.

inline constexpr std::size_t reduce_chunk = 4096;

// ---- elementwise, spectral ----

// y[i] *= m[i]
void apply_multiplier(std::span<cplx> y, std::span<const double> m);
// y[i] *= s
void scale(std::span<cplx> y, double s);
// y[i] += a * x[i]
void axpy(std::span<cplx> y, double a, std::span<const cplx> x);
// y[i] += m[i] * x[i]
void axpy_multiplier(std::span<cplx> y, std::span<const double> m,
                     std::span<const cplx> x);
// out[i] = e[i] * (y[i] + a * k[i])
void stage_pre(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k);
// out[i] = e[i] * y[i] + a * k[i]
void stage_mid(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k);
// out[i] = e2[i] * y[i] + a * e1[i] * k[i]
void stage_end(std::span<cplx> out, std::span<const double> e2,
               std::span<const double> e1, std::span<const cplx> y, double a,
               std::span<const cplx> k);
// y[i] = e2[i]*y[i] + (dt/6) * (e2[i]*k1[i] + 2*e1[i]*(k2[i]+k3[i]) + k4[i])
void rk4_combine(std::span<cplx> y, double dt, std::span<const double> e1,
                 std::span<const double> e2, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4);

// ---- elementwise, physical ----

// (ox,oy,oz) = (a x b) pointwise
void cross_pointwise(std::span<const double> ax, std::span<const double> ay,
                     std::span<const double> az, std::span<const double> bx,
                     std::span<const double> by, std::span<const double> bz,
                     std::span<double> ox, std::span<double> oy,
                     std::span<double> oz);
// out[i] = a[i] * b[i]
void mul_pointwise(std::span<double> out, std::span<const double> a,
                   std::span<const double> b);
// acc[i] += a[i] * b[i]
void fma_pointwise(std::span<double> acc, std::span<const double> a,
                   std::span<const double> b);

// ---- structured spectral kernels on the n^3 lattice ----
// Layout is row major with z fastest; index i in [0,n) carries wavenumber
// i < n/2 ? i : i - n.

// (ox,oy,oz) = i k x (vx,vy,vz)
void curl_modes(int n, std::span<const cplx> vx, std::span<const cplx> vy,
                std::span<const cplx> vz, std::span<cplx> ox,
                std::span<cplx> oy, std::span<cplx> oz);
// out = i k . (vx,vy,vz)
void divergence_modes(int n, std::span<const cplx> vx,
                      std::span<const cplx> vy, std::span<const cplx> vz,
                      std::span<cplx> out);
// v <- v - k (k.v)/|k|^2, k = 0 untouched
void leray_modes(int n, std::span<cplx> vx, std::span<cplx> vy,
                 std::span<cplx> vz);
// out = i k_axis * f
void derivative_modes(int n, int axis, std::span<const cplx> f,
                      std::span<cplx> out);

// ---- reductions ----

double max_abs(std::span<const double> x);
double max_abs_cplx(std::span<const cplx> x);
// false if any entry is NaN or infinite
bool all_finite(std::span<const cplx> x);
// sum of w[i] * |c[i]|^2
double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w);
// sum of |c[i]|^2
double abs2_sum(std::span<const cplx> c);
// sum of |a[i] - b[i]|^2
double abs2_diff_sum(std::span<const cplx> a, std::span<const cplx> b);
// sum of Re(conj(a[i]) * b[i])
double dot_real(std::span<const cplx> a, std::span<const cplx> b);
// sum of |x[i]|
double abs_sum(std::span<const double> x);

// Serial reference implementations (same contracts, straight loops).
namespace ref {
void apply_multiplier(std::span<cplx> y, std::span<const double> m);
void scale(std::span<cplx> y, double s);
void axpy(std::span<cplx> y, double a, std::span<const cplx> x);
void axpy_multiplier(std::span<cplx> y, std::span<const double> m,
                     std::span<const cplx> x);
void stage_pre(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k);
void stage_mid(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k);
void stage_end(std::span<cplx> out, std::span<const double> e2,
               std::span<const double> e1, std::span<const cplx> y, double a,
               std::span<const cplx> k);
void rk4_combine(std::span<cplx> y, double dt, std::span<const double> e1,
                 std::span<const double> e2, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4);
void cross_pointwise(std::span<const double> ax, std::span<const double> ay,
                     std::span<const double> az, std::span<const double> bx,
                     std::span<const double> by, std::span<const double> bz,
                     std::span<double> ox, std::span<double> oy,
                     std::span<double> oz);
void mul_pointwise(std::span<double> out, std::span<const double> a,
                   std::span<const double> b);
void fma_pointwise(std::span<double> acc, std::span<const double> a,
                   std::span<const double> b);
void curl_modes(int n, std::span<const cplx> vx, std::span<const cplx> vy,
                std::span<const cplx> vz, std::span<cplx> ox,
                std::span<cplx> oy, std::span<cplx> oz);
void divergence_modes(int n, std::span<const cplx> vx,
                      std::span<const cplx> vy, std::span<const cplx> vz,
                      std::span<cplx> out);
void leray_modes(int n, std::span<cplx> vx, std::span<cplx> vy,
                 std::span<cplx> vz);
void derivative_modes(int n, int axis, std::span<const cplx> f,
                      std::span<cplx> out);
double max_abs(std::span<const double> x);
double max_abs_cplx(std::span<const cplx> x);
bool all_finite(std::span<const cplx> x);
double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w);
double abs2_sum(std::span<const cplx> c);
double abs2_diff_sum(std::span<const cplx> a, std::span<const cplx> b);
double dot_real(std::span<const cplx> a, std::span<const cplx> b);
double abs_sum(std::span<const double> x);
}  // namespace ref

}  // namespace hmhd::kernels
