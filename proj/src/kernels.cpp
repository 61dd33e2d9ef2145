#include "hmhd/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace hmhd::kernels {

namespace {

// Deterministic parallel sum: fixed chunk boundaries, chunk partials
// combined in chunk order.
template <class ChunkFn>
double chunked_sum(std::size_t n, ChunkFn&& fn) {
    const std::ptrdiff_t nchunks =
        static_cast<std::ptrdiff_t>((n + reduce_chunk - 1) / reduce_chunk);
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * reduce_chunk;
        const std::size_t hi = std::min(n, lo + reduce_chunk);
        partial[static_cast<std::size_t>(c)] = fn(lo, hi);
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

inline int wn(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace

void apply_multiplier(std::span<cplx> y, std::span<const double> m) {
    assert(y.size() == m.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= m[i];
}

void scale(std::span<cplx> y, double s) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= s;
}

void axpy(std::span<cplx> y, double a, std::span<const cplx> x) {
    assert(y.size() == x.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_multiplier(std::span<cplx> y, std::span<const double> m,
                     std::span<const cplx> x) {
    assert(y.size() == m.size() && y.size() == x.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += m[i] * x[i];
}

void stage_pre(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k) {
    assert(out.size() == e.size() && out.size() == y.size() && out.size() == k.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = e[i] * (y[i] + a * k[i]);
}

void stage_mid(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k) {
    assert(out.size() == e.size() && out.size() == y.size() && out.size() == k.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = e[i] * y[i] + a * k[i];
}

void stage_end(std::span<cplx> out, std::span<const double> e2,
               std::span<const double> e1, std::span<const cplx> y, double a,
               std::span<const cplx> k) {
    assert(out.size() == e2.size() && out.size() == e1.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = e2[i] * y[i] + a * e1[i] * k[i];
}

void rk4_combine(std::span<cplx> y, double dt, std::span<const double> e1,
                 std::span<const double> e2, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
    const double c = dt / 6.0;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        y[i] = e2[i] * y[i] + c * (e2[i] * k1[i] + 2.0 * e1[i] * (k2[i] + k3[i]) + k4[i]);
}

void cross_pointwise(std::span<const double> ax, std::span<const double> ay,
                     std::span<const double> az, std::span<const double> bx,
                     std::span<const double> by, std::span<const double> bz,
                     std::span<double> ox, std::span<double> oy,
                     std::span<double> oz) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ox.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        ox[i] = ay[i] * bz[i] - az[i] * by[i];
        oy[i] = az[i] * bx[i] - ax[i] * bz[i];
        oz[i] = ax[i] * by[i] - ay[i] * bx[i];
    }
}

void mul_pointwise(std::span<double> out, std::span<const double> a,
                   std::span<const double> b) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void fma_pointwise(std::span<double> acc, std::span<const double> a,
                   std::span<const double> b) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(acc.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) acc[i] += a[i] * b[i];
}

void curl_modes(int n, std::span<const cplx> vx, std::span<const cplx> vy,
                std::span<const cplx> vz, std::span<cplx> ox,
                std::span<cplx> oy, std::span<cplx> oz) {
    const cplx iu(0.0, 1.0);
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double kx = wn(ix, n), ky = wn(iy, n);
            std::size_t base = (static_cast<std::size_t>(ix) * n + iy) * n;
            for (int iz = 0; iz < n; ++iz) {
                const double kz = wn(iz, n);
                const std::size_t i = base + iz;
                ox[i] = iu * (ky * vz[i] - kz * vy[i]);
                oy[i] = iu * (kz * vx[i] - kx * vz[i]);
                oz[i] = iu * (kx * vy[i] - ky * vx[i]);
            }
        }
}

void divergence_modes(int n, std::span<const cplx> vx,
                      std::span<const cplx> vy, std::span<const cplx> vz,
                      std::span<cplx> out) {
    const cplx iu(0.0, 1.0);
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double kx = wn(ix, n), ky = wn(iy, n);
            std::size_t base = (static_cast<std::size_t>(ix) * n + iy) * n;
            for (int iz = 0; iz < n; ++iz) {
                const double kz = wn(iz, n);
                const std::size_t i = base + iz;
                out[i] = iu * (kx * vx[i] + ky * vy[i] + kz * vz[i]);
            }
        }
}

void leray_modes(int n, std::span<cplx> vx, std::span<cplx> vy,
                 std::span<cplx> vz) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double kx = wn(ix, n), ky = wn(iy, n);
            std::size_t base = (static_cast<std::size_t>(ix) * n + iy) * n;
            for (int iz = 0; iz < n; ++iz) {
                const double kz = wn(iz, n);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const std::size_t i = base + iz;
                const cplx kv = (kx * vx[i] + ky * vy[i] + kz * vz[i]) / k2;
                vx[i] -= kx * kv;
                vy[i] -= ky * kv;
                vz[i] -= kz * kv;
            }
        }
}

void derivative_modes(int n, int axis, std::span<const cplx> f,
                      std::span<cplx> out) {
    const cplx iu(0.0, 1.0);
#pragma omp parallel for collapse(2) schedule(static)
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double kx = wn(ix, n), ky = wn(iy, n);
            std::size_t base = (static_cast<std::size_t>(ix) * n + iy) * n;
            for (int iz = 0; iz < n; ++iz) {
                const double k = axis == 0 ? kx : (axis == 1 ? ky : double(wn(iz, n)));
                const std::size_t i = base + iz;
                out[i] = iu * k * f[i];
            }
        }
}

double max_abs(std::span<const double> x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double max_abs_cplx(std::span<const cplx> x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

bool all_finite(std::span<const cplx> x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    int bad = 0;
#pragma omp parallel for schedule(static) reduction(| : bad)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        bad |= !std::isfinite(x[i].real()) || !std::isfinite(x[i].imag());
    return !bad;
}

double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w) {
    assert(c.size() == w.size());
    return chunked_sum(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += w[i] * std::norm(c[i]);
        return s;
    });
}

double abs2_sum(std::span<const cplx> c) {
    return chunked_sum(c.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(c[i]);
        return s;
    });
}

double abs2_diff_sum(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i] - b[i]);
        return s;
    });
}

double dot_real(std::span<const cplx> a, std::span<const cplx> b) {
    assert(a.size() == b.size());
    return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        return s;
    });
}

double abs_sum(std::span<const double> x) {
    return chunked_sum(x.size(), [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::abs(x[i]);
        return s;
    });
}

// ---------------------------------------------------------------------------
// Serial reference implementations.
// ---------------------------------------------------------------------------

namespace ref {

void apply_multiplier(std::span<cplx> y, std::span<const double> m) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] *= m[i];
}

void scale(std::span<cplx> y, double s) {
    for (auto& v : y) v *= s;
}

void axpy(std::span<cplx> y, double a, std::span<const cplx> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void axpy_multiplier(std::span<cplx> y, std::span<const double> m,
                     std::span<const cplx> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += m[i] * x[i];
}

void stage_pre(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e[i] * (y[i] + a * k[i]);
}

void stage_mid(std::span<cplx> out, std::span<const double> e,
               std::span<const cplx> y, double a, std::span<const cplx> k) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e[i] * y[i] + a * k[i];
}

void stage_end(std::span<cplx> out, std::span<const double> e2,
               std::span<const double> e1, std::span<const cplx> y, double a,
               std::span<const cplx> k) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = e2[i] * y[i] + a * e1[i] * k[i];
}

void rk4_combine(std::span<cplx> y, double dt, std::span<const double> e1,
                 std::span<const double> e2, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4) {
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = e2[i] * y[i] + c * (e2[i] * k1[i] + 2.0 * e1[i] * (k2[i] + k3[i]) + k4[i]);
}

void cross_pointwise(std::span<const double> ax, std::span<const double> ay,
                     std::span<const double> az, std::span<const double> bx,
                     std::span<const double> by, std::span<const double> bz,
                     std::span<double> ox, std::span<double> oy,
                     std::span<double> oz) {
    for (std::size_t i = 0; i < ox.size(); ++i) {
        ox[i] = ay[i] * bz[i] - az[i] * by[i];
        oy[i] = az[i] * bx[i] - ax[i] * bz[i];
        oz[i] = ax[i] * by[i] - ay[i] * bx[i];
    }
}

void mul_pointwise(std::span<double> out, std::span<const double> a,
                   std::span<const double> b) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void fma_pointwise(std::span<double> acc, std::span<const double> a,
                   std::span<const double> b) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

void curl_modes(int n, std::span<const cplx> vx, std::span<const cplx> vy,
                std::span<const cplx> vz, std::span<cplx> ox,
                std::span<cplx> oy, std::span<cplx> oz) {
    const cplx iu(0.0, 1.0);
    std::size_t i = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++i) {
                const double kx = wn(ix, n), ky = wn(iy, n), kz = wn(iz, n);
                ox[i] = iu * (ky * vz[i] - kz * vy[i]);
                oy[i] = iu * (kz * vx[i] - kx * vz[i]);
                oz[i] = iu * (kx * vy[i] - ky * vx[i]);
            }
}

void divergence_modes(int n, std::span<const cplx> vx,
                      std::span<const cplx> vy, std::span<const cplx> vz,
                      std::span<cplx> out) {
    const cplx iu(0.0, 1.0);
    std::size_t i = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++i) {
                const double kx = wn(ix, n), ky = wn(iy, n), kz = wn(iz, n);
                out[i] = iu * (kx * vx[i] + ky * vy[i] + kz * vz[i]);
            }
}

void leray_modes(int n, std::span<cplx> vx, std::span<cplx> vy,
                 std::span<cplx> vz) {
    std::size_t i = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++i) {
                const double kx = wn(ix, n), ky = wn(iy, n), kz = wn(iz, n);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;
                const cplx kv = (kx * vx[i] + ky * vy[i] + kz * vz[i]) / k2;
                vx[i] -= kx * kv;
                vy[i] -= ky * kv;
                vz[i] -= kz * kv;
            }
}

void derivative_modes(int n, int axis, std::span<const cplx> f,
                      std::span<cplx> out) {
    const cplx iu(0.0, 1.0);
    std::size_t i = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++i) {
                const int k = axis == 0 ? wn(ix, n) : (axis == 1 ? wn(iy, n) : wn(iz, n));
                out[i] = iu * double(k) * f[i];
            }
}

double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_cplx(std::span<const cplx> x) {
    double m = 0.0;
    for (const cplx& v : x) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(std::span<const cplx> x) {
    for (const cplx& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double weighted_abs2_sum(std::span<const cplx> c, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += w[i] * std::norm(c[i]);
    return s;
}

double abs2_sum(std::span<const cplx> c) {
    double s = 0.0;
    for (const cplx& v : c) s += std::norm(v);
    return s;
}

double abs2_diff_sum(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return s;
}

double dot_real(std::span<const cplx> a, std::span<const cplx> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return s;
}

double abs_sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

}  // namespace ref

}  // namespace hmhd::kernels
