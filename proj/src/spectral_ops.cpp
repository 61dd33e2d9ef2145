#include "hmhd/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "hmhd/kernels.hpp"

namespace hmhd {

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0..2");
    SpectralField out = SpectralField::uninit(f.grid_ptr());
    kernels::derivative_modes(f.grid().n(), axis, f.coeffs(), out.coeffs());
    return out;
}

VectorField curl(const VectorField& v) {
    VectorField out = VectorField::uninit(v.grid_ptr());
    kernels::curl_modes(v.grid().n(), v.x.coeffs(), v.y.coeffs(), v.z.coeffs(),
                        out.x.coeffs(), out.y.coeffs(), out.z.coeffs());
    return out;
}

SpectralField divergence(const VectorField& v) {
    SpectralField out = SpectralField::uninit(v.grid_ptr());
    kernels::divergence_modes(v.grid().n(), v.x.coeffs(), v.y.coeffs(),
                              v.z.coeffs(), out.coeffs());
    return out;
}

void leray_project_inplace(VectorField& v) {
    kernels::leray_modes(v.grid().n(), v.x.coeffs(), v.y.coeffs(), v.z.coeffs());
}

VectorField leray_project(const VectorField& v) {
    VectorField out = v;
    leray_project_inplace(out);
    return out;
}

namespace {
void apply_mask(SpectralField& f) {
    auto mask = f.grid().dealias_mask();
    auto c = f.coeffs();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        if (!mask[i]) c[i] = cplx(0.0, 0.0);
}
}  // namespace

void dealias_inplace(SpectralField& f) { apply_mask(f); }

void dealias_inplace(VectorField& v) {
    apply_mask(v.x);
    apply_mask(v.y);
    apply_mask(v.z);
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_inplace(out);
    return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
    if (s < 0.0) throw std::invalid_argument("fractional_laplacian: s must be >= 0");
    SpectralField out = f;
    if (s == 0.0) return out;  // identity, including the mean mode
    auto k2 = f.grid().k2();
    auto c = out.coeffs();
    const double half_s = 0.5 * s;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        c[i] *= k2[i] == 0.0 ? 0.0 : std::pow(k2[i], half_s);
    return out;
}

VectorField fractional_laplacian(const VectorField& v, double s) {
    VectorField out(v.grid_ptr());
    out.x = fractional_laplacian(v.x, s);
    out.y = fractional_laplacian(v.y, s);
    out.z = fractional_laplacian(v.z, s);
    return out;
}

VectorField cross_physical(const VectorField& a, const VectorField& b) {
    require_same_grid(a.grid(), b.grid());
    aligned_vector<double> ax, ay, az, bx, by, bz;
    to_physical3(a, ax, ay, az);
    to_physical3(b, bx, by, bz);
    aligned_vector<double> ox(ax.size()), oy(ax.size()), oz(ax.size());
    kernels::cross_pointwise(ax, ay, az, bx, by, bz, ox, oy, oz);
    VectorField out = from_physical3(a.grid_ptr(), ox, oy, oz);
    dealias_inplace(out);
    return out;
}

}  // namespace hmhd
