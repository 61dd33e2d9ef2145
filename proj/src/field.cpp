#include "hmhd/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hmhd/fft.hpp"
#include "hmhd/kernels.hpp"

namespace hmhd {

SpectralField::SpectralField(GridPtr g) : grid_(std::move(g)) {
    data_.assign(grid_->size(), cplx{});
}

SpectralField SpectralField::uninit(GridPtr g) {
    SpectralField f;
    f.grid_ = std::move(g);
    f.data_.resize(f.grid_->size());
    return f;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_grid(grid(), o.grid());
    kernels::axpy(coeffs(), 1.0, o.coeffs());
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_same_grid(grid(), o.grid());
    kernels::axpy(coeffs(), -1.0, o.coeffs());
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    kernels::scale(coeffs(), s);
    return *this;
}

double SpectralField::hermitian_error() const {
    const int n = grid_->n();
    double worst = 0.0;
    for (int ix = 0; ix < n; ++ix) {
        const int cx = ix == 0 ? 0 : n - ix;
        for (int iy = 0; iy < n; ++iy) {
            const int cy = iy == 0 ? 0 : n - iy;
            for (int iz = 0; iz < n; ++iz) {
                const int cz = iz == 0 ? 0 : n - iz;
                const cplx a = data_[grid_->index(ix, iy, iz)];
                const cplx b = data_[grid_->index(cx, cy, cz)];
                worst = std::max(worst, std::abs(b - std::conj(a)));
            }
        }
    }
    return worst;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    x *= s; y *= s; z *= s;
    return *this;
}

double VectorField::hermitian_error() const {
    return std::max({x.hermitian_error(), y.hermitian_error(), z.hermitian_error()});
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

namespace {
// FFT staging scratch, per thread; the intermediate complex lattice never
// outlives the call. Two independent slots so a multiplier can be staged
// while the FFT output uses the other.
uninit_vector<cplx>& scratch_lattice(std::size_t size, int slot = 0) {
    static thread_local uninit_vector<cplx> buf[2];
    if (buf[slot].size() != size) buf[slot].resize(size);
    return buf[slot];
}

// Extract the real samples of an inverse transform; the imaginary residual is
// zero exactly when the coefficients were Hermitian, so it doubles as a
// corruption tripwire.
aligned_vector<double> real_part_checked(std::span<const cplx> buf) {
    aligned_vector<double> out(buf.size());
    double max_im = 0.0, max_re = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i) {
        out[i] = buf[i].real();
        max_re = std::max(max_re, std::abs(buf[i].real()));
        max_im = std::max(max_im, std::abs(buf[i].imag()));
    }
    if (max_im > 1e-9 * std::max(1.0, max_re))
        throw std::runtime_error("to_physical: non-Hermitian coefficients (corrupted state)");
    return out;
}
}  // namespace

SpectralField from_physical(GridPtr g, std::span<const double> samples) {
    if (samples.size() != g->size())
        throw std::invalid_argument("from_physical: expected n^3 real samples");
    uninit_vector<cplx>& buf = scratch_lattice(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) buf[i] = samples[i];
    SpectralField f = SpectralField::uninit(std::move(g));
    fft::forward(f.grid().n(), {buf.data(), buf.size()}, f.coeffs());
    return f;
}

aligned_vector<double> to_physical(const SpectralField& f) {
    uninit_vector<cplx>& buf = scratch_lattice(f.grid().size());
    fft::inverse(f.grid().n(), f.coeffs(), {buf.data(), buf.size()});
    return real_part_checked({buf.data(), buf.size()});
}

aligned_vector<double> derivative_physical(const SpectralField& f, int axis) {
    if (axis < 0 || axis > 2)
        throw std::invalid_argument("derivative_physical: axis must be 0..2");
    const int n = f.grid().n();
    uninit_vector<cplx>& spec = scratch_lattice(f.grid().size(), 1);
    kernels::derivative_modes(n, axis, f.coeffs(), {spec.data(), spec.size()});
    uninit_vector<cplx>& buf = scratch_lattice(f.grid().size(), 0);
    fft::inverse(n, {spec.data(), spec.size()}, {buf.data(), buf.size()});
    return real_part_checked({buf.data(), buf.size()});
}

void require_hermitian(const SpectralField& f, double abs_tol) {
    if (f.hermitian_error() > abs_tol)
        throw std::invalid_argument("transform: input is not Hermitian");
}

void to_physical3(const VectorField& v, aligned_vector<double>& px,
                  aligned_vector<double>& py, aligned_vector<double>& pz) {
    aligned_vector<double>* out[3] = {&px, &py, &pz};
    bool corrupt = false;
#pragma omp parallel for schedule(static)
    for (int c = 0; c < 3; ++c) {
        try {
            *out[c] = to_physical(v.comp(c));
        } catch (const std::exception&) {
            corrupt = true;  // exceptions may not cross the parallel region
        }
    }
    if (corrupt)
        throw std::runtime_error("to_physical: non-Hermitian coefficients (corrupted state)");
}

VectorField from_physical3(GridPtr g, std::span<const double> px,
                           std::span<const double> py,
                           std::span<const double> pz) {
    VectorField v(g);
    std::span<const double> in[3] = {px, py, pz};
#pragma omp parallel for schedule(static)
    for (int c = 0; c < 3; ++c) v.comp(c) = from_physical(g, in[c]);
    return v;
}

}  // namespace hmhd
