#pragma once

#include <span>

#include "hmhd/grid.hpp"
#include "hmhd/types.hpp"

namespace hmhd {

/// One scalar field as complex Fourier coefficients on the full n^3 lattice,
/// normalized so that f(x) = sum_k coeff(k) exp(i k.x). Fields representing
/// real data are Hermitian: coeff(-k) = conj(coeff(k)).
class SpectralField {
  public:
    SpectralField() = default;
    /// Zero field on g.
    explicit SpectralField(GridPtr g);
    /// Storage without zero fill, for outputs that overwrite every mode.
    static SpectralField uninit(GridPtr g);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    std::span<cplx> coeffs() { return {data_.data(), data_.size()}; }
    std::span<const cplx> coeffs() const { return {data_.data(), data_.size()}; }

    cplx& at(int kx, int ky, int kz) { return data_[grid_->index_k(kx, ky, kz)]; }
    const cplx& at(int kx, int ky, int kz) const {
        return data_[grid_->index_k(kx, ky, kz)];
    }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);

    /// max_k |coeff(-k) - conj(coeff(k))|; 0 for fields of real data.
    double hermitian_error() const;

  private:
    GridPtr grid_;
    uninit_vector<cplx> data_;
};

/// Three scalar fields on a shared grid forming a vector field.
struct VectorField {
    SpectralField x, y, z;

    VectorField() = default;
    explicit VectorField(GridPtr g) : x(g), y(g), z(g) {}
    static VectorField uninit(GridPtr g) {
        VectorField v;
        v.x = SpectralField::uninit(g);
        v.y = SpectralField::uninit(g);
        v.z = SpectralField::uninit(std::move(g));
        return v;
    }

    const Grid& grid() const { return x.grid(); }
    const GridPtr& grid_ptr() const { return x.grid_ptr(); }

    SpectralField& comp(int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const SpectralField& comp(int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);

    double hermitian_error() const;
};

void require_same_grid(const Grid& a, const Grid& b);

// ---- transforms -----------------------------------------------------------

/// Forward transform of n^3 real samples (the public `transform` entry).
SpectralField from_physical(GridPtr g, std::span<const double> samples);

/// Inverse transform to real samples. The imaginary residual of the backward
/// FFT is a free corruption tripwire: it is zero exactly when the input is
/// Hermitian, so inputs with max|imag| > 1e-9 * max(1, max|real|) are
/// rejected as corrupted state.
aligned_vector<double> to_physical(const SpectralField& f);

/// Strict contract check used by the public transform surface and the tests:
/// rejects fields whose Hermitian asymmetry exceeds `abs_tol` (absolute).
void require_hermitian(const SpectralField& f, double abs_tol = 1e-13);

/// Physical samples of d/dx_axis f; same arithmetic as
/// to_physical(derivative(f, axis)) without the spectral intermediate.
aligned_vector<double> derivative_physical(const SpectralField& f, int axis);

/// Component transforms batched across OpenMP threads.
void to_physical3(const VectorField& v, aligned_vector<double>& px,
                  aligned_vector<double>& py, aligned_vector<double>& pz);
VectorField from_physical3(GridPtr g, std::span<const double> px,
                           std::span<const double> py,
                           std::span<const double> pz);

}  // namespace hmhd
