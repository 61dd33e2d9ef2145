#pragma once

#include "hmhd/field.hpp"

namespace hmhd {

/// d/dx_axis as the i*k_axis multiplier.
SpectralField derivative(const SpectralField& f, int axis);

/// (curl v)^(k) = i k x v^(k); the output is solenoidal.
VectorField curl(const VectorField& v);

/// div v as the scalar i k . v^(k).
SpectralField divergence(const VectorField& v);

/// Projection onto divergence-free fields: v^ <- v^ - k (k.v^)/|k|^2 for
/// k != 0; the mean mode is untouched.
void leray_project_inplace(VectorField& v);
VectorField leray_project(const VectorField& v);

/// 2/3-rule truncation: zero every mode with any |k_i| > floor(n/3).
void dealias_inplace(SpectralField& f);
void dealias_inplace(VectorField& v);
SpectralField dealias(const SpectralField& f);

/// Lambda^s = (-Laplacian)^{s/2} as the |k|^s multiplier; the k = 0 mode maps
/// to 0 for s > 0 and is unchanged for s = 0. s < 0 is rejected.
SpectralField fractional_laplacian(const SpectralField& f, double s);
VectorField fractional_laplacian(const VectorField& v, double s);

/// Pointwise physical-space cross product a x b, dealiased.
VectorField cross_physical(const VectorField& a, const VectorField& b);

}  // namespace hmhd
