#pragma once

#include <span>

#include "hmhd/types.hpp"

namespace hmhd::fft {

// FFTW-backed complex transforms on the n^3 lattice, row major, z fastest.
//
// Conventions: with f(x) = sum_k fhat(k) exp(i k.x),
//   forward  : samples -> coefficients, applies the 1/n^3 normalization;
//   inverse  : coefficients -> samples, unnormalized FFTW backward.
//
// Plans are created once per n with FFTW_ESTIMATE (deterministic plan choice
// run to run) and cached. fftw_execute_dft is thread safe, so batched
// transforms may run concurrently; planner access is serialized internally.
// Buffers must come from aligned_vector (64-byte alignment) to hit the SIMD
// plans; an unaligned fallback plan covers everything else.

void forward(int n, std::span<const cplx> in, std::span<cplx> out);
void inverse(int n, std::span<const cplx> in, std::span<cplx> out);

// Real-data transforms on the packed half spectrum (dims n x n x (n/2+1),
// z fastest). Roughly twice the speed of the full complex transforms; the
// physical-space hops of the solver go through these.
std::size_t half_size(int n);
/// samples -> unnormalized half spectrum (the 1/n^3 belongs to the caller's
/// unpack pass). Input is preserved.
void forward_r2c(int n, std::span<const double> in, std::span<cplx> half);
/// half spectrum -> samples; the half input is clobbered (FFTW c2r).
void inverse_c2r(int n, std::span<cplx> half, std::span<double> out);

}  // namespace hmhd::fft
