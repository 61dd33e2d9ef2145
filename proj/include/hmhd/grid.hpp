#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "hmhd/types.hpp"

namespace hmhd {

/// Periodic box [0, 2pi)^3 sampled at n points per dimension, so wavenumbers
/// are the integer triples with components in [-n/2, n/2). Storage is row
/// major with z fastest. n must be a power of two and >= 8.
class Grid {
  public:
    explicit Grid(int n);

    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    /// 2/3-rule cutoff: modes with any |k_i| > cutoff are dealiased away.
    int dealias_cutoff() const { return n_ / 3; }

    /// Wavenumber carried by storage index i in [0, n).
    int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n_ + iy) * n_ + iz;
    }
    /// Index of wavenumber triple (kx, ky, kz); negative components wrap.
    std::size_t index_k(int kx, int ky, int kz) const {
        auto w = [this](int k) { return k < 0 ? k + n_ : k; };
        return index(w(kx), w(ky), w(kz));
    }

    /// |k|^2 per mode.
    std::span<const double> k2() const { return k2_; }
    /// 1 on retained modes, 0 on dealiased ones.
    std::span<const std::uint8_t> dealias_mask() const { return mask_; }

    bool operator==(const Grid& o) const { return n_ == o.n_; }

    static std::shared_ptr<const Grid> make(int n);

  private:
    int n_;
    aligned_vector<double> k2_;
    aligned_vector<std::uint8_t> mask_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace hmhd
