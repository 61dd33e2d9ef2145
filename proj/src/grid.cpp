#include "hmhd/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hmhd {

Grid::Grid(int n) : n_(n) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw std::invalid_argument("Grid: n must be a power of two >= 8");
    k2_.resize(size());
    mask_.resize(size());
    const int cut = dealias_cutoff();
    std::size_t i = 0;
    for (int ix = 0; ix < n_; ++ix) {
        const int kx = wavenumber(ix);
        for (int iy = 0; iy < n_; ++iy) {
            const int ky = wavenumber(iy);
            for (int iz = 0; iz < n_; ++iz, ++i) {
                const int kz = wavenumber(iz);
                k2_[i] = double(kx) * kx + double(ky) * ky + double(kz) * kz;
                mask_[i] = (std::abs(kx) <= cut && std::abs(ky) <= cut &&
                            std::abs(kz) <= cut)
                               ? 1
                               : 0;
            }
        }
    }
}

std::shared_ptr<const Grid> Grid::make(int n) {
    return std::make_shared<const Grid>(n);
}

}  // namespace hmhd
