#pragma once

#include <string>

#include "hmhd/hall_mhd.hpp"

namespace hmhd {

/// Binary state snapshot, little endian:
///   magic "HMHD" | format version u32 | n u32 | t f64 |
///   u_x, u_y, u_z, b_x, b_y, b_z as n^3 interleaved (re, im) f64 pairs in
///   row-major wavenumber order.
/// save then load reproduces the coefficients bit for bit.
inline constexpr std::uint32_t checkpoint_version = 1;

void save_checkpoint(const State& s, const std::string& path);

/// Load onto the given grid; rejects bad magic, short files, version and
/// grid mismatches.
State load_checkpoint(const std::string& path, GridPtr g);

/// Reads just the grid size recorded in a checkpoint header.
int checkpoint_grid_size(const std::string& path);

}  // namespace hmhd
