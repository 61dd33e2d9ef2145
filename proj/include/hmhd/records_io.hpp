#pragma once

#include <string>
#include <vector>

#include "hmhd/diagnostics.hpp"

namespace hmhd {

/// CSV column order (and the exact header line, comma separated):
/// t,energy_u,energy_b,hm_u,hm_b,x,a,besov_omega,linf_u,linf_b,linf_grad_b,
/// div_u_max,div_b_max,diss_u,diss_b
/// Values are written with full double precision; the file is newline
/// terminated. Rejects empty record lists.
void write_records(const std::vector<DiagnosticsRecord>& records,
                   const std::string& path);

/// Parses a file written by write_records (used by the round-trip tests and
/// the resume comparison).
std::vector<DiagnosticsRecord> read_records(const std::string& path);

}  // namespace hmhd
