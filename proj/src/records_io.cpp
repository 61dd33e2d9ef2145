#include "hmhd/records_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmhd {

namespace {
constexpr const char* header =
    "t,energy_u,energy_b,hm_u,hm_b,x,a,besov_omega,linf_u,linf_b,linf_grad_b,"
    "div_u_max,div_b_max,diss_u,diss_b";
}

void write_records(const std::vector<DiagnosticsRecord>& records,
                   const std::string& path) {
    if (records.empty())
        throw std::invalid_argument("write_records: empty record list");
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("write_records: cannot open " + path);
    std::fprintf(f, "%s\n", header);
    for (const auto& r : records) {
        std::fprintf(f,
                     "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                     "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                     r.t, r.energy_u, r.energy_b, r.hm_u, r.hm_b, r.x_of_t,
                     r.a_of_t, r.besov_omega, r.linf_u, r.linf_b, r.linf_grad_b,
                     r.div_u_max, r.div_b_max, r.diss_u, r.diss_b);
    }
    if (std::fclose(f) != 0)
        throw std::runtime_error("write_records: write failed on " + path);
}

std::vector<DiagnosticsRecord> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_records: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error("read_records: bad header in " + path);
    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double v[15];
        char comma;
        for (int i = 0; i < 15; ++i) {
            if (!(ss >> v[i])) throw std::runtime_error("read_records: bad row");
            if (i < 14 && !(ss >> comma))
                throw std::runtime_error("read_records: bad row");
        }
        DiagnosticsRecord r;
        r.t = v[0];
        r.energy_u = v[1];
        r.energy_b = v[2];
        r.hm_u = v[3];
        r.hm_b = v[4];
        r.x_of_t = v[5];
        r.a_of_t = v[6];
        r.besov_omega = v[7];
        r.linf_u = v[8];
        r.linf_b = v[9];
        r.linf_grad_b = v[10];
        r.div_u_max = v[11];
        r.div_b_max = v[12];
        r.diss_u = v[13];
        r.diss_b = v[14];
        out.push_back(r);
    }
    return out;
}

}  // namespace hmhd
