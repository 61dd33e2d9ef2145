#include "hmhd/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace hmhd {

// The format is defined little endian; this implementation targets
// little-endian hosts and writes native doubles/u32s directly.
static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace {

constexpr char magic[4] = {'H', 'M', 'H', 'D'};

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_exact(std::FILE* f, const void* p, std::size_t bytes) {
    if (std::fwrite(p, 1, bytes, f) != bytes)
        throw std::runtime_error("checkpoint: write failed");
}

void read_exact(std::FILE* f, void* p, std::size_t bytes) {
    if (std::fread(p, 1, bytes, f) != bytes)
        throw std::runtime_error("checkpoint: short read");
}

}  // namespace

void save_checkpoint(const State& s, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("checkpoint: cannot open " + path);
    write_exact(f.get(), magic, 4);
    const std::uint32_t ver = checkpoint_version;
    const std::uint32_t n = static_cast<std::uint32_t>(s.grid().n());
    write_exact(f.get(), &ver, 4);
    write_exact(f.get(), &n, 4);
    write_exact(f.get(), &s.t, 8);
    const VectorField* fields[2] = {&s.u, &s.b};
    for (const VectorField* v : fields)
        for (int c = 0; c < 3; ++c) {
            auto span = v->comp(c).coeffs();
            write_exact(f.get(), span.data(), span.size() * sizeof(cplx));
        }
}

int checkpoint_grid_size(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("checkpoint: cannot open " + path);
    char m[4];
    read_exact(f.get(), m, 4);
    if (std::memcmp(m, magic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic");
    std::uint32_t ver = 0, n = 0;
    read_exact(f.get(), &ver, 4);
    if (ver != checkpoint_version)
        throw std::runtime_error("checkpoint: version mismatch");
    read_exact(f.get(), &n, 4);
    return static_cast<int>(n);
}

State load_checkpoint(const std::string& path, GridPtr g) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("checkpoint: cannot open " + path);
    char m[4];
    read_exact(f.get(), m, 4);
    if (std::memcmp(m, magic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic");
    std::uint32_t ver = 0, n = 0;
    read_exact(f.get(), &ver, 4);
    if (ver != checkpoint_version)
        throw std::runtime_error("checkpoint: version mismatch");
    read_exact(f.get(), &n, 4);
    if (static_cast<int>(n) != g->n())
        throw std::runtime_error("checkpoint: grid mismatch");
    State s(std::move(g));
    read_exact(f.get(), &s.t, 8);
    VectorField* fields[2] = {&s.u, &s.b};
    for (VectorField* v : fields)
        for (int c = 0; c < 3; ++c) {
            auto span = v->comp(c).coeffs();
            read_exact(f.get(), span.data(), span.size() * sizeof(cplx));
        }
    // trailing garbage would mean a corrupted writer
    char extra;
    if (std::fread(&extra, 1, 1, f.get()) == 1)
        throw std::runtime_error("checkpoint: trailing bytes");
    return s;
}

}  // namespace hmhd
