#include "hmhd/fft.hpp"

#include <fftw3.h>
#include <malloc.h>

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hmhd/kernels.hpp"

namespace hmhd::fft {

namespace {

// The solver cycles many n^3-sized buffers per right-hand-side evaluation.
// glibc's default trim/mmap thresholds (128 KB) hand such blocks back to the
// kernel on every free, so each reuse pays page faults and zeroing. Raising
// the thresholds keeps the arena warm; measured ~2x on full steps.
const bool malloc_tuned = [] {
    mallopt(M_TRIM_THRESHOLD, 1 << 28);
    mallopt(M_MMAP_THRESHOLD, 1 << 28);
    return true;
}();

struct PlanSet {
    fftw_plan fwd_aligned = nullptr;
    fftw_plan bwd_aligned = nullptr;
    fftw_plan fwd_any = nullptr;
    fftw_plan bwd_any = nullptr;
    fftw_plan r2c_aligned = nullptr;
    fftw_plan c2r_aligned = nullptr;
    fftw_plan r2c_any = nullptr;
    fftw_plan c2r_any = nullptr;
    int alignment_class = 0;
};

class PlanCache {
  public:
    static const PlanSet& get(int n) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mutex_);
        auto it = cache.plans_.find(n);
        if (it != cache.plans_.end()) return it->second;

        PlanSet ps;
        aligned_vector<cplx> a(static_cast<std::size_t>(n) * n * n);
        aligned_vector<cplx> b(a.size());
        aligned_vector<double> r(a.size());
        auto* ap = reinterpret_cast<fftw_complex*>(a.data());
        auto* bp = reinterpret_cast<fftw_complex*>(b.data());
        ps.fwd_aligned = fftw_plan_dft_3d(n, n, n, ap, bp, FFTW_FORWARD, FFTW_ESTIMATE);
        ps.bwd_aligned = fftw_plan_dft_3d(n, n, n, ap, bp, FFTW_BACKWARD, FFTW_ESTIMATE);
        ps.fwd_any = fftw_plan_dft_3d(n, n, n, ap, bp, FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
        ps.bwd_any = fftw_plan_dft_3d(n, n, n, ap, bp, FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
        ps.r2c_aligned = fftw_plan_dft_r2c_3d(n, n, n, r.data(), ap, FFTW_ESTIMATE);
        ps.c2r_aligned = fftw_plan_dft_c2r_3d(n, n, n, ap, r.data(), FFTW_ESTIMATE);
        ps.r2c_any = fftw_plan_dft_r2c_3d(n, n, n, r.data(), ap,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        ps.c2r_any = fftw_plan_dft_c2r_3d(n, n, n, ap, r.data(),
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        ps.alignment_class = fftw_alignment_of(reinterpret_cast<double*>(ap));
        if (!ps.fwd_aligned || !ps.bwd_aligned || !ps.fwd_any || !ps.bwd_any ||
            !ps.r2c_aligned || !ps.c2r_aligned || !ps.r2c_any || !ps.c2r_any)
            throw std::runtime_error("fftw plan creation failed");
        return cache.plans_.emplace(n, ps).first->second;
    }

  private:
    std::mutex mutex_;
    std::map<int, PlanSet> plans_;
};

void execute(int n, std::span<const cplx> in, std::span<cplx> out, bool forward_dir) {
    const std::size_t expect = static_cast<std::size_t>(n) * n * n;
    if (in.size() != expect || out.size() != expect)
        throw std::invalid_argument("fft: buffer size does not match grid");
    const PlanSet& ps = PlanCache::get(n);
    // Out-of-place c2c preserves the input; the cast is for the C API only.
    auto* ip = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* op = reinterpret_cast<fftw_complex*>(out.data());
    const bool aligned =
        fftw_alignment_of(reinterpret_cast<double*>(ip)) == ps.alignment_class &&
        fftw_alignment_of(reinterpret_cast<double*>(op)) == ps.alignment_class;
    fftw_plan plan = forward_dir ? (aligned ? ps.fwd_aligned : ps.fwd_any)
                                 : (aligned ? ps.bwd_aligned : ps.bwd_any);
    fftw_execute_dft(plan, ip, op);
}

}  // namespace

void forward(int n, std::span<const cplx> in, std::span<cplx> out) {
    execute(n, in, out, true);
    kernels::scale(out, 1.0 / (static_cast<double>(n) * n * n));
}

void inverse(int n, std::span<const cplx> in, std::span<cplx> out) {
    execute(n, in, out, false);
}

std::size_t half_size(int n) {
    return static_cast<std::size_t>(n) * n * (n / 2 + 1);
}

void forward_r2c(int n, std::span<const double> in, std::span<cplx> half) {
    if (in.size() != static_cast<std::size_t>(n) * n * n || half.size() != half_size(n))
        throw std::invalid_argument("fft: buffer size does not match grid");
    const PlanSet& ps = PlanCache::get(n);
    auto* ip = const_cast<double*>(in.data());  // out-of-place r2c preserves input
    auto* op = reinterpret_cast<fftw_complex*>(half.data());
    const bool aligned =
        fftw_alignment_of(ip) == ps.alignment_class &&
        fftw_alignment_of(reinterpret_cast<double*>(op)) == ps.alignment_class;
    fftw_execute_dft_r2c(aligned ? ps.r2c_aligned : ps.r2c_any, ip, op);
}

void inverse_c2r(int n, std::span<cplx> half, std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(n) * n * n || half.size() != half_size(n))
        throw std::invalid_argument("fft: buffer size does not match grid");
    const PlanSet& ps = PlanCache::get(n);
    auto* ip = reinterpret_cast<fftw_complex*>(half.data());
    const bool aligned =
        fftw_alignment_of(reinterpret_cast<double*>(ip)) == ps.alignment_class &&
        fftw_alignment_of(out.data()) == ps.alignment_class;
    fftw_execute_dft_c2r(aligned ? ps.c2r_aligned : ps.c2r_any, ip, out.data());
}

}  // namespace hmhd::fft
