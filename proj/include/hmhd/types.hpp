#pragma once

#include <complex>
#include <cstdlib>
#include <new>
#include <vector>

namespace hmhd {

using cplx = std::complex<double>;

/// Allocator with 64-byte alignment so coefficient buffers satisfy the
/// SIMD alignment the FFT plans were created with.
template <class T>
struct AlignedAlloc {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAlloc() noexcept = default;
    template <class U>
    AlignedAlloc(const AlignedAlloc<U>&) noexcept {}

    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        void* p = std::aligned_alloc(alignment, ((n * sizeof(T) + alignment - 1) / alignment) * alignment);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <class U>
    bool operator==(const AlignedAlloc<U>&) const noexcept { return true; }
};

template <class T>
using aligned_vector = std::vector<T, AlignedAlloc<T>>;

/// Variant whose vector skips value-initialization on resize; for buffers
/// that are fully overwritten right after construction.
template <class T>
struct AlignedAllocNoInit : AlignedAlloc<T> {
    template <class U>
    struct rebind {
        using other = AlignedAllocNoInit<U>;
    };
    template <class U>
    void construct(U*) noexcept {}
    template <class U, class... Args>
    void construct(U* p, Args&&... args) {
        ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
    }
};

template <class T>
using uninit_vector = std::vector<T, AlignedAllocNoInit<T>>;

}  // namespace hmhd
