#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace llg {

using cplx = std::complex<double>;

inline constexpr std::size_t kBufferAlignment = 64;

/// Allocator handing out 64-byte aligned storage so that FFT plans and the
/// AVX2 kernels see the same alignment for every buffer.
template <class T>
struct AlignedAllocator {
  using value_type = T;

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{kBufferAlignment}));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t{kBufferAlignment});
  }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

template <class T>
using aligned_vector = std::vector<T, AlignedAllocator<T>>;

}  // namespace llg
