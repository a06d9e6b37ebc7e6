#pragma once

#include <complex>
#include <cstddef>

namespace accel::detail {

// Exponentiation by squaring; exact for zero bases and O(log n).
template <typename T>
T ipow(T base, std::size_t n) {
  T result{1};
  while (n > 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

}  // namespace accel::detail
