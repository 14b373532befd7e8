#pragma once

#include <cstddef>
#include <vector>

#include "tfq/sequence.hpp"

namespace tfq {

// Unitary DFT on Z_N: (F f)(k) = N^{-1/2} sum_y f(y) e^{-2 pi i y k / N},
// standing in for the (2 pi)^{-d/2}-normalized Fourier transform. FFTW
// backend with cached plans; any N. Not thread safe (plan cache).
void dft(cplx* data, std::size_t n, bool inverse);
void dft(std::vector<cplx>& data, bool inverse);

// Unitary 2-d DFT on Z_{n0} x Z_{n1}, row-major data.
void dft_2d(cplx* data, std::size_t n0, std::size_t n1, bool inverse);
void dft_2d(std::vector<cplx>& data, std::size_t n0, std::size_t n1,
            bool inverse);

// Signed frequency representative in [-n/2, n/2).
inline std::int64_t signed_index(std::size_t k, std::size_t n) {
  const auto kk = static_cast<std::int64_t>(k);
  const auto nn = static_cast<std::int64_t>(n);
  return 2 * kk < nn ? kk : kk - nn;
}

}  // namespace tfq
