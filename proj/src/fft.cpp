#include "tfq/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace tfq {

namespace {

// One cached FFTW plan per (shape, direction), executed through private
// aligned buffers so caller arrays need no special alignment.
struct PlanEntry {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::size_t size = 0;

  ~PlanEntry() {
    if (plan) fftw_destroy_plan(plan);
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

using PlanKey = std::tuple<std::size_t, std::size_t, int>;  // n0, n1 (0 = 1d), sign

PlanEntry& get_plan(std::size_t n0, std::size_t n1, int sign) {
  static std::map<PlanKey, PlanEntry> cache;
  PlanEntry& e = cache[{n0, n1, sign}];
  if (!e.plan) {
    e.size = n0 * (n1 ? n1 : 1);
    e.in = fftw_alloc_complex(e.size);
    e.out = fftw_alloc_complex(e.size);
    e.plan = n1 ? fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1),
                                   e.in, e.out, sign, FFTW_ESTIMATE)
                : fftw_plan_dft_1d(static_cast<int>(n0), e.in, e.out, sign,
                                   FFTW_ESTIMATE);
    if (!e.plan) throw std::runtime_error("fftw plan creation failed");
  }
  return e;
}

void run(cplx* data, std::size_t n0, std::size_t n1, bool inverse) {
  PlanEntry& e = get_plan(n0, n1, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  std::memcpy(e.in, data, e.size * sizeof(cplx));
  fftw_execute(e.plan);
  const double scale = 1.0 / std::sqrt(static_cast<double>(e.size));
  const cplx* out = reinterpret_cast<const cplx*>(e.out);
  for (std::size_t i = 0; i < e.size; ++i) data[i] = out[i] * scale;
}

}  // namespace

void dft(cplx* data, std::size_t n, bool inverse) { run(data, n, 0, inverse); }

void dft(std::vector<cplx>& data, bool inverse) {
  dft(data.data(), data.size(), inverse);
}

void dft_2d(cplx* data, std::size_t n0, std::size_t n1, bool inverse) {
  run(data, n0, n1, inverse);
}

void dft_2d(std::vector<cplx>& data, std::size_t n0, std::size_t n1,
            bool inverse) {
  if (data.size() != n0 * n1) throw std::invalid_argument("dft_2d: size mismatch");
  dft_2d(data.data(), n0, n1, inverse);
}

}  // namespace tfq
