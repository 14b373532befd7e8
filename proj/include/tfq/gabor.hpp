#pragma once

#include <optional>
#include <stdexcept>

#include "tfq/fft.hpp"
#include "tfq/mixed_norms.hpp"

namespace tfq {

// Complex samples on the cyclic group Z_N, the artifact's finite model of
// functions on R. Dictionary: grid index j stands for x = j_signed * h with
// h = sqrt(2 pi / N); the unitary DFT stands for the (2 pi)^{-1/2}-normalized
// Fourier transform, and N^{-1/2} sum_y corresponds to (2 pi)^{-1/2} int dy.
struct CyclicGridFunction {
  std::size_t n = 0;
  std::vector<cplx> values;

  CyclicGridFunction() = default;
  explicit CyclicGridFunction(std::size_t size)
      : n(size), values(size, cplx(0.0, 0.0)) {}

  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
  // value at an arbitrary (possibly negative) index, mod N
  const cplx& at_mod(std::int64_t i) const {
    const auto nn = static_cast<std::int64_t>(n);
    return values[static_cast<std::size_t>(((i % nn) + nn) % nn)];
  }
  double norm2() const;
};

inline double grid_step(std::size_t n) {
  return std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
}

// Window library. All windows are normalized to unit l^2 norm.
CyclicGridFunction gaussian_window(std::size_t n);  // periodized e^{-x^2/2}
CyclicGridFunction hann_window(std::size_t n);
CyclicGridFunction delta_window(std::size_t n);

CyclicGridFunction unitary_dft(const CyclicGridFunction& f, bool inverse = false);

// (M_b T_a f)(x) = e^{2 pi i b x / N} f(x - a).
CyclicGridFunction time_freq_shift(const CyclicGridFunction& f, std::int64_t a,
                                   std::int64_t b);

// Full N x N short-time Fourier transform,
//   V_phi f(m, k) = N^{-1/2} sum_y f(y) conj(phi(y - m)) e^{-2 pi i y k / N},
// computed as N length-N FFTs. Row-major over (time m, frequency k).
struct TimeFreqArray {
  std::size_t n = 0;
  std::vector<cplx> v;

  explicit TimeFreqArray(std::size_t size) : n(size), v(size * size) {}
  cplx& at(std::size_t m, std::size_t k) { return v[m * n + k]; }
  const cplx& at(std::size_t m, std::size_t k) const { return v[m * n + k]; }
};

TimeFreqArray stft(const CyclicGridFunction& f, const CyclicGridFunction& phi);

// Centered phase-space GridFunction of an N x N time-frequency array: both
// axes get step h = grid_step(N) and origin -floor(N/2) h, so weights see
// signed continuum coordinates.
GridFunction stft_as_grid(const TimeFreqArray& V);

struct FrameConditionError : std::runtime_error {
  explicit FrameConditionError(const std::string& what, double cond)
      : std::runtime_error(what), condition_number(cond) {}
  double condition_number;
};

// Gabor coefficients on Lambda^2 = aZ_N x bZ_N, row-major (N/a) x (N/b).
struct GaborCoefficients {
  std::size_t nt = 0, nf = 0;
  std::vector<cplx> v;

  GaborCoefficients(std::size_t t, std::size_t f) : nt(t), nf(f), v(t * f) {}
  cplx& at(std::size_t j, std::size_t i) { return v[j * nf + i]; }
  const cplx& at(std::size_t j, std::size_t i) const { return v[j * nf + i]; }
};

// Analysis C_phi f = { V_phi f(a j, b i) }.
GaborCoefficients analysis_with(const CyclicGridFunction& window,
                                std::size_t a, std::size_t b,
                                const CyclicGridFunction& f);

// Synthesis D_psi c = N^{-1/2} sum_{j,i} c(j,i) e^{2 pi i (b i) x / N}
// psi(x - a j); the N^{-1/2} makes D_psi the exact adjoint of C_psi.
CyclicGridFunction synthesis_with(const CyclicGridFunction& window,
                                  std::size_t a, std::size_t b,
                                  const GaborCoefficients& c);

struct GaborSystem {
  CyclicGridFunction window;
  std::size_t time_step = 1;  // a, divides N
  std::size_t freq_step = 1;  // b, divides N
  std::optional<CyclicGridFunction> dual;

  std::size_t n() const { return window.n; }
  std::size_t nt() const { return window.n / time_step; }
  std::size_t nf() const { return window.n / freq_step; }
};

GaborSystem make_gabor_system(CyclicGridFunction window, std::size_t time_step,
                              std::size_t freq_step);

GaborCoefficients analysis(const GaborSystem& sys, const CyclicGridFunction& f);

// Frame operator S_{phi,phi} f = D_phi C_phi f.
CyclicGridFunction frame_operator(const GaborSystem& sys,
                                  const CyclicGridFunction& f);

struct DualReport {
  double condition_number = 0.0;
  double residual = 0.0;  // ||S psi - phi||_2 / ||phi||_2
};

// Canonical dual psi = S_{phi,phi}^{-1} phi, stored into the system. Requires
// oversampling a b < N and S positive definite (lambda_min > eig_floor *
// lambda_max); otherwise FrameConditionError carries the condition number.
DualReport canonical_dual(GaborSystem& sys, double eig_floor = 1e-10);

struct ReconstructionReport {
  CyclicGridFunction rec_dual_synthesis;  // D_psi C_phi f
  CyclicGridFunction rec_dual_analysis;   // D_phi C_psi f
  double residual_ds = 0.0;
  double residual_da = 0.0;
};

ReconstructionReport reconstruct(const GaborSystem& sys,
                                 const CyclicGridFunction& f);

// Modulation quasi-norm ||V_phi f||_{L^p_{sigma,(w)}} over the full N x N
// phase plane in continuum (Riemann) units.
double modulation_norm(const CyclicGridFunction& f, const MixedExponent& e,
                       const Weight& w, const CyclicGridFunction& phi);

// Lattice version: mixed_seq_norm of the Lambda^2 samples (counting measure)
// on the centered lattice with theta = (a h, b h).
double modulation_norm_lattice(const GaborSystem& sys,
                               const CyclicGridFunction& f,
                               const MixedExponent& e, const Weight& w);

struct StftWindowBoundReport {
  double lhs = 0.0;  // ||V_phi f||_{L^p_{(w)}}
  double rhs = 0.0;  // ||f||_{M^p_{(w1)}} ||phi||_{M^p_{(w2)}}
  double ratio = 0.0;
};

// Ratio for the STFT window bound, p <= 2; modulation norms on the right use
// the fixed reference window.
StftWindowBoundReport check_stft_window_bound(
    const CyclicGridFunction& f, const CyclicGridFunction& phi,
    const Exponent& p, const Weight& w, const Weight& w1, const Weight& w2,
    const CyclicGridFunction& reference_window);

}  // namespace tfq
