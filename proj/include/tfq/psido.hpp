#pragma once

#include "tfq/gabor.hpp"
#include "tfq/matrix_bank.hpp"
#include "tfq/schatten.hpp"

namespace tfq {

// Phase-space symbol on Z_N x Z_N, row-major a(x, xi) with x slowest.
struct Symbol {
  std::size_t n = 0;
  std::vector<cplx> v;

  Symbol() = default;
  explicit Symbol(std::size_t size) : n(size), v(size * size, cplx(0.0, 0.0)) {}

  cplx& at(std::size_t x, std::size_t xi) { return v[x * n + xi]; }
  const cplx& at(std::size_t x, std::size_t xi) const { return v[x * n + xi]; }
  const cplx& at_mod(std::int64_t x, std::int64_t xi) const {
    const auto nn = static_cast<std::int64_t>(n);
    return v[static_cast<std::size_t>(((x % nn + nn) % nn) * nn +
                                      ((xi % nn + nn) % nn))];
  }

  static Symbol constant(std::size_t n, cplx c);
  double norm2() const;  // counting l^2 over the grid
};

// Kohn-Nirenberg quantization: the N x N operator matrix with kernel
// K(x,y) = N^{-1/2} (F_2^{-1} a)(x, x - y); a == 1 gives the identity.
LatticeMatrix op0(const Symbol& a);

// Exact discrete calculus transform a -> e^{i (t1 - t2) <D_x, D_xi>} a:
// 2-d DFT, phase e^{i (t1-t2) (2 pi / N) u v} on signed dual indices,
// inverse DFT. Group law transform(t1,t2) o transform(t2,t3) =
// transform(t1,t3) holds exactly.
Symbol calculus_transform(const Symbol& a, double t1, double t2);

// Op_t(a) = Op_0(calculus_transform(a, t, 0)).
LatticeMatrix op_t(const Symbol& a, double t);

// t-Wigner distribution, fixed so that Op_t(W^t_{f1,f2}) f =
// N^{-1/2} (f, f2) f1 exactly: W^0(x,xi) = f1(x) conj(f2hat(xi))
// e^{-2 pi i x xi / N}, then the calculus transform from parameter 0 to t.
Symbol wigner_t(const CyclicGridFunction& f1, const CyclicGridFunction& f2,
                double t);

// Rihaczek window Phi(x,xi) = phi1(x) conj(phi2hat(xi)) e^{-i<x,xi>}; equals
// the t = 0 Wigner distribution of the pair.
Symbol rihaczek_window(const CyclicGridFunction& phi1,
                       const CyclicGridFunction& phi2);

// Exact discrete Weyl Wigner for odd N via mod-N half shifts:
// W(x,xi) = N^{-1/2} sum_z f(x+z) conj(g(x-z)) e^{-2 pi i (2z) xi / N}.
// This is the transform under which the Wigner convolution identity is an
// algebraic identity on Z_N.
Symbol weyl_wigner(const CyclicGridFunction& f, const CyclicGridFunction& g);

// Symplectic Fourier transform (F_sigma a)(x,xi) = ahat(-2 xi, 2 x) on the
// 2-d unitary DFT; involutive; requires N odd.
Symbol symplectic_ft(const Symbol& a);

// Phase-space Gabor frame on Z_N^2 over the lattice Lambda^2 x Lambda^2
// (equal time and frequency step s on both axes) with the Rihaczek window of
// (phi1, phi2) and its canonical dual, solved by conjugate gradients.
struct PhaseSpaceSystem {
  std::size_t n = 0;
  std::size_t step = 1;
  CyclicGridFunction phi1, phi2;
  Symbol window;  // Phi
  Symbol dual;    // Psi = (S_{Phi,Phi})^{-1} Phi
  double dual_residual = 0.0;
  std::size_t cg_iterations = 0;

  std::size_t m() const { return n / step; }
};

PhaseSpaceSystem make_phase_space_system(const CyclicGridFunction& phi1,
                                         const CyclicGridFunction& phi2,
                                         std::size_t step, double tol = 1e-12);

// 2-d Gabor analysis of a symbol against a window, sampled on the lattice:
// out[(mt1 m + mt2) m^2 + nf1 m + nf2] = V_win a(s mt1, s mt2, s nf1, s nf2),
// with the unitary N^{-1} prefactor in the 4-d STFT.
std::vector<cplx> symbol_lattice_stft(const Symbol& a, const Symbol& window,
                                      std::size_t step);

// Centered 2-axis lattice carrying the Gabor matrix (theta = s h per axis).
Lattice phase_lattice(const PhaseSpaceSystem& sys);

// Gabor matrix of a symbol: A(j, k) = N^{-1/2} (V_Psi a)(j, kappa,
// iota - kappa, k - j) e^{i <k - j, kappa>} over bold indices j = (j, iota),
// k = (k, kappa) in Lambda^2, so that Op_0(a) = D_{phi1} A C_{phi2}.
LatticeMatrix gabor_matrix(const Symbol& a, const PhaseSpaceSystem& sys);

struct FactorizationIdentityReport {
  double identity_residual = 0.0;  // a == 1 end-to-end deviation from f
  double max_residual = 0.0;       // worst relative residual over trials
  std::size_t trials = 0;
  bool pass = false;
};

// || Op_0(a) f - D_{phi1}(A (C_{phi2} f)) ||_2 / || Op_0(a) f ||_2 over
// random f.
FactorizationIdentityReport check_factorization_identity(
    const Symbol& a, const PhaseSpaceSystem& sys, std::size_t trials,
    std::uint64_t seed, double tol = 1e-6);

// Modulation quasi-norm of a symbol: inner flat l^p over time pairs, outer
// l^q over frequency pairs of the 4-d STFT against the tensor reference
// window, sampled on the step-lattice, in continuum (Riemann) units. The
// 4-arg weight sees signed coordinates (x, xi, eta, y-part) in grid units
// times h.
double symbol_mod_norm(const Symbol& a, const Exponent& p, const Exponent& q,
                       const Weight& w0, std::size_t sample_step,
                       const CyclicGridFunction& reference_window);

struct RatioReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// ||Op_t(a) f||_{M^{p2}_{(w2)}} / (||a||_{M^{p,q}_{(w0)}} ||f||_{M^{p1}_{(w1)}})
// over random Gabor-atom superpositions f; exponent tuple must satisfy the
// same (p,q) conditions as the matrix continuity theorem.
struct OpContinuityReport {
  double symbol_norm = 0.0;
  double worst_ratio = 0.0;
  std::size_t trials = 0;
};

OpContinuityReport check_op_continuity(const Symbol& a, const MixedExponent& p1,
                                       const MixedExponent& p2,
                                       const Exponent& p, const Exponent& q,
                                       const Weight& w0, const Weight& w1,
                                       const Weight& w2, double t,
                                       std::size_t trials, std::uint64_t seed,
                                       const CyclicGridFunction& ref_window,
                                       std::size_t symbol_step);

// ||Op_t(a)||_{I_p(M^2_{(w1)}, M^2_{(w2)})} / ||a||_{M^{p,p}_{(w0)}}, p <= 2.
// The weighted Schatten norm is realized exactly through the QR factor of
// the weighted full-lattice analysis map.
RatioReport check_op_schatten(const Symbol& a, const Exponent& p,
                              const Weight& w0, const Weight& w1,
                              const Weight& w2, double t,
                              const CyclicGridFunction& ref_window,
                              std::size_t symbol_step);

// Weighted operator Schatten norm of an N x N matrix between M^2_{(w1)} and
// M^2_{(w2)} in the finite model (w == 1 reduces to the plain Schatten norm).
double weighted_operator_schatten_norm(const LatticeMatrix& A, const Exponent& p,
                                       const Weight& w1, const Weight& w2,
                                       const CyclicGridFunction& ref_window);

// ||W^t_{f1,f2}||_{M^{p,q}_{(w0)}} / (||f1||_{M^{p1,q1}_{(w1)}}
// ||f2||_{M^{p2,q2}_{(w2)}}) under 1/p1 + 1/p2 = 1/q1 + 1/q2 = 1/p + 1/q.
RatioReport check_wigner_modulation_bound(
    const CyclicGridFunction& f1, const CyclicGridFunction& f2, double t,
    const Exponent& p1, const Exponent& q1, const Exponent& p2,
    const Exponent& q2, const Exponent& p, const Exponent& q, const Weight& w0,
    const Weight& w1, const Weight& w2, const CyclicGridFunction& ref_window,
    std::size_t symbol_step);

struct WignerConvolutionReport {
  double fitted_c = 0.0;        // least-squares C in |W*W| = C |V . V|
  double max_pointwise_dev = 0.0;  // max | |W*W| - C |V V| | / max |W*W|
  double lp_lhs = 0.0;          // ||a*b||_{L^p}, Riemann units
  double factor_product = 0.0;  // prod of the four M^{2p} norms
  double c_prime = 0.0;         // lp_lhs / factor_product
  bool identity_pass = false;
};

// Pointwise Wigner convolution identity |W_{f1,f2} * W_{g1,g2}| =
// C |V_{rev f2} g1| |V_{rev f1} g2| on the full grid (N odd), plus the L^p
// estimate against the product of M^{2p} norms. p <= 1.
WignerConvolutionReport check_wigner_convolution(
    const CyclicGridFunction& f1, const CyclicGridFunction& f2,
    const CyclicGridFunction& g1, const CyclicGridFunction& g2,
    const Exponent& p, const CyclicGridFunction& ref_window,
    double identity_tol = 1e-8);

// ||A||_{U^{p,q}(w, Lambda^2)} vs ||a||_{M^{p,q}_{(w0)}} for the Gabor matrix
// of a symbol.
RatioReport check_unorm_modnorm_equiv(const Symbol& a, const Exponent& p,
                                      const Exponent& q, const Weight& w,
                                      const Weight& w0,
                                      const PhaseSpaceSystem& sys,
                                      const CyclicGridFunction& ref_window);

// Random Gabor-atom superposition with geometrically summable coefficients;
// keeps every modulation quasi-norm finite by construction.
CyclicGridFunction random_atom_superposition(std::size_t n, std::size_t atoms,
                                             Rng& rng);
Symbol random_symbol_superposition(std::size_t n, std::size_t atoms, Rng& rng);

// f -> f(-x) on Z_N.
CyclicGridFunction reverse(const CyclicGridFunction& f);

// Matrix-free application of an operator matrix to grid samples.
CyclicGridFunction apply_operator(const LatticeMatrix& A,
                                  const CyclicGridFunction& f);

}  // namespace tfq
