#pragma once

#include <iosfwd>
#include <string>

#include "tfq/mixed_norms.hpp"

namespace tfq {

// Dense complex matrix indexed by a finite lattice (shared row/column index
// set). Entry (j,k) sits at flat row j, flat column k in enumeration order.
class LatticeMatrix {
 public:
  explicit LatticeMatrix(Lattice lat)
      : lattice_(std::move(lat)),
        entries_(lattice_.size() * lattice_.size(), cplx(0.0, 0.0)) {}
  LatticeMatrix(Lattice lat, std::vector<cplx> entries);

  const Lattice& lattice() const { return lattice_; }
  std::size_t n() const { return lattice_.size(); }

  cplx& at(std::size_t j, std::size_t k) { return entries_[j * n() + k]; }
  const cplx& at(std::size_t j, std::size_t k) const {
    return entries_[j * n() + k];
  }
  const std::vector<cplx>& entries() const { return entries_; }
  std::vector<cplx>& entries() { return entries_; }

  bool is_diagonal(double tol = 0.0) const;

  static LatticeMatrix identity(const Lattice& lat);
  LatticeMatrix multiply(const LatticeMatrix& rhs) const;
  LatticeMatrix transpose() const;

 private:
  Lattice lattice_;
  std::vector<cplx> entries_;  // row-major
};

// U^{p,q}(omega, Lambda) quasi-norm: H(j,k) = a(j, j-k) omega(j, j-k) with k
// over the difference index set (zero extension off the box), reduced by
// l^p along j then l^q over k.
double u_norm(const LatticeMatrix& A, const Exponent& p, const Exponent& q,
              const Weight& w);

inline double u_norm(const LatticeMatrix& A, const Exponent& p, const Weight& w) {
  return u_norm(A, p, p, w);
}

// (A f)(j) = sum_k a(j,k) f(k).
SequenceArray apply(const LatticeMatrix& A, const SequenceArray& f);

struct Factorization {
  LatticeMatrix a1;
  LatticeMatrix a2;
  double norm0 = 0.0;       // ||A0||_{U^{p0}(w0)}
  double norm1 = 0.0;       // ||A1||_{U^{p1}(w1)}
  double norm2 = 0.0;       // ||A2||_{U^{p2}(w2)}
  double product_error = 0.0;  // max |(A1 A2 - A0)(j,k)| / max |A0|
};

// Diagonal-left factorization A0 = A1 A2 with A1 diagonal:
//   b(j,j) = w1(j,j)^{-1} (sum_m |a(j,m) w0(j,m)|^{p0})^{1/p1},
//   c(j,k) = a(j,k) / b(j,j)   (0 when b(j,j) = 0).
// Requires 1/p0 = 1/p1 + 1/p2 and weight condition wc1. For p0 = inf the
// inner sum becomes a sup; the exponent p0/p1 is read as a limit (inf/inf=1,
// finite/inf=0, with R^0 := 1 on nonzero rows).
Factorization factorize_left_diagonal(const LatticeMatrix& a0,
                                      const Exponent& p0, const Exponent& p1,
                                      const Exponent& p2, const Weight& w0,
                                      const Weight& w1, const Weight& w2,
                                      bool check_weights = true);

// Mirror factorization with A2 diagonal (weight condition wc2), realized by
// transposing, factorizing, and transposing back.
Factorization factorize_right_diagonal(const LatticeMatrix& a0,
                                       const Exponent& p0, const Exponent& p1,
                                       const Exponent& p2, const Weight& w0,
                                       const Weight& w1, const Weight& w2,
                                       bool check_weights = true);

struct ChainFactorization {
  std::vector<LatticeMatrix> factors;   // A = factors[0] * ... * factors[n-1]
  std::vector<double> factor_norms;     // ||A_m||_{U^2(theta_m)}
  double chain_norm0 = 0.0;             // ||A||_{U^{2/N}(w0)}
  double product_error = 0.0;
};

// A in U^{2/N}(w0) with w0(j,k) = w2(j)/w1(k) splits into N factors in U^2
// with weights theta_1(j,k) = w2(j), theta_m = 1, theta_N(j,k) = w1(k), and
// prod ||A_m||_{U^2(theta_m)} <= ||A||_{U^{2/N}(w0)}.
ChainFactorization factorize_chain(const LatticeMatrix& a, int n_factors,
                                   const Weight& w1, const Weight& w2);

struct ContinuityReport {
  double worst_ratio = 0.0;   // max over trials of lhs / rhs
  double u_norm_value = 0.0;  // ||A||_{U^{p,q}(w0)}
  std::size_t trials = 0;
  bool pass = false;
};

// Randomized certificate for ||Af||_{l^{p2}_{sigma,(w2)}} <=
// ||A||_{U^{p,q}(w0)} ||f||_{l^{p1}_{sigma,(w1)}}. The exponent relation
// 1/p2 - 1/p1 = 1/p + min(0, 1/q - 1), q <= min(p2) <= max(p2) <= p is
// validated first and violations are rejected before any trial.
ContinuityReport check_continuity(const LatticeMatrix& A,
                                  const MixedExponent& p1,
                                  const MixedExponent& p2, const Exponent& p,
                                  const Exponent& q, const Weight& w0,
                                  const Weight& w1, const Weight& w2,
                                  std::size_t trials, std::uint64_t seed,
                                  double slack = 1e-10);

// Exponent-relation check shared with the pseudo-differential suite.
bool pq_conditions_hold(const MixedExponent& p1, const MixedExponent& p2,
                        const Exponent& p, const Exponent& q,
                        std::string* why = nullptr);

// CSV (row-major, "re,im" pairs) and compact binary dumps.
void write_matrix_csv(std::ostream& os, const LatticeMatrix& A);
LatticeMatrix read_matrix_csv(std::istream& is);
void write_matrix_binary(std::ostream& os, const LatticeMatrix& A);
LatticeMatrix read_matrix_binary(std::istream& is);

}  // namespace tfq
