#pragma once

#include "tfq/matrix_bank.hpp"

namespace tfq {

// Non-increasing singular value list.
struct SingularSpectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  // Rank with values below 1e-13 * sigma_1 treated as zero; the norm
  // computations keep them.
  std::size_t numerical_rank() const;
};

// Singular values of A as an operator l^2_{(w1)} -> l^2_{(w2)}, computed from
// the unitarily equivalent plain-l^2 operator D_{w2} A D_{w1}^{-1}.
SingularSpectrum singular_values(const LatticeMatrix& A, const Weight& w1,
                                 const Weight& w2);
SingularSpectrum singular_values(const LatticeMatrix& A);

// l^p of the spectrum; p = inf gives sigma_1.
double schatten_norm(const SingularSpectrum& s, const Exponent& p);

double schatten_norm(const LatticeMatrix& A, const Exponent& p,
                     const Weight& w1, const Weight& w2);

struct EmbeddingReport {
  double schatten = 0.0;  // ||A||_{I_p(l^2_{(w1)}, l^2_{(w2)})}
  double u_p = 0.0;       // ||A||_{U^p(w0)}, w0 the quotient-on-pairs weight
  double ratio = 0.0;
  bool pass = false;
  bool normative = true;  // false for the p > 2 probe mode
};

// U^p subset I_p certificate for p in (0,2] with w0(j,k) = w2(j)/w1(k). For
// p > 2 the report is a probe: the ratio is returned without pass/fail (the
// embedding is expected to fail there).
EmbeddingReport verify_schatten_embedding(const LatticeMatrix& A,
                                          const Exponent& p, const Weight& w1,
                                          const Weight& w2,
                                          bool probe_above_two = false,
                                          double slack = 1e-10);

struct HolderReport {
  double lhs = 0.0;  // ||T2 T1||_{I_{p0}}
  double rhs = 0.0;  // ||T1||_{I_{p1}} ||T2||_{I_{p2}}
  bool pass = false;
};

// ||T2 T1||_{I_{p0}} <= ||T1||_{I_{p1}} ||T2||_{I_{p2}} with
// 1/p1 + 1/p2 = 1/p0.
HolderReport check_holder_composition(const LatticeMatrix& t1,
                                      const LatticeMatrix& t2,
                                      const Exponent& p0, const Exponent& p1,
                                      const Exponent& p2, double slack = 1e-10);

struct PTriangleReport {
  double lhs_pow = 0.0;  // ||sum T_k||_{I_p}^p
  double rhs_pow = 0.0;  // sum ||T_k||_{I_p}^p
  bool pass = false;
};

// Quasi-norm p-triangle inequality for I_p, p <= 1.
PTriangleReport check_p_triangle(const std::vector<LatticeMatrix>& summands,
                                 const Exponent& p, double slack = 1e-10);

}  // namespace tfq
