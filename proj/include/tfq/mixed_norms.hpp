#pragma once

#include <optional>
#include <span>

#include "tfq/exponents.hpp"
#include "tfq/sequence.hpp"
#include "tfq/weights.hpp"

namespace tfq {

// Deterministic pairwise summation; reduction order depends only on the
// number of terms, so results are reproducible.
double pairwise_sum(std::span<const double> v);

// l^p quasi-norm of a vector of magnitudes, p in (0,inf]. Finite p is
// computed with the maximum factored out; below kLogSpacePowThreshold the
// powers go through exp/log to dodge underflow.
inline constexpr double kLogSpacePowThreshold = 0.1;
double lp_reduce(std::span<const double> magnitudes, const Exponent& p);

// Mixed quasi-norm l^p_{sigma,(omega)}: magnitudes |f(lambda) w(lambda)| are
// formed pointwise, axes are permuted by sigma, then axis 1 (permuted) is
// reduced first with l^{p_1}, axis 2 next, and so on.
double mixed_seq_norm(const SequenceArray& f, const MixedExponent& e,
                      const Weight& w);

// Riemann-sum analogue on a uniform grid: each finite-p reduction picks up a
// factor step^{1/p}; p = inf reduces by sup. Weight is evaluated at grid
// coordinates.
double mixed_grid_norm(const GridFunction& f, const MixedExponent& e,
                       const Weight& w);

// Flat l^p over all points (identity sigma, single exponent).
double flat_seq_norm(const SequenceArray& f, const Exponent& p, const Weight& w);
double flat_seq_norm(const SequenceArray& f, const Exponent& p);

// (h*c)(j) = sum_k h(k) c(j-k), zero extension outside the boxes. Output box
// is the sum-box unless a truncation box is supplied.
SequenceArray convolve(const SequenceArray& h, const SequenceArray& c,
                       const std::optional<std::vector<AxisRange>>& out_box =
                           std::nullopt);

struct YoungReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// Quasi-norm Young estimate ||h*c||_{l^p} <= ||h||_{l^q} ||c||_{l^p} for
// q <= 1, q <= min(p).
YoungReport check_young_quasi(const SequenceArray& h, const SequenceArray& c,
                              const MixedExponent& p, const Exponent& q);

// Classical Young ||h*c||_r <= ||h||_q ||c||_p, 1/r = 1/q + 1/p - 1, for
// p, q >= 1.
YoungReport check_young_classical(const SequenceArray& h, const SequenceArray& c,
                                  const Exponent& q, const Exponent& p);

}  // namespace tfq
