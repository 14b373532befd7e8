#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfq/lattice.hpp"

namespace tfq {

struct WeightEvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed algebra of positive weight functions on R^d. Keeping the forms
// symbolic (instead of arbitrary callables) is what makes the moderateness
// and pair-condition checks below machine-verifiable on finite boxes.
//
// Kinds:
//   constant c                       (any dimension)
//   polynomial  <x>^s = (1+|x|^2)^{s/2}
//   exponential e^{r|x|}
//   tensor      w_1(x_1) * ... * w_d(x_d)
//   product / quotient of two weights
//   pair quotient  w0(j,k) = w2(j) / w1(k)  on point pairs
class Weight {
 public:
  static Weight constant(double c);
  static Weight polynomial(double s);
  static Weight exponential(double r);
  static Weight tensor(std::vector<Weight> axis_weights);
  static Weight product(Weight a, Weight b);
  static Weight quotient(Weight numer, Weight denom);
  // split = number of leading coordinates fed to w2; 0 means half of the
  // evaluation point (the usual Lambda^2 case).
  static Weight pair_quotient(Weight w2, Weight w1, std::size_t split = 0);
  // w(k,j) as a function of (j,k): the two halves of the argument swapped.
  static Weight transposed_pair(Weight w, std::size_t split = 0);
  // Phase-space compatibility weight for t-quantization (d = 1): the 4-arg
  // form w0(X1,X2,X3,X4) = w2(x,xi)/w1(y,eta) with x = X1 - t X4,
  // eta = X2 - t X3, xi = eta + X3, y = x + X4, which turns the operator
  // weight condition into an identity.
  static Weight op_compatibility(Weight w2, Weight w1, double t);
  // The weight as a plain constant, when it is one.
  std::optional<double> as_constant() const;

  static Weight one() { return constant(1.0); }

  // Evaluation; strictly positive and finite or WeightEvalError is thrown.
  double operator()(std::span<const double> x) const;
  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }

  // Expected argument dimension; 0 = any.
  std::size_t dim() const;

  std::string describe() const;

 private:
  struct Node;
  explicit Weight(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

double weight_eval(const Weight& w, std::span<const double> x);

// Empirical moderateness constant: max over sampled (x, y) pairs of
// w(x+y) / (w(x) v(y)), with the maximizing pair as witness.
struct ModerateReport {
  double max_ratio = 0.0;
  std::vector<double> witness_x;
  std::vector<double> witness_y;
  bool passes(double declared_constant) const {
    return max_ratio <= declared_constant;
  }
};

ModerateReport check_moderate(const Weight& w, const Weight& v,
                              const Lattice& sample_box);

// The four pairwise weight compatibility conditions used by the matrix
// factorizations and continuity results:
//   wc1: w1(j,j)   w2(j,k) <= w0(j,k)
//   wc2: w1(j,k)   w2(k,k) <= w0(j,k)
//   wc3: w1(j,m)   w2(m,k) <= w0(j,k)      (all j,k,m)
//   wi1: w2(j)/w1(k)       <= w0(j,k)      (w1, w2 one-point weights)
enum class PairWeightCondition { wc1, wc2, wc3, wi1 };

struct PairConditionReport {
  double worst_ratio = 0.0;  // max over the lattice of lhs/rhs
  bool pass = false;
  std::vector<std::size_t> witness;  // flat lattice indices, (j,k[,m])
};

PairConditionReport check_pair_weight_condition(PairWeightCondition kind,
                                                const Weight& w0,
                                                const Weight& w1,
                                                const Weight& w2,
                                                const Lattice& lat);

}  // namespace tfq
