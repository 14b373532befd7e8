#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfq {

// Lebesgue exponent in (0, inf]. Infinity is a tagged state, not a floating
// point sentinel, so reciprocal arithmetic (1/inf = 0) is exact.
class Exponent {
 public:
  Exponent() : value_(2.0), inf_(false) {}

  static Exponent infinity() {
    Exponent e;
    e.inf_ = true;
    e.value_ = 0.0;
    return e;
  }

  static Exponent finite(double v) {
    if (!(v > 0.0) || v == std::numeric_limits<double>::infinity())
      throw std::invalid_argument("Exponent::finite: need 0 < p < inf, got " +
                                  std::to_string(v));
    Exponent e;
    e.inf_ = false;
    e.value_ = v;
    return e;
  }

  // Accepts any v in (0, inf]; +inf maps to the tagged infinity.
  static Exponent from_double(double v) {
    if (v == std::numeric_limits<double>::infinity()) return infinity();
    return finite(v);
  }

  bool is_inf() const { return inf_; }

  double value() const {
    if (inf_) throw std::logic_error("Exponent::value: exponent is inf");
    return value_;
  }

  // 1/p with 1/inf = 0, exact.
  double reciprocal() const { return inf_ ? 0.0 : 1.0 / value_; }

  // For comparisons only; inf becomes the IEEE infinity.
  double as_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : value_;
  }

  bool operator==(const Exponent& o) const {
    return inf_ == o.inf_ && (inf_ || value_ == o.value_);
  }

  std::string str() const { return inf_ ? "inf" : std::to_string(value_); }

 private:
  double value_;
  bool inf_;
};

// Conjugate exponent with the three-case extension to (0, inf]:
// p = inf -> 1, 1 < p < inf -> p/(p-1), 0 < p <= 1 -> inf.
Exponent conjugate_exponent(const Exponent& p);

// Exponent vector p in (0,inf]^d together with a permutation sigma of
// {0,...,d-1}. sigma[i] is the permuted slot of original axis i; the axis
// reduced k-th is the original axis with sigma[axis] == k.
struct MixedExponent {
  std::vector<Exponent> p;
  std::vector<std::size_t> sigma;  // empty means identity

  MixedExponent() = default;
  explicit MixedExponent(std::vector<Exponent> exps,
                         std::vector<std::size_t> perm = {});

  std::size_t dim() const { return p.size(); }
  bool identity_sigma() const;
  // Original axis reduced at step k (0-based).
  std::size_t axis_of_step(std::size_t k) const;

  Exponent min_exponent() const;
  Exponent max_exponent() const;

  static MixedExponent flat(std::size_t d, const Exponent& p);
};

}  // namespace tfq
