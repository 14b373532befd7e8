#include "tfq/exponents.hpp"

#include <algorithm>
#include <numeric>

namespace tfq {

Exponent conjugate_exponent(const Exponent& p) {
  if (p.is_inf()) return Exponent::finite(1.0);
  const double v = p.value();
  if (v <= 1.0) return Exponent::infinity();
  return Exponent::finite(v / (v - 1.0));
}

MixedExponent::MixedExponent(std::vector<Exponent> exps,
                             std::vector<std::size_t> perm)
    : p(std::move(exps)), sigma(std::move(perm)) {
  if (p.empty()) throw std::invalid_argument("MixedExponent: empty exponent");
  if (!sigma.empty()) {
    if (sigma.size() != p.size())
      throw std::invalid_argument("MixedExponent: sigma size mismatch");
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t s : sigma) {
      if (s >= sigma.size() || seen[s])
        throw std::invalid_argument("MixedExponent: sigma is not a permutation");
      seen[s] = true;
    }
  }
}

bool MixedExponent::identity_sigma() const {
  if (sigma.empty()) return true;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] != i) return false;
  return true;
}

std::size_t MixedExponent::axis_of_step(std::size_t k) const {
  if (sigma.empty()) return k;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] == k) return i;
  throw std::logic_error("MixedExponent: invalid permutation");
}

Exponent MixedExponent::min_exponent() const {
  const Exponent* best = &p[0];
  for (const auto& e : p)
    if (e.as_double() < best->as_double()) best = &e;
  return *best;
}

Exponent MixedExponent::max_exponent() const {
  const Exponent* best = &p[0];
  for (const auto& e : p)
    if (e.as_double() > best->as_double()) best = &e;
  return *best;
}

MixedExponent MixedExponent::flat(std::size_t d, const Exponent& e) {
  return MixedExponent(std::vector<Exponent>(d, e));
}

}  // namespace tfq
