#include "tfq/weights.hpp"

#include <cmath>
#include <sstream>

namespace tfq {

namespace {

enum class Kind { kConstant, kPolynomial, kExponential, kTensor, kProduct, kQuotient, kPairQuotient, kSwapPair, kOpCompat };

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

struct Weight::Node {
  Kind kind;
  double param = 0.0;
  std::vector<Weight> kids;
  std::size_t split = 0;
};

Weight Weight::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("Weight::constant: need 0 < c < inf");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kConstant;
  n->param = c;
  return Weight(std::move(n));
}

Weight Weight::polynomial(double s) {
  if (!std::isfinite(s)) throw std::invalid_argument("Weight::polynomial: bad s");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPolynomial;
  n->param = s;
  return Weight(std::move(n));
}

Weight Weight::exponential(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("Weight::exponential: bad r");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kExponential;
  n->param = r;
  return Weight(std::move(n));
}

Weight Weight::tensor(std::vector<Weight> axis_weights) {
  if (axis_weights.empty())
    throw std::invalid_argument("Weight::tensor: no factors");
  for (const auto& w : axis_weights)
    if (w.dim() > 1)
      throw std::invalid_argument("Weight::tensor: factors must be 1-d forms");
  auto n = std::make_shared<Node>();
  n->kind = Kind::kTensor;
  n->kids = std::move(axis_weights);
  return Weight(std::move(n));
}

Weight Weight::product(Weight a, Weight b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kProduct;
  n->kids = {std::move(a), std::move(b)};
  return Weight(std::move(n));
}

Weight Weight::quotient(Weight numer, Weight denom) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kQuotient;
  n->kids = {std::move(numer), std::move(denom)};
  return Weight(std::move(n));
}

Weight Weight::pair_quotient(Weight w2, Weight w1, std::size_t split) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPairQuotient;
  n->kids = {std::move(w2), std::move(w1)};
  n->split = split;
  return Weight(std::move(n));
}

Weight Weight::transposed_pair(Weight w, std::size_t split) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kSwapPair;
  n->kids = {std::move(w)};
  n->split = split;
  return Weight(std::move(n));
}

Weight Weight::op_compatibility(Weight w2, Weight w1, double t) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kOpCompat;
  n->kids = {std::move(w2), std::move(w1)};
  n->param = t;
  return Weight(std::move(n));
}

std::optional<double> Weight::as_constant() const {
  if (node_->kind == Kind::kConstant) return node_->param;
  return std::nullopt;
}

std::size_t Weight::dim() const {
  switch (node_->kind) {
    case Kind::kConstant:
    case Kind::kPolynomial:
    case Kind::kExponential:
      return 0;
    case Kind::kTensor:
      return node_->kids.size();
    case Kind::kProduct:
    case Kind::kQuotient: {
      const std::size_t a = node_->kids[0].dim(), b = node_->kids[1].dim();
      return a == 0 ? b : a;
    }
    case Kind::kPairQuotient: {
      if (node_->split == 0) return 0;
      const std::size_t a = node_->kids[0].dim(), b = node_->kids[1].dim();
      return node_->split + (b == 0 ? (a == 0 ? node_->split : a) : b);
    }
    case Kind::kSwapPair:
      return node_->kids[0].dim();
    case Kind::kOpCompat:
      return 4;
  }
  return 0;
}

double Weight::operator()(std::span<const double> x) const {
  double res = 0.0;
  switch (node_->kind) {
    case Kind::kConstant:
      res = node_->param;
      break;
    case Kind::kPolynomial:
      res = std::pow(1.0 + norm2(x) * norm2(x), 0.5 * node_->param);
      break;
    case Kind::kExponential:
      res = std::exp(node_->param * norm2(x));
      break;
    case Kind::kTensor: {
      if (x.size() != node_->kids.size())
        throw std::invalid_argument("Weight: tensor arity mismatch");
      res = 1.0;
      for (std::size_t a = 0; a < x.size(); ++a)
        res *= node_->kids[a](x.subspan(a, 1));
      break;
    }
    case Kind::kProduct:
      res = node_->kids[0](x) * node_->kids[1](x);
      break;
    case Kind::kQuotient:
      res = node_->kids[0](x) / node_->kids[1](x);
      break;
    case Kind::kPairQuotient: {
      std::size_t d = node_->split ? node_->split : x.size() / 2;
      if (d == 0 || d >= x.size())
        throw std::invalid_argument("Weight: pair quotient needs a split point");
      res = node_->kids[0](x.subspan(0, d)) / node_->kids[1](x.subspan(d));
      break;
    }
    case Kind::kSwapPair: {
      std::size_t d = node_->split ? node_->split : x.size() / 2;
      if (d == 0 || d > x.size())
        throw std::invalid_argument("Weight: pair swap needs a split point");
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size() - d; ++i) y[i] = x[d + i];
      for (std::size_t i = 0; i < d; ++i) y[x.size() - d + i] = x[i];
      res = node_->kids[0](y);
      break;
    }
    case Kind::kOpCompat: {
      if (x.size() != 4)
        throw std::invalid_argument("Weight: op compatibility form needs 4 args");
      const double t = node_->param;
      const double px = x[0] - t * x[3];
      const double eta = x[1] - t * x[2];
      const double xi = eta + x[2];
      const double py = px + x[3];
      const double num[2] = {px, xi};
      const double den[2] = {py, eta};
      res = node_->kids[0](std::span<const double>(num, 2)) /
            node_->kids[1](std::span<const double>(den, 2));
      break;
    }
  }
  if (!std::isfinite(res) || !(res > 0.0))
    throw WeightEvalError("weight evaluation left (0, inf): " + describe());
  return res;
}

std::string Weight::describe() const {
  std::ostringstream os;
  switch (node_->kind) {
    case Kind::kConstant:
      os << "const(" << node_->param << ")";
      break;
    case Kind::kPolynomial:
      os << "poly(" << node_->param << ")";
      break;
    case Kind::kExponential:
      os << "exp(" << node_->param << ")";
      break;
    case Kind::kTensor: {
      os << "tensor(";
      for (std::size_t a = 0; a < node_->kids.size(); ++a)
        os << (a ? "," : "") << node_->kids[a].describe();
      os << ")";
      break;
    }
    case Kind::kProduct:
      os << "prod(" << node_->kids[0].describe() << "," << node_->kids[1].describe() << ")";
      break;
    case Kind::kQuotient:
      os << "quot(" << node_->kids[0].describe() << "," << node_->kids[1].describe() << ")";
      break;
    case Kind::kPairQuotient:
      os << "pairquot(" << node_->kids[0].describe() << "," << node_->kids[1].describe()
         << ";split=" << node_->split << ")";
      break;
    case Kind::kSwapPair:
      os << "swap(" << node_->kids[0].describe() << ")";
      break;
    case Kind::kOpCompat:
      os << "opcompat(" << node_->kids[0].describe() << ","
         << node_->kids[1].describe() << ";t=" << node_->param << ")";
      break;
  }
  return os.str();
}

double weight_eval(const Weight& w, std::span<const double> x) { return w(x); }

ModerateReport check_moderate(const Weight& w, const Weight& v,
                              const Lattice& box) {
  ModerateReport rep;
  const std::size_t d = box.dim();
  std::vector<double> x(d), y(d), xy(d);
  for (std::size_t i = 0; i < box.size(); ++i) {
    box.point(i, x.data());
    const double wx = w(x);
    for (std::size_t j = 0; j < box.size(); ++j) {
      box.point(j, y.data());
      for (std::size_t a = 0; a < d; ++a) xy[a] = x[a] + y[a];
      const double ratio = w(xy) / (wx * v(y));
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.witness_x = x;
        rep.witness_y = y;
      }
    }
  }
  return rep;
}

PairConditionReport check_pair_weight_condition(PairWeightCondition kind,
                                                const Weight& w0,
                                                const Weight& w1,
                                                const Weight& w2,
                                                const Lattice& lat) {
  PairConditionReport rep;
  const std::size_t d = lat.dim();
  const std::size_t n = lat.size();
  std::vector<double> pj(d), pk(d), pm(d), pair(2 * d), pair2(2 * d);

  auto fill_pair = [&](std::vector<double>& dst, const std::vector<double>& a,
                       const std::vector<double>& b) {
    for (std::size_t i = 0; i < d; ++i) dst[i] = a[i];
    for (std::size_t i = 0; i < d; ++i) dst[d + i] = b[i];
  };

  auto update = [&](double lhs, double rhs, std::initializer_list<std::size_t> wit) {
    const double ratio = lhs / rhs;
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.witness.assign(wit.begin(), wit.end());
    }
  };

  for (std::size_t j = 0; j < n; ++j) {
    lat.point(j, pj.data());
    for (std::size_t k = 0; k < n; ++k) {
      lat.point(k, pk.data());
      fill_pair(pair, pj, pk);
      const double rhs = w0(pair);
      switch (kind) {
        case PairWeightCondition::wc1: {
          fill_pair(pair2, pj, pj);
          update(w1(pair2) * w2(pair), rhs, {j, k});
          break;
        }
        case PairWeightCondition::wc2: {
          fill_pair(pair2, pk, pk);
          update(w1(pair) * w2(pair2), rhs, {j, k});
          break;
        }
        case PairWeightCondition::wi1: {
          update(w2(pj) / w1(pk), rhs, {j, k});
          break;
        }
        case PairWeightCondition::wc3: {
          for (std::size_t m = 0; m < n; ++m) {
            lat.point(m, pm.data());
            fill_pair(pair2, pj, pm);
            const double lhs1 = w1(pair2);
            fill_pair(pair2, pm, pk);
            update(lhs1 * w2(pair2), rhs, {j, k, m});
          }
          break;
        }
      }
    }
  }
  rep.pass = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

}  // namespace tfq
