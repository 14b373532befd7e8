#include "tfq/matrix_bank.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "tfq/rng.hpp"

namespace tfq {

LatticeMatrix::LatticeMatrix(Lattice lat, std::vector<cplx> entries)
    : lattice_(std::move(lat)), entries_(std::move(entries)) {
  if (entries_.size() != lattice_.size() * lattice_.size())
    throw std::invalid_argument("LatticeMatrix: entry count != |Lambda|^2");
}

bool LatticeMatrix::is_diagonal(double tol) const {
  for (std::size_t j = 0; j < n(); ++j)
    for (std::size_t k = 0; k < n(); ++k)
      if (j != k && std::abs(at(j, k)) > tol) return false;
  return true;
}

LatticeMatrix LatticeMatrix::identity(const Lattice& lat) {
  LatticeMatrix m(lat);
  for (std::size_t j = 0; j < m.n(); ++j) m.at(j, j) = 1.0;
  return m;
}

LatticeMatrix LatticeMatrix::multiply(const LatticeMatrix& rhs) const {
  if (!(lattice_ == rhs.lattice_))
    throw std::invalid_argument("LatticeMatrix::multiply: lattice mismatch");
  LatticeMatrix out(lattice_);
  const std::size_t m = n();
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < m; ++l) {
      const cplx aj = at(j, l);
      if (aj == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < m; ++k) out.at(j, k) += aj * rhs.at(l, k);
    }
  return out;
}

LatticeMatrix LatticeMatrix::transpose() const {
  LatticeMatrix out(lattice_);
  for (std::size_t j = 0; j < n(); ++j)
    for (std::size_t k = 0; k < n(); ++k) out.at(k, j) = at(j, k);
  return out;
}

double u_norm(const LatticeMatrix& A, const Exponent& p, const Exponent& q,
              const Weight& w) {
  const Lattice& lat = A.lattice();
  const std::size_t d = lat.dim();
  const Lattice diff = lat.difference_lattice();

  std::vector<double> h;
  h.reserve(diff.size());
  std::vector<std::int64_t> kk(d), jj(d), mm(d);
  std::vector<double> pair(2 * d);
  std::vector<double> col;
  col.reserve(lat.size());

  for (std::size_t kf = 0; kf < diff.size(); ++kf) {
    diff.multi_index(kf, kk.data());
    col.clear();
    for (std::size_t jf = 0; jf < lat.size(); ++jf) {
      lat.multi_index(jf, jj.data());
      bool inside = true;
      for (std::size_t a = 0; a < d; ++a) {
        mm[a] = jj[a] - kk[a];
        if (mm[a] < lat.box()[a].lo || mm[a] > lat.box()[a].hi) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;  // a(j, j-k) = 0 off the box
      const std::size_t mf = lat.flat_index(mm.data());
      const cplx a = A.at(jf, mf);
      for (std::size_t a2 = 0; a2 < d; ++a2) {
        pair[a2] = lat.theta()[a2] * static_cast<double>(jj[a2]);
        pair[d + a2] = lat.theta()[a2] * static_cast<double>(mm[a2]);
      }
      col.push_back(std::abs(a) * w(pair));
    }
    h.push_back(lp_reduce(col, p));
  }
  return lp_reduce(h, q);
}

SequenceArray apply(const LatticeMatrix& A, const SequenceArray& f) {
  if (!(A.lattice() == f.lattice))
    throw std::invalid_argument("apply: lattice mismatch");
  SequenceArray out(A.lattice());
  const std::size_t m = A.n();
  for (std::size_t j = 0; j < m; ++j) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < m; ++k) acc += A.at(j, k) * f.values[k];
    out.values[j] = acc;
  }
  return out;
}

namespace {

void require_holder_relation(const Exponent& p0, const Exponent& p1,
                             const Exponent& p2) {
  const double lhs = p0.reciprocal();
  const double rhs = p1.reciprocal() + p2.reciprocal();
  if (std::abs(lhs - rhs) > 1e-12)
    throw std::invalid_argument("factorize: exponents must satisfy 1/p0 = 1/p1 + 1/p2");
}

// p0/p1 in the limit sense used by the diagonal construction.
double exponent_ratio(const Exponent& p0, const Exponent& p1) {
  if (p0.is_inf() && p1.is_inf()) return 1.0;
  if (p1.is_inf()) return 0.0;
  if (p0.is_inf())
    throw std::invalid_argument("factorize: p0 = inf forces p1 = p2 = inf");
  return p0.value() / p1.value();
}

double max_abs(const LatticeMatrix& A) {
  double m = 0.0;
  for (const cplx& v : A.entries()) m = std::max(m, std::abs(v));
  return m;
}

double product_deviation(const LatticeMatrix& a1, const LatticeMatrix& a2,
                         const LatticeMatrix& a0) {
  const LatticeMatrix prod = a1.multiply(a2);
  double dev = 0.0;
  for (std::size_t i = 0; i < prod.entries().size(); ++i)
    dev = std::max(dev, std::abs(prod.entries()[i] - a0.entries()[i]));
  const double scale = max_abs(a0);
  return scale == 0.0 ? dev : dev / scale;
}

}  // namespace

Factorization factorize_left_diagonal(const LatticeMatrix& a0,
                                      const Exponent& p0, const Exponent& p1,
                                      const Exponent& p2, const Weight& w0,
                                      const Weight& w1, const Weight& w2,
                                      bool check_weights) {
  require_holder_relation(p0, p1, p2);
  const Lattice& lat = a0.lattice();
  if (check_weights) {
    const auto rep =
        check_pair_weight_condition(PairWeightCondition::wc1, w0, w1, w2, lat);
    if (!rep.pass)
      throw std::invalid_argument(
          "factorize_left_diagonal: weight condition wc1 fails, worst ratio " +
          std::to_string(rep.worst_ratio));
  }

  const std::size_t m = lat.size();
  const std::size_t d = lat.dim();
  const double t = exponent_ratio(p0, p1);

  LatticeMatrix a1(lat), a2(lat);
  std::vector<double> pj(d), pk(d), pair(2 * d);
  std::vector<double> row;
  row.reserve(m);

  for (std::size_t j = 0; j < m; ++j) {
    lat.point(j, pj.data());
    row.clear();
    for (std::size_t k = 0; k < m; ++k) {
      lat.point(k, pk.data());
      std::copy(pj.begin(), pj.end(), pair.begin());
      std::copy(pk.begin(), pk.end(), pair.begin() + static_cast<std::ptrdiff_t>(d));
      row.push_back(std::abs(a0.at(j, k)) * w0(pair));
    }
    const double r = lp_reduce(row, p0);

    std::copy(pj.begin(), pj.end(), pair.begin());
    std::copy(pj.begin(), pj.end(), pair.begin() + static_cast<std::ptrdiff_t>(d));
    const double w1jj = w1(pair);

    const double b = r > 0.0 ? (t == 0.0 ? 1.0 : std::pow(r, t)) / w1jj : 0.0;
    a1.at(j, j) = b;
    if (b > 0.0)
      for (std::size_t k = 0; k < m; ++k) a2.at(j, k) = a0.at(j, k) / b;
  }

  Factorization f{std::move(a1), std::move(a2)};
  f.norm0 = u_norm(a0, p0, p0, w0);
  f.norm1 = u_norm(f.a1, p1, p1, w1);
  f.norm2 = u_norm(f.a2, p2, p2, w2);
  f.product_error = product_deviation(f.a1, f.a2, a0);
  return f;
}

Factorization factorize_right_diagonal(const LatticeMatrix& a0,
                                       const Exponent& p0, const Exponent& p1,
                                       const Exponent& p2, const Weight& w0,
                                       const Weight& w1, const Weight& w2,
                                       bool check_weights) {
  // Transposition swaps the roles of the two factors and of the two halves of
  // every pair weight; wc1 for the transposed data is wc2 for the original.
  const LatticeMatrix a0t = a0.transpose();
  const Weight w0t = Weight::transposed_pair(w0);
  const Weight w1t = Weight::transposed_pair(w2);
  const Weight w2t = Weight::transposed_pair(w1);
  Factorization g =
      factorize_left_diagonal(a0t, p0, p2, p1, w0t, w1t, w2t, check_weights);

  Factorization f{g.a2.transpose(), g.a1.transpose()};
  f.norm0 = g.norm0;
  f.norm1 = g.norm2;
  f.norm2 = g.norm1;
  f.product_error = product_deviation(f.a1, f.a2, a0);
  return f;
}

ChainFactorization factorize_chain(const LatticeMatrix& a, int n_factors,
                                   const Weight& w1, const Weight& w2) {
  if (n_factors < 2)
    throw std::invalid_argument("factorize_chain: need at least two factors");
  const std::size_t d = a.lattice().dim();
  const Weight one = Weight::one();

  // theta_1(j,k) = w2(j), theta_m = 1, theta_N(j,k) = w1(k)^{-1}; the
  // remainder weight after the first peel is 1/w1(k) throughout, which is
  // what makes every weight condition an identity.
  const Weight w_quot = Weight::pair_quotient(w2, w1, d);
  const Weight w_left = Weight::pair_quotient(w2, one, d);
  const Weight w_right_inv = Weight::pair_quotient(one, w1, d);

  ChainFactorization chain;
  chain.chain_norm0 =
      u_norm(a, Exponent::finite(2.0 / n_factors), Exponent::finite(2.0 / n_factors), w_quot);

  LatticeMatrix rem = a;
  for (int m = 1; m < n_factors; ++m) {
    const int left = n_factors - m + 1;  // remainder currently in U^{2/left}
    const Exponent p0 = Exponent::finite(2.0 / left);
    const Exponent p2 = Exponent::finite(2.0 / (left - 1));
    const Weight& cur_w0 = (m == 1) ? w_quot : w_right_inv;
    const Weight& cur_w1 = (m == 1) ? w_left : one;
    Factorization step = factorize_left_diagonal(
        rem, p0, Exponent::finite(2.0), p2, cur_w0, cur_w1, w_right_inv,
        /*check_weights=*/false);
    chain.factors.push_back(step.a1);
    chain.factor_norms.push_back(step.norm1);
    rem = step.a2;
  }
  chain.factor_norms.push_back(
      u_norm(rem, Exponent::finite(2.0), Exponent::finite(2.0), w_right_inv));
  chain.factors.push_back(std::move(rem));

  LatticeMatrix prod = chain.factors[0];
  for (std::size_t i = 1; i < chain.factors.size(); ++i)
    prod = prod.multiply(chain.factors[i]);
  double dev = 0.0;
  for (std::size_t i = 0; i < prod.entries().size(); ++i)
    dev = std::max(dev, std::abs(prod.entries()[i] - a.entries()[i]));
  const double scale = max_abs(a);
  chain.product_error = scale == 0.0 ? dev : dev / scale;
  return chain;
}

bool pq_conditions_hold(const MixedExponent& p1, const MixedExponent& p2,
                        const Exponent& p, const Exponent& q,
                        std::string* why) {
  if (p1.dim() != p2.dim()) {
    if (why) *why = "exponent vectors differ in dimension";
    return false;
  }
  const double rhs = p.reciprocal() + std::min(0.0, q.reciprocal() - 1.0);
  for (std::size_t i = 0; i < p1.dim(); ++i) {
    const double lhs = p2.p[i].reciprocal() - p1.p[i].reciprocal();
    if (std::abs(lhs - rhs) > 1e-12) {
      if (why)
        *why = "1/p2 - 1/p1 = 1/p + min(0, 1/q - 1) fails on axis " +
               std::to_string(i);
      return false;
    }
  }
  if (!(q.as_double() <= p2.min_exponent().as_double() + 1e-12)) {
    if (why) *why = "q <= min(p2) fails";
    return false;
  }
  if (!(p2.max_exponent().as_double() <= p.as_double() + 1e-12)) {
    if (why) *why = "max(p2) <= p fails";
    return false;
  }
  return true;
}

ContinuityReport check_continuity(const LatticeMatrix& A,
                                  const MixedExponent& p1,
                                  const MixedExponent& p2, const Exponent& p,
                                  const Exponent& q, const Weight& w0,
                                  const Weight& w1, const Weight& w2,
                                  std::size_t trials, std::uint64_t seed,
                                  double slack) {
  std::string why;
  if (!pq_conditions_hold(p1, p2, p, q, &why))
    throw std::invalid_argument("check_continuity: " + why);
  if (p1.sigma != p2.sigma)
    throw std::invalid_argument("check_continuity: p1 and p2 must share sigma");
  {
    const auto rep = check_pair_weight_condition(PairWeightCondition::wi1, w0,
                                                 w1, w2, A.lattice());
    if (!rep.pass)
      throw std::invalid_argument(
          "check_continuity: weight inequality wi1 fails, worst ratio " +
          std::to_string(rep.worst_ratio));
  }

  ContinuityReport rep;
  rep.u_norm_value = u_norm(A, p, q, w0);
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, t);
    SequenceArray f(A.lattice());
    for (auto& v : f.values) v = rng.cnormal();
    const double nf = mixed_seq_norm(f, p1, w1);
    if (nf == 0.0) continue;
    const SequenceArray g = apply(A, f);
    const double ng = mixed_seq_norm(g, p2, w2);
    rep.worst_ratio = std::max(rep.worst_ratio, ng / (rep.u_norm_value * nf));
  }
  rep.pass = rep.worst_ratio <= 1.0 + slack;
  return rep;
}

void write_matrix_csv(std::ostream& os, const LatticeMatrix& A) {
  const Lattice& lat = A.lattice();
  os << "# tfq-matrix v1 dim=" << lat.dim() << " theta=";
  for (std::size_t a = 0; a < lat.dim(); ++a)
    os << (a ? "," : "") << lat.theta()[a];
  os << " box=";
  for (std::size_t a = 0; a < lat.dim(); ++a)
    os << (a ? "," : "") << lat.box()[a].lo << ":" << lat.box()[a].hi;
  os << "\n";
  char buf[64];
  for (std::size_t j = 0; j < A.n(); ++j) {
    for (std::size_t k = 0; k < A.n(); ++k) {
      const cplx v = A.at(j, k);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
      os << (k ? "," : "") << buf;
    }
    os << "\n";
  }
}

LatticeMatrix read_matrix_csv(std::istream& is) {
  std::string line;
  std::vector<double> theta;
  std::vector<AxisRange> box;
  std::vector<std::vector<cplx>> rows;
  bool have_header = false;

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto tpos = line.find("theta=");
      const auto bpos = line.find("box=");
      if (tpos != std::string::npos && bpos != std::string::npos) {
        std::istringstream ts(line.substr(tpos + 6, line.find(' ', tpos) - tpos - 6));
        std::string tok;
        while (std::getline(ts, tok, ',')) theta.push_back(std::stod(tok));
        std::istringstream bs(line.substr(bpos + 4));
        while (std::getline(bs, tok, ',')) {
          const auto colon = tok.find(':');
          box.push_back({std::stoll(tok.substr(0, colon)),
                         std::stoll(tok.substr(colon + 1))});
        }
        have_header = true;
      }
      continue;
    }
    std::vector<double> nums;
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, ',')) nums.push_back(std::stod(tok));
    if (nums.size() % 2 != 0)
      throw std::invalid_argument("matrix csv: odd number of scalars in a row");
    std::vector<cplx> row(nums.size() / 2);
    for (std::size_t i = 0; i < row.size(); ++i)
      row[i] = cplx(nums[2 * i], nums[2 * i + 1]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix csv: no data rows");
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n)
      throw std::invalid_argument("matrix csv: matrix must be square over Lambda");

  Lattice lat = have_header
                    ? Lattice(std::move(theta), std::move(box))
                    : make_lattice_1d(1.0, 0, static_cast<std::int64_t>(n) - 1);
  if (lat.size() != n)
    throw std::invalid_argument("matrix csv: header lattice size != row count");
  std::vector<cplx> entries;
  entries.reserve(n * n);
  for (auto& r : rows) entries.insert(entries.end(), r.begin(), r.end());
  return LatticeMatrix(std::move(lat), std::move(entries));
}

void write_matrix_binary(std::ostream& os, const LatticeMatrix& A) {
  const char magic[8] = {'T', 'F', 'Q', 'M', 'A', 'T', '1', '\0'};
  os.write(magic, 8);
  const std::uint64_t d = A.lattice().dim();
  os.write(reinterpret_cast<const char*>(&d), 8);
  for (std::size_t a = 0; a < d; ++a) {
    const double t = A.lattice().theta()[a];
    const std::int64_t lo = A.lattice().box()[a].lo, hi = A.lattice().box()[a].hi;
    os.write(reinterpret_cast<const char*>(&t), 8);
    os.write(reinterpret_cast<const char*>(&lo), 8);
    os.write(reinterpret_cast<const char*>(&hi), 8);
  }
  os.write(reinterpret_cast<const char*>(A.entries().data()),
           static_cast<std::streamsize>(A.entries().size() * sizeof(cplx)));
}

LatticeMatrix read_matrix_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, "TFQMAT1\0", 8) != 0)
    throw std::invalid_argument("matrix binary: bad magic");
  std::uint64_t d = 0;
  is.read(reinterpret_cast<char*>(&d), 8);
  std::vector<double> theta(d);
  std::vector<AxisRange> box(d);
  for (std::size_t a = 0; a < d; ++a) {
    is.read(reinterpret_cast<char*>(&theta[a]), 8);
    is.read(reinterpret_cast<char*>(&box[a].lo), 8);
    is.read(reinterpret_cast<char*>(&box[a].hi), 8);
  }
  Lattice lat(std::move(theta), std::move(box));
  std::vector<cplx> entries(lat.size() * lat.size());
  is.read(reinterpret_cast<char*>(entries.data()),
          static_cast<std::streamsize>(entries.size() * sizeof(cplx)));
  if (!is) throw std::invalid_argument("matrix binary: truncated payload");
  return LatticeMatrix(std::move(lat), std::move(entries));
}

}  // namespace tfq
