#include "tfq/schatten.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace tfq {

namespace {

using EMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const LatticeMatrix& A) {
  const auto n = static_cast<Eigen::Index>(A.n());
  return Eigen::Map<const EMatrix>(A.entries().data(), n, n);
}

SingularSpectrum svd_spectrum(const EMatrix& m) {
  Eigen::JacobiSVD<EMatrix> svd(m);
  SingularSpectrum s;
  s.values.assign(svd.singularValues().data(),
                  svd.singularValues().data() + svd.singularValues().size());
  return s;
}

std::vector<double> weight_on_lattice(const Weight& w, const Lattice& lat) {
  std::vector<double> vals(lat.size());
  std::vector<double> pt(lat.dim());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    lat.point(i, pt.data());
    vals[i] = w(pt);
  }
  return vals;
}

}  // namespace

std::size_t SingularSpectrum::numerical_rank() const {
  if (values.empty() || values[0] == 0.0) return 0;
  const double floor = 1e-13 * values[0];
  std::size_t r = 0;
  while (r < values.size() && values[r] > floor) ++r;
  return r;
}

SingularSpectrum singular_values(const LatticeMatrix& A, const Weight& w1,
                                 const Weight& w2) {
  const Lattice& lat = A.lattice();
  const auto d1 = weight_on_lattice(w1, lat);
  const auto d2 = weight_on_lattice(w2, lat);
  EMatrix m = to_eigen(A);
  for (std::size_t j = 0; j < A.n(); ++j)
    for (std::size_t k = 0; k < A.n(); ++k)
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *=
          d2[j] / d1[k];
  return svd_spectrum(m);
}

SingularSpectrum singular_values(const LatticeMatrix& A) {
  return svd_spectrum(to_eigen(A));
}

double schatten_norm(const SingularSpectrum& s, const Exponent& p) {
  return lp_reduce(s.values, p);
}

double schatten_norm(const LatticeMatrix& A, const Exponent& p,
                     const Weight& w1, const Weight& w2) {
  return schatten_norm(singular_values(A, w1, w2), p);
}

EmbeddingReport verify_schatten_embedding(const LatticeMatrix& A,
                                          const Exponent& p, const Weight& w1,
                                          const Weight& w2,
                                          bool probe_above_two, double slack) {
  const bool above_two = p.as_double() > 2.0;
  if (above_two && !probe_above_two)
    throw std::invalid_argument(
        "verify_schatten_embedding: p > 2 is outside the theorem; use probe mode");

  const Weight w0 = Weight::pair_quotient(w2, w1, A.lattice().dim());
  EmbeddingReport rep;
  rep.schatten = schatten_norm(A, p, w1, w2);
  rep.u_p = u_norm(A, p, p, w0);
  rep.ratio = rep.u_p == 0.0 ? (rep.schatten == 0.0 ? 0.0 : HUGE_VAL)
                             : rep.schatten / rep.u_p;
  rep.normative = !above_two;
  rep.pass = !above_two && rep.schatten <= rep.u_p * (1.0 + slack);
  return rep;
}

HolderReport check_holder_composition(const LatticeMatrix& t1,
                                      const LatticeMatrix& t2,
                                      const Exponent& p0, const Exponent& p1,
                                      const Exponent& p2, double slack) {
  if (std::abs(p0.reciprocal() - (p1.reciprocal() + p2.reciprocal())) > 1e-12)
    throw std::invalid_argument(
        "check_holder_composition: need 1/p1 + 1/p2 = 1/p0");
  HolderReport rep;
  rep.lhs = schatten_norm(singular_values(t2.multiply(t1)), p0);
  rep.rhs = schatten_norm(singular_values(t1), p1) *
            schatten_norm(singular_values(t2), p2);
  rep.pass = rep.lhs <= rep.rhs * (1.0 + slack);
  return rep;
}

PTriangleReport check_p_triangle(const std::vector<LatticeMatrix>& summands,
                                 const Exponent& p, double slack) {
  if (summands.empty())
    throw std::invalid_argument("check_p_triangle: no summands");
  if (p.as_double() > 1.0)
    throw std::invalid_argument("check_p_triangle: need p <= 1");
  const double pv = p.value();

  LatticeMatrix total = summands[0];
  for (std::size_t i = 1; i < summands.size(); ++i) {
    if (!(summands[i].lattice() == total.lattice()))
      throw std::invalid_argument("check_p_triangle: shape mismatch");
    for (std::size_t e = 0; e < total.entries().size(); ++e)
      total.entries()[e] += summands[i].entries()[e];
  }

  PTriangleReport rep;
  rep.lhs_pow = std::pow(schatten_norm(singular_values(total), p), pv);
  for (const auto& t : summands)
    rep.rhs_pow += std::pow(schatten_norm(singular_values(t), p), pv);
  rep.pass = rep.lhs_pow <= rep.rhs_pow * (1.0 + slack);
  return rep;
}

}  // namespace tfq
