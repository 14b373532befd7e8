#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "tfq/rng.hpp"
#include "tfq/schatten.hpp"

using namespace tfq;

namespace {

LatticeMatrix random_matrix(const Lattice& lat, std::uint64_t seed) {
  Rng rng(seed);
  LatticeMatrix a(lat);
  for (auto& v : a.entries()) v = rng.cnormal();
  return a;
}

const Exponent kTwo = Exponent::finite(2.0);

// Haar-ish unitary via QR of a Gaussian matrix.
LatticeMatrix random_unitary(const Lattice& lat, std::uint64_t seed) {
  using M = Eigen::MatrixXcd;
  const auto n = static_cast<Eigen::Index>(lat.size());
  Rng rng(seed);
  M g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) g(j, k) = rng.cnormal();
  const M q = Eigen::HouseholderQR<M>(g).householderQ();
  LatticeMatrix u(lat);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = q(j, k);
  return u;
}

}  // namespace

TEST_CASE("spectra of structured matrices") {
  const Lattice lat = make_lattice_1d(1.0, 0, 2);

  const SingularSpectrum id = singular_values(LatticeMatrix::identity(lat));
  for (double s : id.values) CHECK(s == doctest::Approx(1.0).epsilon(1e-14));

  LatticeMatrix d(lat);
  d.at(0, 0) = 3.0;
  d.at(1, 1) = 1.0;
  d.at(2, 2) = 2.0;
  const SingularSpectrum sd = singular_values(d);
  CHECK(sd.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(sd.values[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sd.values[2] == doctest::Approx(1.0).epsilon(1e-14));

  // rank one u v^*
  Rng rng(3);
  const Lattice lat8 = make_lattice_1d(1.0, 0, 7);
  std::vector<cplx> u(8), v(8);
  for (auto& z : u) z = rng.cnormal();
  for (auto& z : v) z = rng.cnormal();
  LatticeMatrix r1(lat8);
  double nu = 0.0, nv = 0.0;
  for (std::size_t j = 0; j < 8; ++j) {
    nu += std::norm(u[j]);
    nv += std::norm(v[j]);
    for (std::size_t k = 0; k < 8; ++k) r1.at(j, k) = u[j] * std::conj(v[k]);
  }
  const SingularSpectrum s1 = singular_values(r1);
  CHECK(s1.values[0] ==
        doctest::Approx(std::sqrt(nu * nv)).epsilon(1e-12));
  CHECK(s1.numerical_rank() == 1);
}

TEST_CASE("schatten norm closed forms") {
  const Lattice lat = make_lattice_1d(1.0, 0, 5);
  const SingularSpectrum id = singular_values(LatticeMatrix::identity(lat));
  for (const double p : {0.5, 1.0, 2.0, 5.0})
    CHECK(schatten_norm(id, Exponent::finite(p)) ==
          doctest::Approx(std::pow(6.0, 1.0 / p)).epsilon(1e-13));
  CHECK(schatten_norm(id, Exponent::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // p = 2 equals the Frobenius norm of the conjugated matrix
  const LatticeMatrix a = random_matrix(lat, 5);
  const Weight w1 = Weight::polynomial(0.5);
  const Weight w2 = Weight::exponential(0.1);
  double frob = 0.0;
  for (std::size_t j = 0; j < a.n(); ++j)
    for (std::size_t k = 0; k < a.n(); ++k) {
      const double scale =
          w2(lat.point(j)) / w1(lat.point(k));
      frob += std::norm(a.at(j, k)) * scale * scale;
    }
  CHECK(schatten_norm(a, kTwo, w1, w2) ==
        doctest::Approx(std::sqrt(frob)).epsilon(1e-12));
}

TEST_CASE("weighted spectra come from the conjugated matrix") {
  const Lattice lat = make_lattice_1d(1.0, -2, 2);
  const LatticeMatrix a = random_matrix(lat, 11);
  const Weight w1 = Weight::polynomial(1.0);
  const Weight w2 = Weight::polynomial(-0.5);
  LatticeMatrix conj(lat);
  for (std::size_t j = 0; j < a.n(); ++j)
    for (std::size_t k = 0; k < a.n(); ++k)
      conj.at(j, k) = a.at(j, k) * w2(lat.point(j)) / w1(lat.point(k));
  const SingularSpectrum lhs = singular_values(a, w1, w2);
  const SingularSpectrum rhs = singular_values(conj);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    CHECK(lhs.values[i] == doctest::Approx(rhs.values[i]).epsilon(1e-12));

  // scaling w2 alone scales the spectrum
  const Weight w2c = Weight::product(w2, Weight::constant(3.0));
  const SingularSpectrum scaled = singular_values(a, w1, w2c);
  for (std::size_t i = 0; i < lhs.size(); ++i)
    CHECK(scaled.values[i] == doctest::Approx(3.0 * lhs.values[i]).epsilon(1e-12));
}

TEST_CASE("spectrum is invariant under unitary conjugation") {
  const Lattice lat = make_lattice_1d(1.0, 0, 11);
  const LatticeMatrix a = random_matrix(lat, 17);
  const LatticeMatrix u = random_unitary(lat, 19);
  const LatticeMatrix v = random_unitary(lat, 23);
  const SingularSpectrum base = singular_values(a);
  const SingularSpectrum rot = singular_values(u.multiply(a).multiply(v));
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(rot.values[i] == doctest::Approx(base.values[i]).epsilon(1e-10));
}

TEST_CASE("schatten embedding: equality cases and random suite") {
  const Weight one = Weight::one();
  const Lattice lat = make_lattice_1d(1.0, 0, 7);

  // identity: both sides n^{1/p}
  for (const double p : {0.5, 1.0, 2.0}) {
    const EmbeddingReport rep = verify_schatten_embedding(
        LatticeMatrix::identity(lat), Exponent::finite(p), one, one);
    CHECK(rep.pass);
    CHECK(rep.schatten == doctest::Approx(rep.u_p).epsilon(1e-12));
  }

  // p = 2: Hilbert-Schmidt identification is an equality
  for (int t = 0; t < 20; ++t) {
    const LatticeMatrix a = random_matrix(lat, 900 + t);
    const EmbeddingReport rep = verify_schatten_embedding(a, kTwo, one, one);
    CHECK(std::abs(rep.schatten - rep.u_p) <= 1e-12 * rep.u_p);
  }

  // p = 1/2 with polynomial weights
  const Weight w1 = Weight::polynomial(1.0);
  const Weight w2 = Weight::polynomial(-0.5);
  const Lattice lat16 = make_lattice_1d(1.0, 0, 15);
  for (int t = 0; t < 20; ++t) {
    const LatticeMatrix a = random_matrix(lat16, 1000 + t);
    CHECK(verify_schatten_embedding(a, Exponent::finite(0.5), w1, w2).pass);
  }
}

TEST_CASE("p > 2 is probe-only and admits counterexamples") {
  const Weight one = Weight::one();
  const Lattice lat = make_lattice_1d(1.0, 0, 15);
  const LatticeMatrix a = random_matrix(lat, 3);
  CHECK_THROWS_AS(verify_schatten_embedding(a, Exponent::finite(3.0), one, one),
                  std::invalid_argument);

  LatticeMatrix ones(lat);
  for (auto& v : ones.entries()) v = 1.0;
  const EmbeddingReport rep = verify_schatten_embedding(
      ones, Exponent::finite(4.0), one, one, /*probe_above_two=*/true);
  CHECK(!rep.normative);
  CHECK(rep.ratio > 1.0);
}

TEST_CASE("Hoelder composition for Schatten classes") {
  const Lattice lat = make_lattice_1d(1.0, 0, 9);

  // identity pair: exact exponent identity n^{1/p0} = n^{1/p1} n^{1/p2}
  const LatticeMatrix id = LatticeMatrix::identity(lat);
  const HolderReport idrep = check_holder_composition(
      id, id, Exponent::finite(1.0), kTwo, kTwo);
  CHECK(idrep.pass);
  CHECK(idrep.lhs == doctest::Approx(idrep.rhs).epsilon(1e-12));

  for (int t = 0; t < 20; ++t) {
    const LatticeMatrix t1 = random_matrix(lat, 50 + t);
    const LatticeMatrix t2 = random_matrix(lat, 80 + t);
    CHECK(check_holder_composition(t1, t2, Exponent::finite(1.0), kTwo, kTwo).pass);
    CHECK(check_holder_composition(t1, t2, Exponent::finite(0.5),
                                   Exponent::finite(1.0), Exponent::finite(1.0))
              .pass);
  }

  // projection composed with a random map
  LatticeMatrix proj(lat);
  for (std::size_t j = 0; j < 5; ++j) proj.at(j, j) = 1.0;
  CHECK(check_holder_composition(random_matrix(lat, 7), proj,
                                 Exponent::finite(1.0), kTwo, kTwo)
            .pass);

  CHECK_THROWS_AS(
      check_holder_composition(id, id, Exponent::finite(1.0), kTwo,
                               Exponent::finite(3.0)),
      std::invalid_argument);
}

TEST_CASE("p-triangle inequality for p <= 1") {
  const Lattice lat = make_lattice_1d(1.0, 0, 9);

  // single summand: equality
  const LatticeMatrix a = random_matrix(lat, 2);
  const PTriangleReport single = check_p_triangle({a}, Exponent::finite(0.5));
  CHECK(single.pass);
  CHECK(single.lhs_pow == doctest::Approx(single.rhs_pow).epsilon(1e-12));

  // orthogonal rank-one summands at p = 1: disjoint spectra, equality
  LatticeMatrix e1(lat), e2(lat);
  e1.at(0, 0) = 2.0;
  e2.at(5, 5) = 3.0;
  const PTriangleReport ortho = check_p_triangle({e1, e2}, Exponent::finite(1.0));
  CHECK(ortho.pass);
  CHECK(ortho.lhs_pow == doctest::Approx(ortho.rhs_pow).epsilon(1e-12));

  // ten random summands at p = 0.7
  std::vector<LatticeMatrix> parts;
  for (int i = 0; i < 10; ++i) parts.push_back(random_matrix(lat, 300 + i));
  CHECK(check_p_triangle(parts, Exponent::finite(0.7)).pass);

  CHECK_THROWS_AS(check_p_triangle({a}, Exponent::finite(1.5)),
                  std::invalid_argument);
}

TEST_CASE("monotonicity and singular value decay") {
  const Lattice lat = make_lattice_1d(1.0, 0, 11);
  const LatticeMatrix a = random_matrix(lat, 8);
  const SingularSpectrum s = singular_values(a);

  // I_p norm is non-increasing in p
  double prev = schatten_norm(s, Exponent::finite(0.4));
  for (const double p : {0.7, 1.0, 2.0, 4.0}) {
    const double cur = schatten_norm(s, Exponent::finite(p));
    CHECK(cur <= prev * (1.0 + 1e-12));
    prev = cur;
  }
  CHECK(schatten_norm(s, Exponent::infinity()) <= prev * (1.0 + 1e-12));

  // sigma_j <= ||T||_{I_p} j^{-1/p}
  for (const double p : {0.5, 1.0, 2.0}) {
    const double np = schatten_norm(s, Exponent::finite(p));
    for (std::size_t j = 0; j < s.size(); ++j)
      CHECK(s.values[j] <=
            np * std::pow(static_cast<double>(j + 1), -1.0 / p) * (1.0 + 1e-12));
  }

  // normalized spectrum: non-increasing in p with sigma_1 <= 1
  SingularSpectrum unital = s;
  for (auto& v : unital.values) v /= s.values[0];
  double last = schatten_norm(unital, Exponent::finite(0.5));
  for (const double p : {1.0, 2.0, 8.0}) {
    const double cur = schatten_norm(unital, Exponent::finite(p));
    CHECK(cur <= last * (1.0 + 1e-12));
    last = cur;
  }
}
