#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tfq/matrix_bank.hpp"
#include "tfq/rng.hpp"

using namespace tfq;

namespace {

LatticeMatrix random_matrix(const Lattice& lat, std::uint64_t seed) {
  Rng rng(seed);
  LatticeMatrix a(lat);
  for (auto& v : a.entries()) v = rng.cnormal();
  return a;
}

const Exponent kTwo = Exponent::finite(2.0);
const Exponent kOne = Exponent::finite(1.0);

}  // namespace

TEST_CASE("u-norm of the identity") {
  const Lattice lat = make_lattice_1d(1.0, 0, 3);
  const LatticeMatrix id = LatticeMatrix::identity(lat);
  // H(., 0) = (1,1,1,1), all other shifted columns vanish
  CHECK(u_norm(id, kTwo, kTwo, Weight::one()) ==
        doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("u-norm of a single unit entry is 1 for every exponent pair") {
  const Lattice lat = make_lattice_1d(1.0, 0, 4);
  LatticeMatrix a(lat);
  a.at(2, 4) = 1.0;
  for (const Exponent& p : {Exponent::finite(0.5), kOne, Exponent::infinity()})
    for (const Exponent& q : {Exponent::finite(0.7), kTwo, Exponent::infinity()})
      CHECK(u_norm(a, p, q, Weight::one()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("u-norm of a diagonal matrix is the l^p norm of the diagonal") {
  const Lattice lat = make_lattice_1d(1.0, 0, 4);
  LatticeMatrix a(lat);
  const std::vector<double> d{3.0, 1.0, 4.0, 1.0, 5.0};
  for (std::size_t j = 0; j < 5; ++j) a.at(j, j) = d[j];
  for (const double p : {0.5, 1.0, 2.0, 3.0}) {
    double direct = 0.0;
    for (double v : d) direct += std::pow(v, p);
    direct = std::pow(direct, 1.0 / p);
    CHECK(u_norm(a, Exponent::finite(p), Exponent::finite(7.0), Weight::one()) ==
          doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("U^2 is the weighted Frobenius norm") {
  const Lattice lat = make_lattice_1d(1.0, -3, 3);
  const LatticeMatrix a = random_matrix(lat, 2);
  const Weight w0 =
      Weight::pair_quotient(Weight::polynomial(0.7), Weight::exponential(0.1), 1);
  double frob = 0.0;
  for (std::size_t j = 0; j < a.n(); ++j)
    for (std::size_t k = 0; k < a.n(); ++k) {
      const auto pj = lat.point(j), pk = lat.point(k);
      const double wv = w0({pj[0], pk[0]});
      frob += std::norm(a.at(j, k)) * wv * wv;
    }
  CHECK(u_norm(a, kTwo, kTwo, w0) ==
        doctest::Approx(std::sqrt(frob)).epsilon(1e-12));
}

TEST_CASE("all-ones 2x2 factorization, frozen values") {
  const Lattice lat = make_lattice_1d(1.0, 0, 1);
  LatticeMatrix a0(lat);
  for (auto& v : a0.entries()) v = 1.0;
  const Weight one = Weight::one();
  const Factorization f =
      factorize_left_diagonal(a0, kOne, kTwo, kTwo, one, one, one);

  const double sqrt2 = std::sqrt(2.0);
  CHECK(f.a1.is_diagonal());
  CHECK(std::abs(f.a1.at(0, 0) - sqrt2) <= 1e-15);
  CHECK(std::abs(f.a1.at(1, 1) - sqrt2) <= 1e-15);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(std::abs(f.a2.at(j, k) - 1.0 / sqrt2) <= 1e-15);
  CHECK(f.norm1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.norm2 == doctest::Approx(sqrt2).epsilon(1e-14));
  CHECK(f.norm0 == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(f.norm1 * f.norm2 <= f.norm0);
  CHECK(f.product_error <= 1e-15);
}

TEST_CASE("zero rows propagate through the factorization") {
  const Lattice lat = make_lattice_1d(1.0, 0, 3);
  LatticeMatrix a0 = random_matrix(lat, 5);
  for (std::size_t k = 0; k < 4; ++k) a0.at(2, k) = 0.0;
  const Weight one = Weight::one();
  const Factorization f =
      factorize_left_diagonal(a0, kOne, kTwo, kTwo, one, one, one);
  CHECK(f.a1.at(2, 2) == cplx(0.0, 0.0));
  for (std::size_t k = 0; k < 4; ++k) CHECK(f.a2.at(2, k) == cplx(0.0, 0.0));
  CHECK(f.product_error <= 1e-12);
}

TEST_CASE("identity factorizes into identities") {
  const Lattice lat = make_lattice_1d(1.0, 0, 5);
  const LatticeMatrix id = LatticeMatrix::identity(lat);
  const Weight one = Weight::one();
  const Factorization f =
      factorize_left_diagonal(id, kOne, kTwo, kTwo, one, one, one);
  for (std::size_t j = 0; j < id.n(); ++j) {
    CHECK(std::abs(f.a1.at(j, j) - 1.0) <= 1e-15);
    CHECK(std::abs(f.a2.at(j, j) - 1.0) <= 1e-15);
  }
}

TEST_CASE("right-diagonal factorization mirrors the left one") {
  const Lattice lat = make_lattice_1d(1.0, 0, 1);
  LatticeMatrix a0(lat);
  for (auto& v : a0.entries()) v = 1.0;
  const Weight one = Weight::one();
  const Factorization f =
      factorize_right_diagonal(a0, kOne, kTwo, kTwo, one, one, one);
  CHECK(f.a2.is_diagonal());
  CHECK(std::abs(f.a2.at(0, 0) - std::sqrt(2.0)) <= 1e-15);
  CHECK(f.product_error <= 1e-15);

  // diagonal input: both factors diagonal
  LatticeMatrix d(make_lattice_1d(1.0, 0, 3));
  for (std::size_t j = 0; j < 4; ++j) d.at(j, j) = cplx(0.5 + double(j), -1.0);
  const Factorization g =
      factorize_right_diagonal(d, kOne, kTwo, kTwo, one, one, one);
  CHECK(g.a1.is_diagonal(1e-15));
  CHECK(g.a2.is_diagonal(1e-15));
  CHECK(g.product_error <= 1e-13);

  // zero column handling
  LatticeMatrix z = random_matrix(make_lattice_1d(1.0, 0, 3), 7);
  for (std::size_t j = 0; j < 4; ++j) z.at(j, 1) = 0.0;
  const Factorization h =
      factorize_right_diagonal(z, kOne, kTwo, kTwo, one, one, one);
  CHECK(h.a2.at(1, 1) == cplx(0.0, 0.0));
  CHECK(h.product_error <= 1e-12);
}

TEST_CASE("norm law and product bound over random instances") {
  const Weight one = Weight::one();
  for (int t = 0; t < 40; ++t) {
    const std::int64_t n = 4 + (t % 4) * 8;
    const Lattice lat = make_lattice_1d(1.0, 0, n - 1);
    const LatticeMatrix a0 = random_matrix(lat, 100 + t);
    const double p0 = (t % 3 == 0) ? 0.5 : (t % 3 == 1 ? 1.0 : 1.5);
    const double alpha = (t % 2) ? 0.5 : 1.0 / 3.0;
    const Exponent e0 = Exponent::finite(p0);
    const Exponent e1 = Exponent::finite(p0 / alpha);
    const Exponent e2 = Exponent::finite(p0 / (1.0 - alpha));
    const Factorization f =
        factorize_left_diagonal(a0, e0, e1, e2, one, one, one);
    CHECK(f.product_error <= 1e-12);
    const double target = std::pow(f.norm0, p0 / e1.value());
    CHECK(std::abs(f.norm1 - target) / target <= 1e-10);
    CHECK(f.norm1 * f.norm2 <= f.norm0 * (1.0 + 1e-10));
  }
}

TEST_CASE("p0 = inf branch satisfies the product bound") {
  // the variant the construction pins down by its certificate rather than a
  // stated formula
  const Weight one = Weight::one();
  const Exponent inf = Exponent::infinity();
  for (int t = 0; t < 50; ++t) {
    const Lattice lat = make_lattice_1d(1.0, 0, 7 + (t % 3) * 4);
    const LatticeMatrix a0 = random_matrix(lat, 500 + t);
    const Factorization f =
        factorize_left_diagonal(a0, inf, inf, inf, one, one, one);
    CHECK(f.product_error <= 1e-12);
    CHECK(f.norm1 * f.norm2 <= f.norm0 * (1.0 + 1e-10));
  }
}

TEST_CASE("invalid factorizations are rejected") {
  const Lattice lat = make_lattice_1d(1.0, 0, 3);
  const LatticeMatrix a0 = random_matrix(lat, 1);
  const Weight one = Weight::one();
  CHECK_THROWS_AS(
      factorize_left_diagonal(a0, kOne, kTwo, Exponent::finite(3.0), one, one, one),
      std::invalid_argument);
  // weight condition violated: w1(j,j) w2(j,k) > w0(j,k)
  CHECK_THROWS_AS(
      factorize_left_diagonal(a0, kOne, kTwo, kTwo, one,
                              Weight::constant(3.0), one),
      std::invalid_argument);
}

TEST_CASE("chain factorization reconstructs and satisfies the product bound") {
  const Weight w1 = Weight::polynomial(1.0);
  const Weight w2 = Weight::polynomial(-0.5);
  for (const int nfac : {2, 3, 4}) {
    const Lattice lat = make_lattice_1d(1.0, 0, 7);
    const LatticeMatrix a = random_matrix(lat, 40 + nfac);
    const ChainFactorization chain = factorize_chain(a, nfac, w1, w2);
    REQUIRE(chain.factors.size() == static_cast<std::size_t>(nfac));
    CHECK(chain.product_error <= 1e-10);
    double prod = 1.0;
    for (double v : chain.factor_norms) prod *= v;
    CHECK(prod <= chain.chain_norm0 * (1.0 + 1e-10));
    for (int m = 0; m + 1 < nfac; ++m) CHECK(chain.factors[m].is_diagonal());
  }

  // identity input: all factors diagonal
  const Lattice lat = make_lattice_1d(1.0, 0, 5);
  const ChainFactorization idc =
      factorize_chain(LatticeMatrix::identity(lat), 3, Weight::one(), Weight::one());
  for (const auto& f : idc.factors) CHECK(f.is_diagonal(1e-14));

  CHECK_THROWS_AS(factorize_chain(LatticeMatrix::identity(lat), 1, w1, w2),
                  std::invalid_argument);
}

TEST_CASE("matrix application against the naive double loop") {
  const Lattice lat = make_lattice_1d(1.0, 0, 15);
  const LatticeMatrix a = random_matrix(lat, 3);
  Rng rng(9);
  SequenceArray f(lat);
  for (auto& v : f.values) v = rng.cnormal();

  const SequenceArray got = apply(a, f);
  for (std::size_t j = 0; j < a.n(); ++j) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < a.n(); ++k) acc += a.at(j, k) * f.values[k];
    CHECK(std::abs(got.values[j] - acc) <= 1e-14 * std::abs(acc) + 1e-16);
  }

  const SequenceArray idf = apply(LatticeMatrix::identity(lat), f);
  for (std::size_t j = 0; j < f.size(); ++j)
    CHECK(idf.values[j] == f.values[j]);
}

TEST_CASE("continuity certificate for admissible exponent tuples") {
  const Weight one = Weight::one();
  const Lattice lat = make_lattice_1d(1.0, 0, 15);

  // identity matrix: ratio stays at or below 1
  const MixedExponent two = MixedExponent::flat(1, kTwo);
  const ContinuityReport id_rep = check_continuity(
      LatticeMatrix::identity(lat), two, two, Exponent::infinity(), kOne, one,
      one, one, 20, 7);
  CHECK(id_rep.pass);
  CHECK(id_rep.worst_ratio <= 1.0 + 1e-12);

  // random matrices, (p, q) = (inf, 1)
  for (int t = 0; t < 5; ++t) {
    const LatticeMatrix a = random_matrix(lat, 700 + t);
    const ContinuityReport rep = check_continuity(
        a, two, two, Exponent::infinity(), kOne, one, one, one, 200, 11 + t);
    CHECK(rep.pass);
  }

  // rank-one matrix, p = q = 1, l^inf -> l^1
  LatticeMatrix rank1(lat);
  Rng rng(31);
  std::vector<cplx> u(lat.size()), v(lat.size());
  for (auto& z : u) z = rng.cnormal();
  for (auto& z : v) z = rng.cnormal();
  for (std::size_t j = 0; j < lat.size(); ++j)
    for (std::size_t k = 0; k < lat.size(); ++k)
      rank1.at(j, k) = u[j] * std::conj(v[k]);
  const ContinuityReport r1 = check_continuity(
      rank1, MixedExponent::flat(1, Exponent::infinity()),
      MixedExponent::flat(1, kOne), kOne, kOne, one, one, one, 100, 13);
  CHECK(r1.pass);

  // violated exponent relation is rejected before any trial
  CHECK_THROWS_AS(
      check_continuity(rank1, two, two, kTwo, kOne, one, one, one, 10, 1),
      std::invalid_argument);
}

TEST_CASE("csv and binary round trips") {
  const Lattice lat = make_lattice({0.5, 1.5}, {{-1, 1}, {0, 1}});
  const LatticeMatrix a = random_matrix(lat, 77);

  std::stringstream csv;
  write_matrix_csv(csv, a);
  const LatticeMatrix b = read_matrix_csv(csv);
  REQUIRE(b.lattice() == a.lattice());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    CHECK(a.entries()[i] == b.entries()[i]);  // %.17g round-trips doubles

  std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
  write_matrix_binary(bin, a);
  const LatticeMatrix c = read_matrix_binary(bin);
  REQUIRE(c.lattice() == a.lattice());
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    CHECK(a.entries()[i] == c.entries()[i]);
}
