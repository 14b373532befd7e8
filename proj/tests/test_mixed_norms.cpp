#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfq/mixed_norms.hpp"
#include "tfq/rng.hpp"

using namespace tfq;

namespace {

SequenceArray random_seq(const Lattice& lat, std::uint64_t seed) {
  Rng rng(seed);
  SequenceArray f(lat);
  for (auto& v : f.values) v = rng.cnormal();
  return f;
}

}  // namespace

TEST_CASE("two-step reduction on a 2x2 example") {
  // f = [[1,2],[3,4]], p = (1, inf): l^1 over axis 1 gives (4,6), sup gives 6
  const Lattice lat = make_lattice({1.0, 1.0}, {{0, 1}, {0, 1}});
  SequenceArray f(lat, {1.0, 2.0, 3.0, 4.0});
  const MixedExponent e({Exponent::finite(1.0), Exponent::infinity()});
  CHECK(mixed_seq_norm(f, e, Weight::one()) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("all-sup norm is the weighted max") {
  const Lattice lat = make_lattice({1.0, 1.0}, {{-2, 2}, {-1, 3}});
  const SequenceArray f = random_seq(lat, 3);
  const Weight w = Weight::polynomial(1.0);
  double expect = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto pt = lat.point(i);
    expect = std::max(expect, std::abs(f.values[i]) * w(pt));
  }
  const MixedExponent e = MixedExponent::flat(2, Exponent::infinity());
  CHECK(mixed_seq_norm(f, e, w) == expect);
}

TEST_CASE("single-point lattice returns the weighted modulus") {
  const Lattice lat = make_lattice_1d(2.0, 3, 3);
  SequenceArray f(lat, {cplx(3.0, 4.0)});
  const MixedExponent e({Exponent::finite(0.7)});
  const Weight w = Weight::polynomial(1.0);
  CHECK(mixed_seq_norm(f, e, w) ==
        doctest::Approx(5.0 * w({6.0})).epsilon(1e-14));
}

TEST_CASE("flat exponents are permutation invariant") {
  const Lattice lat = make_lattice({1.0, 1.0, 1.0}, {{0, 2}, {0, 1}, {0, 3}});
  const SequenceArray f = random_seq(lat, 11);
  for (const double p : {0.5, 1.0, 2.0}) {
    const MixedExponent id = MixedExponent::flat(3, Exponent::finite(p));
    const MixedExponent perm({Exponent::finite(p), Exponent::finite(p),
                              Exponent::finite(p)},
                             {2, 0, 1});
    CHECK(mixed_seq_norm(f, id, Weight::one()) ==
          doctest::Approx(mixed_seq_norm(f, perm, Weight::one())).epsilon(1e-13));
  }
}

TEST_CASE("sigma changes the reduction order for mixed exponents") {
  const Lattice lat = make_lattice({1.0, 1.0}, {{0, 1}, {0, 1}});
  SequenceArray f(lat, {1.0, 2.0, 3.0, 4.0});
  const MixedExponent e_id({Exponent::finite(1.0), Exponent::infinity()});
  // swapping the axes reduces axis 1 first: l^1 over columns gives (3,7),
  // then sup -> 7
  const MixedExponent e_sw({Exponent::finite(1.0), Exponent::infinity()}, {1, 0});
  CHECK(mixed_seq_norm(f, e_id, Weight::one()) == doctest::Approx(6.0));
  CHECK(mixed_seq_norm(f, e_sw, Weight::one()) == doctest::Approx(7.0));
}

TEST_CASE("quasi-homogeneity up to ulp-scale error") {
  const Lattice lat = make_lattice({1.0, 1.0}, {{0, 4}, {0, 4}});
  const SequenceArray f = random_seq(lat, 5);
  const MixedExponent e({Exponent::finite(0.4), Exponent::finite(3.0)});
  const double base = mixed_seq_norm(f, e, Weight::one());
  for (const double alpha : {1e-3, 0.37, 42.0, 1e5}) {
    SequenceArray g = f;
    for (auto& v : g.values) v *= alpha;
    CHECK(mixed_seq_norm(g, e, Weight::one()) ==
          doctest::Approx(alpha * base).epsilon(4e-16));
  }
}

TEST_CASE("p-triangle inequality in both regimes") {
  const Lattice lat = make_lattice({1.0, 1.0}, {{0, 3}, {0, 3}});
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SequenceArray f = random_seq(lat, 100 + trial);
    const SequenceArray g = random_seq(lat, 200 + trial);
    SequenceArray sum = f;
    for (std::size_t i = 0; i < sum.size(); ++i) sum.values[i] += g.values[i];

    const MixedExponent quasi({Exponent::finite(0.6), Exponent::finite(2.0)});
    const double pmin = 0.6;
    const double lhs = std::pow(mixed_seq_norm(sum, quasi, Weight::one()), pmin);
    const double rhs = std::pow(mixed_seq_norm(f, quasi, Weight::one()), pmin) +
                       std::pow(mixed_seq_norm(g, quasi, Weight::one()), pmin);
    CHECK(lhs <= rhs * (1.0 + 1e-12));

    const MixedExponent banach({Exponent::finite(1.5), Exponent::finite(3.0)});
    CHECK(mixed_seq_norm(sum, banach, Weight::one()) <=
          (mixed_seq_norm(f, banach, Weight::one()) +
           mixed_seq_norm(g, banach, Weight::one())) *
              (1.0 + 1e-12));
  }
}

TEST_CASE("norm is monotone decreasing in the exponents") {
  const Lattice lat = make_lattice({1.0, 1.0}, {{0, 5}, {0, 5}});
  for (int trial = 0; trial < 10; ++trial) {
    const SequenceArray f = random_seq(lat, 300 + trial);
    const MixedExponent small({Exponent::finite(0.8), Exponent::finite(1.0)});
    const MixedExponent large({Exponent::finite(2.0), Exponent::infinity()});
    CHECK(mixed_seq_norm(f, large, Weight::one()) <=
          mixed_seq_norm(f, small, Weight::one()) * (1.0 + 1e-12));
  }
}

TEST_CASE("nested reduction equals the flat norm for equal exponents") {
  const Lattice lat = make_lattice({1.0, 1.0, 1.0}, {{0, 2}, {0, 2}, {0, 2}});
  const SequenceArray f = random_seq(lat, 23);
  for (const double p : {0.5, 1.0, 2.0, 7.0}) {
    const double nested =
        mixed_seq_norm(f, MixedExponent::flat(3, Exponent::finite(p)), Weight::one());
    const double flat = flat_seq_norm(f, Exponent::finite(p));
    CHECK(std::abs(nested - flat) / flat <= 1e-12);
  }
}

TEST_CASE("zero only for the zero sequence") {
  const Lattice lat = make_lattice_1d(1.0, 0, 7);
  SequenceArray f(lat);
  const MixedExponent e({Exponent::finite(0.3)});
  CHECK(mixed_seq_norm(f, e, Weight::one()) == 0.0);
  f.values[5] = 1e-200;
  CHECK(mixed_seq_norm(f, e, Weight::one()) > 0.0);
}

TEST_CASE("tiny exponents survive via the log-space path") {
  const Lattice lat = make_lattice_1d(1.0, 0, 2);
  SequenceArray f(lat, {1e-150, 1e-160, 1e-140});
  const double p = 0.05;
  const double got = mixed_seq_norm(f, MixedExponent({Exponent::finite(p)}), Weight::one());
  // direct evaluation with the max factored out
  const double m = 1e-140;
  double s = 0.0;
  for (const cplx& v : f.values) s += std::exp(p * std::log(std::abs(v) / m));
  CHECK(got == doctest::Approx(m * std::pow(s, 1.0 / p)).epsilon(1e-12));
  CHECK(std::isfinite(got));
}

TEST_CASE("Riemann sum of the constant function") {
  const std::size_t n = 37;
  const double h = 0.25;
  GridFunction f({n}, {h}, {0.0});
  for (auto& v : f.values) v = 1.0;
  CHECK(mixed_grid_norm(f, MixedExponent({Exponent::finite(1.0)}), Weight::one()) ==
        doctest::Approx(static_cast<double>(n) * h).epsilon(1e-14));
  // indicator of half the grid, sup norm
  GridFunction g({16}, {0.5}, {0.0});
  for (std::size_t i = 0; i < 8; ++i) g.values[i] = 1.0;
  CHECK(mixed_grid_norm(g, MixedExponent({Exponent::infinity()}), Weight::one()) == 1.0);
}

TEST_CASE("Gaussian L^2 Riemann norm matches the closed-form integral") {
  // midpoint samples of e^{-x^2/2} on [-10, 10]; quadrature target pi^{1/4}
  const std::size_t n = 1024;
  const double h = 20.0 / static_cast<double>(n);
  GridFunction f({n}, {h}, {-10.0 + 0.5 * h});
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -10.0 + (static_cast<double>(i) + 0.5) * h;
    f.values[i] = std::exp(-0.5 * x * x);
  }
  const double target = std::pow(std::numbers::pi, 0.25);  // (int e^{-x^2})^{1/2}
  CHECK(mixed_grid_norm(f, MixedExponent({Exponent::finite(2.0)}), Weight::one()) ==
        doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("convolution identities") {
  const Lattice lat = make_lattice_1d(1.0, 0, 1);
  SequenceArray h(lat, {1.0, 1.0});
  const SequenceArray hc = convolve(h, h);
  REQUIRE(hc.size() == 3);
  CHECK(hc.values[0] == cplx(1.0, 0.0));
  CHECK(hc.values[1] == cplx(2.0, 0.0));
  CHECK(hc.values[2] == cplx(1.0, 0.0));

  // delta is the identity element
  const Lattice lat8 = make_lattice_1d(1.0, 0, 7);
  SequenceArray delta(make_lattice_1d(1.0, 0, 0));
  delta.values[0] = 1.0;
  const SequenceArray c = random_seq(lat8, 9);
  const SequenceArray dc = convolve(delta, c);
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(std::abs(dc.values[i] - c.values[i]) == 0.0);

  SequenceArray zero(lat);
  const SequenceArray zc = convolve(zero, c);
  for (const cplx& v : zc.values) CHECK(v == cplx(0.0, 0.0));

  const Lattice other = make_lattice_1d(0.5, 0, 1);
  CHECK_THROWS_AS(convolve(h, SequenceArray(other)), std::invalid_argument);
}

TEST_CASE("quasi-Young estimate") {
  const Lattice lat = make_lattice_1d(1.0, 0, 63);

  SequenceArray delta(lat);
  delta.values[0] = 1.0;
  const SequenceArray c0 = random_seq(lat, 41);
  const auto rep0 = check_young_quasi(delta, c0,
                                      MixedExponent::flat(1, Exponent::finite(2.0)),
                                      Exponent::finite(1.0));
  CHECK(rep0.pass);
  CHECK(rep0.lhs == doctest::Approx(rep0.rhs).epsilon(1e-12));

  // nonnegative data, q = 1, p = 2 (classical Young case)
  Rng rng(55);
  SequenceArray h(lat), c(lat);
  for (auto& v : h.values) v = rng.uniform();
  for (auto& v : c.values) v = rng.uniform();
  CHECK(check_young_quasi(h, c, MixedExponent::flat(1, Exponent::finite(2.0)),
                          Exponent::finite(1.0))
            .pass);

  // random complex, q = 1/2, p = 1
  for (int t = 0; t < 10; ++t) {
    const SequenceArray a = random_seq(lat, 600 + t);
    const SequenceArray b = random_seq(lat, 700 + t);
    CHECK(check_young_quasi(a, b, MixedExponent::flat(1, Exponent::finite(1.0)),
                            Exponent::finite(0.5))
              .pass);
  }

  CHECK_THROWS_AS(
      check_young_quasi(h, c, MixedExponent::flat(1, Exponent::finite(2.0)),
                        Exponent::finite(1.5)),
      std::invalid_argument);
}

TEST_CASE("classical Young estimate for q >= 1") {
  const Lattice lat = make_lattice_1d(1.0, 0, 31);
  for (int t = 0; t < 10; ++t) {
    const SequenceArray a = random_seq(lat, 800 + t);
    const SequenceArray b = random_seq(lat, 900 + t);
    CHECK(check_young_classical(a, b, Exponent::finite(1.0), Exponent::finite(2.0)).pass);
    CHECK(check_young_classical(a, b, Exponent::finite(2.0), Exponent::finite(2.0)).pass);
  }
}
