#include <doctest.h>

#include <cmath>

#include "tfq/gabor.hpp"
#include "tfq/rng.hpp"

using namespace tfq;

namespace {

CyclicGridFunction random_function(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CyclicGridFunction f(n);
  for (auto& v : f.values) v = rng.cnormal();
  return f;
}

double diff_norm(const CyclicGridFunction& a, const CyclicGridFunction& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.n; ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("windows are unit vectors") {
  for (const std::size_t n : {32, 63, 128}) {
    CHECK(gaussian_window(n).norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hann_window(n).norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_window(n).norm2() == 1.0);
  }
}

TEST_CASE("stft of the delta pair") {
  const std::size_t n = 16;
  const CyclicGridFunction d = delta_window(n);
  const TimeFreqArray v = stft(d, d);
  const double pref = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) {
      const double expect = m == 0 ? pref : 0.0;
      CHECK(std::abs(v.at(m, k)) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("stft shift covariance in modulus") {
  const std::size_t n = 32;
  const CyclicGridFunction phi = gaussian_window(n);
  const CyclicGridFunction f = random_function(n, 5);
  const std::int64_t shift = 7;
  const TimeFreqArray v0 = stft(f, phi);
  const TimeFreqArray v1 = stft(time_freq_shift(f, shift, 0), phi);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(v1.at(m, k)) ==
            doctest::Approx(std::abs(v0.at((m + n - 7) % n, k))).epsilon(1e-10));
}

TEST_CASE("Gaussian ambiguity decay matches the continuum closed form") {
  // |V_phi phi(x, xi)| is proportional to e^{-(x^2+xi^2)/4}, evaluated via
  // the Gaussian integral
  const std::size_t n = 256;
  const double h = grid_step(n);
  const CyclicGridFunction phi = gaussian_window(n);
  const TimeFreqArray v = stft(phi, phi);
  const double v00 = std::abs(v.at(0, 0));
  CHECK(v00 > 0.0);
  for (std::int64_t m = -16; m <= 16; m += 2)
    for (std::int64_t k = -16; k <= 16; k += 2) {
      const double x = static_cast<double>(m) * h;
      const double xi = static_cast<double>(k) * h;
      const double target = std::exp(-(x * x + xi * xi) / 4.0);
      if (target < 1e-8) continue;
      const double got =
          std::abs(v.at(static_cast<std::size_t>((m + static_cast<std::int64_t>(n)) %
                                                 static_cast<std::int64_t>(n)),
                        static_cast<std::size_t>((k + static_cast<std::int64_t>(n)) %
                                                 static_cast<std::int64_t>(n)))) /
          v00;
      CHECK(got == doctest::Approx(target).epsilon(1e-3));
    }
}

TEST_CASE("analysis basics") {
  const std::size_t n = 64;
  const CyclicGridFunction phi = gaussian_window(n);

  CyclicGridFunction zero(n);
  const GaborCoefficients cz = analysis_with(phi, 4, 4, zero);
  for (const cplx& v : cz.v) CHECK(v == cplx(0.0, 0.0));

  // f = phi: coefficient at (0,0) equals the direct sum N^{-1/2} sum |phi|^2
  const GaborCoefficients cp = analysis_with(phi, 4, 4, phi);
  double direct = 0.0;
  for (std::size_t y = 0; y < n; ++y) direct += std::norm(phi[y]);
  direct /= std::sqrt(static_cast<double>(n));
  CHECK(std::abs(cp.at(0, 0) - direct) <= 1e-13);

  // linearity
  const CyclicGridFunction f = random_function(n, 2);
  const CyclicGridFunction g = random_function(n, 3);
  CyclicGridFunction fg(n);
  const cplx alpha(0.3, -1.2);
  for (std::size_t i = 0; i < n; ++i) fg[i] = f[i] + alpha * g[i];
  const GaborCoefficients ca = analysis_with(phi, 4, 4, f);
  const GaborCoefficients cb = analysis_with(phi, 4, 4, g);
  const GaborCoefficients cc = analysis_with(phi, 4, 4, fg);
  for (std::size_t i = 0; i < cc.v.size(); ++i)
    CHECK(std::abs(cc.v[i] - (ca.v[i] + alpha * cb.v[i])) <= 1e-12);
}

TEST_CASE("synthesis is the exact adjoint of analysis") {
  const std::size_t n = 64;
  const CyclicGridFunction phi = gaussian_window(n);
  Rng rng(7);
  GaborCoefficients c(n / 4, n / 8);
  for (auto& v : c.v) v = rng.cnormal();
  const CyclicGridFunction f = random_function(n, 11);

  const CyclicGridFunction dc = synthesis_with(phi, 4, 8, c);
  cplx lhs(0.0, 0.0);
  for (std::size_t x = 0; x < n; ++x) lhs += dc[x] * std::conj(f[x]);
  const GaborCoefficients cf = analysis_with(phi, 4, 8, f);
  cplx rhs(0.0, 0.0);
  for (std::size_t i = 0; i < cf.v.size(); ++i) rhs += c.v[i] * std::conj(cf.v[i]);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs) + 1e-14);

  // delta coefficients reproduce the window up to the adjoint normalization
  GaborCoefficients d(n / 4, n / 8);
  d.at(0, 0) = 1.0;
  const CyclicGridFunction w = synthesis_with(phi, 4, 8, d);
  const double pref = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t x = 0; x < n; ++x)
    CHECK(std::abs(w[x] - pref * phi[x]) <= 1e-14);

  // zero coefficients give zero
  GaborCoefficients z(n / 4, n / 8);
  const CyclicGridFunction zf = synthesis_with(phi, 4, 8, z);
  for (const cplx& v : zf.values) CHECK(v == cplx(0.0, 0.0));
}

TEST_CASE("full lattice gives a tight frame with S = I for a unit window") {
  const std::size_t n = 24;
  GaborSystem sys = make_gabor_system(gaussian_window(n), 1, 1);
  const CyclicGridFunction f = random_function(n, 13);
  const CyclicGridFunction sf = frame_operator(sys, f);
  CHECK(diff_norm(sf, f) <= 1e-12 * f.norm2());
  const DualReport rep = canonical_dual(sys);
  CHECK(rep.condition_number <= 1.0 + 1e-10);
  for (std::size_t x = 0; x < n; ++x)
    CHECK(std::abs((*sys.dual)[x] - sys.window[x]) <= 1e-12);
}

TEST_CASE("canonical dual and reconstruction for the periodized Gaussian") {
  const std::size_t n = 128;
  GaborSystem sys = make_gabor_system(gaussian_window(n), 8, 8);
  const DualReport rep = canonical_dual(sys);
  CHECK(rep.residual <= 1e-10);
  REQUIRE(sys.dual.has_value());

  // f = window reconstructs essentially exactly
  const ReconstructionReport r0 = reconstruct(sys, sys.window);
  CHECK(r0.residual_ds <= 1e-10);

  for (int t = 0; t < 10; ++t) {
    const ReconstructionReport r = reconstruct(sys, random_function(n, 50 + t));
    CHECK(r.residual_ds <= 1e-8);
    CHECK(r.residual_da <= 1e-8);
    CHECK(std::abs(r.residual_ds - r.residual_da) <= 1e-10);
  }

  CyclicGridFunction zero(n);
  const ReconstructionReport rz = reconstruct(sys, zero);
  CHECK(rz.residual_ds == 0.0);
}

TEST_CASE("under- and critically-sampled lattices are rejected") {
  const std::size_t n = 64;
  GaborSystem crit = make_gabor_system(gaussian_window(n), 8, 8);  // a b = N
  CHECK_THROWS_AS(canonical_dual(crit), FrameConditionError);
  CHECK_THROWS_AS(make_gabor_system(gaussian_window(n), 3, 4),
                  std::invalid_argument);  // steps must divide N
  GaborSystem single = make_gabor_system(gaussian_window(n), n, n);
  CHECK_THROWS_AS(canonical_dual(single), FrameConditionError);
  CHECK_THROWS_AS(reconstruct(crit, delta_window(n)), std::invalid_argument);
}

TEST_CASE("frame operator commutes with lattice time-frequency shifts") {
  const std::size_t n = 64;
  GaborSystem sys = make_gabor_system(gaussian_window(n), 4, 8);
  for (int t = 0; t < 8; ++t) {
    const CyclicGridFunction f = random_function(n, 400 + t);
    const std::int64_t j = 4 * (t % (n / 4));
    const std::int64_t i = 8 * ((3 * t) % (n / 8));
    const CyclicGridFunction lhs = frame_operator(sys, time_freq_shift(f, j, i));
    const CyclicGridFunction rhs = time_freq_shift(frame_operator(sys, f), j, i);
    CHECK(diff_norm(lhs, rhs) <= 1e-10 * rhs.norm2());
  }
}

TEST_CASE("stft isometry and modulation norm identities") {
  const std::size_t n = 64;
  const CyclicGridFunction phi = gaussian_window(n);
  const CyclicGridFunction f = random_function(n, 21);

  // finite Moyal identity, counting measure
  const TimeFreqArray v = stft(f, phi);
  double sum = 0.0;
  for (const cplx& z : v.v) sum += std::norm(z);
  const double target = f.norm2() * f.norm2();  // ||phi|| = 1
  CHECK(sum == doctest::Approx(target).epsilon(1e-12));

  // M^2 in Riemann units equals the product of grid L^2 norms
  const double h = grid_step(n);
  const double m2 = modulation_norm(
      f, MixedExponent::flat(2, Exponent::finite(2.0)), Weight::one(), phi);
  CHECK(m2 == doctest::Approx(h * f.norm2()).epsilon(1e-10));

  // sup-exponent modulation norm is exactly max |V|
  double mx = 0.0;
  for (const cplx& z : v.v) mx = std::max(mx, std::abs(z));
  CHECK(modulation_norm(f, MixedExponent::flat(2, Exponent::infinity()),
                        Weight::one(), phi) == mx);

  // zero function
  CyclicGridFunction zero(n);
  CHECK(modulation_norm(zero, MixedExponent::flat(2, Exponent::finite(1.0)),
                        Weight::one(), phi) == 0.0);
}

TEST_CASE("grid and lattice modulation norms are uniformly equivalent") {
  const std::size_t n = 128;
  GaborSystem sys = make_gabor_system(gaussian_window(n), 4, 4);
  canonical_dual(sys);
  const MixedExponent e({Exponent::finite(1.0), Exponent::infinity()});
  double lo = 1e300, hi = 0.0;
  for (int t = 0; t < 20; ++t) {
    Rng rng(800 + t);
    CyclicGridFunction f(n);
    for (auto& v : f.values) v = rng.cnormal();
    const double grid = modulation_norm(f, e, Weight::one(), sys.window);
    const double lat = modulation_norm_lattice(sys, f, e, Weight::one());
    REQUIRE(lat > 0.0);
    lo = std::min(lo, grid / lat);
    hi = std::max(hi, grid / lat);
  }
  CHECK(hi / lo <= 10.0);
}

TEST_CASE("stft window bound ratios") {
  const std::size_t n = 64;
  const CyclicGridFunction g = gaussian_window(n);
  const Weight one = Weight::one();

  // p = 2 with trivial weights: the ratio is exactly 1 (Moyal on both sides)
  for (int t = 0; t < 5; ++t) {
    const CyclicGridFunction f = random_function(n, 30 + t);
    const StftWindowBoundReport rep = check_stft_window_bound(
        f, g, Exponent::finite(2.0), one, one, one, g);
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-10));
  }

  // p = 1 Gaussian-type family: ratios bounded
  for (int t = 0; t < 20; ++t) {
    Rng rng(60 + t);
    CyclicGridFunction f(n);
    for (auto& v : f.values) v = rng.cnormal();
    const StftWindowBoundReport rep =
        check_stft_window_bound(f, g, Exponent::finite(1.0), one, one, one, g);
    CHECK(rep.ratio > 0.0);
    CHECK(rep.ratio <= 100.0);
  }

  // zero input
  CyclicGridFunction zero(n);
  CHECK(check_stft_window_bound(zero, g, Exponent::finite(1.0), one, one, one, g)
            .ratio == 0.0);

  CHECK_THROWS_AS(check_stft_window_bound(zero, g, Exponent::finite(3.0), one,
                                          one, one, g),
                  std::invalid_argument);
}
