#include "tfq/psido.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>

namespace tfq {

namespace {

using EMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t pos_mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

const CyclicGridFunction& cached_gaussian(std::size_t n) {
  static std::map<std::size_t, CyclicGridFunction> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gaussian_window(n)).first;
  return it->second;
}

Lattice unit_lattice(std::size_t n) {
  return make_lattice_1d(1.0, 0, static_cast<std::int64_t>(n) - 1);
}

}  // namespace

Symbol Symbol::constant(std::size_t n, cplx c) {
  Symbol s(n);
  for (auto& v : s.v) v = c;
  return s;
}

double Symbol::norm2() const {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

LatticeMatrix op0(const Symbol& a) {
  const std::size_t n = a.n;
  LatticeMatrix K(unit_lattice(n));
  const double pref = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cplx> row(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t xi = 0; xi < n; ++xi) row[xi] = a.at(x, xi);
    dft(row, true);  // F_2^{-1} along the xi axis
    for (std::size_t y = 0; y < n; ++y)
      K.at(x, y) = pref * row[static_cast<std::size_t>(pos_mod(
                       static_cast<std::int64_t>(x) - static_cast<std::int64_t>(y),
                       static_cast<std::int64_t>(n)))];
  }
  return K;
}

Symbol calculus_transform(const Symbol& a, double t1, double t2) {
  if (t1 == t2) return a;
  Symbol out = a;
  dft_2d(out.v, a.n, a.n, false);
  const double c = (t1 - t2) * kTwoPi / static_cast<double>(a.n);
  for (std::size_t u = 0; u < a.n; ++u) {
    const double us = static_cast<double>(signed_index(u, a.n));
    for (std::size_t w = 0; w < a.n; ++w) {
      const double ws = static_cast<double>(signed_index(w, a.n));
      out.v[u * a.n + w] *= std::polar(1.0, c * us * ws);
    }
  }
  dft_2d(out.v, a.n, a.n, true);
  return out;
}

LatticeMatrix op_t(const Symbol& a, double t) {
  return op0(calculus_transform(a, t, 0.0));
}

Symbol wigner_t(const CyclicGridFunction& f1, const CyclicGridFunction& f2,
                double t) {
  if (f1.n != f2.n) throw std::invalid_argument("wigner_t: size mismatch");
  const std::size_t n = f1.n;
  const CyclicGridFunction f2hat = unitary_dft(f2);
  Symbol w0(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi)
      w0.at(x, xi) =
          f1[x] * std::conj(f2hat[xi]) *
          std::polar(1.0, -kTwoPi * static_cast<double>(x) *
                              static_cast<double>(xi) / static_cast<double>(n));
  return calculus_transform(w0, 0.0, t);
}

Symbol rihaczek_window(const CyclicGridFunction& phi1,
                       const CyclicGridFunction& phi2) {
  return wigner_t(phi1, phi2, 0.0);
}

Symbol weyl_wigner(const CyclicGridFunction& f, const CyclicGridFunction& g) {
  if (f.n != g.n) throw std::invalid_argument("weyl_wigner: size mismatch");
  const std::size_t n = f.n;
  if (n % 2 == 0)
    throw std::invalid_argument("weyl_wigner: N must be odd (half shifts mod N)");
  Symbol w(n);
  std::vector<cplx> u(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t z = 0; z < n; ++z)
      u[z] = f.at_mod(static_cast<std::int64_t>(x) + static_cast<std::int64_t>(z)) *
             std::conj(g.at_mod(static_cast<std::int64_t>(x) -
                                static_cast<std::int64_t>(z)));
    dft(u, false);
    for (std::size_t xi = 0; xi < n; ++xi)
      w.at(x, xi) = u[(2 * xi) % n];
  }
  return w;
}

Symbol symplectic_ft(const Symbol& a) {
  const std::size_t n = a.n;
  if (n % 2 == 0)
    throw std::invalid_argument("symplectic_ft: N must be odd (index doubling)");
  Symbol ahat = a;
  dft_2d(ahat.v, n, n, false);
  Symbol out(n);
  const auto nn = static_cast<std::int64_t>(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi)
      out.at(x, xi) = ahat.at(
          static_cast<std::size_t>(pos_mod(-2 * static_cast<std::int64_t>(xi), nn)),
          static_cast<std::size_t>((2 * x) % n));
  return out;
}

// ---------------------------------------------------------------------------
// Phase-space Gabor machinery on Z_N^2.

std::vector<cplx> symbol_lattice_stft(const Symbol& a, const Symbol& window,
                                      std::size_t step) {
  const std::size_t n = a.n;
  if (window.n != n) throw std::invalid_argument("symbol_lattice_stft: size mismatch");
  if (step == 0 || n % step != 0)
    throw std::invalid_argument("symbol_lattice_stft: step must divide N");
  const std::size_t m = n / step;
  std::vector<cplx> out(m * m * m * m);
  std::vector<cplx> tmp(n * n);
  for (std::size_t mt1 = 0; mt1 < m; ++mt1) {
    const std::size_t s1 = mt1 * step;
    for (std::size_t mt2 = 0; mt2 < m; ++mt2) {
      const std::size_t s2 = mt2 * step;
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        const std::size_t w1 = (y1 + n - s1) % n;
        for (std::size_t y2 = 0; y2 < n; ++y2)
          tmp[y1 * n + y2] =
              a.v[y1 * n + y2] * std::conj(window.v[w1 * n + (y2 + n - s2) % n]);
      }
      dft_2d(tmp, n, n, false);
      cplx* dst = out.data() + ((mt1 * m + mt2) * m * m);
      for (std::size_t nf1 = 0; nf1 < m; ++nf1)
        for (std::size_t nf2 = 0; nf2 < m; ++nf2)
          dst[nf1 * m + nf2] = tmp[(nf1 * step) * n + nf2 * step];
    }
  }
  return out;
}

namespace {

// Adjoint-normalized 2-d synthesis: D c = N^{-1} sum c(m, k) M_k T_m window.
Symbol symbol_lattice_synthesis(const std::vector<cplx>& c, const Symbol& window,
                                std::size_t step) {
  const std::size_t n = window.n;
  const std::size_t m = n / step;
  Symbol out(n);
  std::vector<cplx> block(m * m);
  const double undo_unitary = static_cast<double>(m);
  for (std::size_t mt1 = 0; mt1 < m; ++mt1) {
    const std::size_t s1 = mt1 * step;
    for (std::size_t mt2 = 0; mt2 < m; ++mt2) {
      const std::size_t s2 = mt2 * step;
      const cplx* src = c.data() + ((mt1 * m + mt2) * m * m);
      std::copy(src, src + m * m, block.begin());
      dft_2d(block, m, m, true);
      for (std::size_t x1 = 0; x1 < n; ++x1) {
        const std::size_t w1 = (x1 + n - s1) % n;
        const std::size_t b1 = (x1 % m) * m;
        for (std::size_t x2 = 0; x2 < n; ++x2)
          out.v[x1 * n + x2] += undo_unitary * block[b1 + x2 % m] *
                                window.v[w1 * n + (x2 + n - s2) % n];
      }
    }
  }
  const double pref = 1.0 / static_cast<double>(n);
  for (auto& v : out.v) v *= pref;
  return out;
}

Symbol frame2_apply(const Symbol& f, const Symbol& window, std::size_t step) {
  return symbol_lattice_synthesis(symbol_lattice_stft(f, window, step), window,
                                  step);
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

PhaseSpaceSystem make_phase_space_system(const CyclicGridFunction& phi1,
                                         const CyclicGridFunction& phi2,
                                         std::size_t step, double tol) {
  if (phi1.n != phi2.n)
    throw std::invalid_argument("make_phase_space_system: window size mismatch");
  const std::size_t n = phi1.n;
  if (step == 0 || n % step != 0)
    throw std::invalid_argument("make_phase_space_system: step must divide N");
  if (step * step >= n)
    throw FrameConditionError(
        "make_phase_space_system: phase-space lattice not oversampled "
        "(need step^2 < N)",
        0.0);

  PhaseSpaceSystem sys;
  sys.n = n;
  sys.step = step;
  sys.phi1 = phi1;
  sys.phi2 = phi2;
  sys.window = rihaczek_window(phi1, phi2);

  // Conjugate gradients for S Psi = Phi; S is Hermitian positive definite on
  // an oversampled lattice.
  const std::vector<cplx>& phi = sys.window.v;
  std::vector<cplx> x = phi;
  Symbol xs(n);
  xs.v = x;
  std::vector<cplx> r(phi.size()), p, sp;
  {
    const Symbol sx = frame2_apply(xs, sys.window, step);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = phi[i] - sx.v[i];
  }
  p = r;
  double rs = std::real(dot(r, r));
  const double phinorm = std::sqrt(std::real(dot(phi, phi)));
  std::size_t it = 0;
  const std::size_t cap = 10 * n * n;
  while (std::sqrt(rs) > tol * phinorm && it < cap) {
    Symbol ps(n);
    ps.v = p;
    sp = frame2_apply(ps, sys.window, step).v;
    const double alpha = rs / std::real(dot(p, sp));
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * sp[i];
    }
    const double rs2 = std::real(dot(r, r));
    const double beta = rs2 / rs;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rs = rs2;
    ++it;
  }
  sys.cg_iterations = it;
  sys.dual = Symbol(n);
  sys.dual.v = x;
  {
    const Symbol sd = frame2_apply(sys.dual, sys.window, step);
    double d2 = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) d2 += std::norm(sd.v[i] - phi[i]);
    sys.dual_residual = std::sqrt(d2) / phinorm;
  }
  if (sys.dual_residual > 1e-8)
    throw FrameConditionError(
        "make_phase_space_system: dual solve stalled, residual " +
            std::to_string(sys.dual_residual),
        0.0);
  return sys;
}

Lattice phase_lattice(const PhaseSpaceSystem& sys) {
  const double th = static_cast<double>(sys.step) * grid_step(sys.n);
  const auto m = static_cast<std::int64_t>(sys.m());
  const std::int64_t lo = -(m / 2);
  return Lattice({th, th}, {{lo, lo + m - 1}, {lo, lo + m - 1}});
}

LatticeMatrix gabor_matrix(const Symbol& a, const PhaseSpaceSystem& sys) {
  if (a.n != sys.n) throw std::invalid_argument("gabor_matrix: size mismatch");
  const std::size_t m = sys.m();
  const auto nn = static_cast<std::int64_t>(sys.n);
  const auto step = static_cast<std::int64_t>(sys.step);
  const std::vector<cplx> V = symbol_lattice_stft(a, sys.dual, sys.step);

  const Lattice lat = phase_lattice(sys);
  LatticeMatrix A(lat);
  const double pref = 1.0 / std::sqrt(static_cast<double>(sys.n));
  const std::size_t npts = lat.size();

  std::vector<std::int64_t> jm(2), km(2);
  for (std::size_t jf = 0; jf < npts; ++jf) {
    lat.multi_index(jf, jm.data());
    const std::int64_t j = pos_mod(step * jm[0], nn);
    const std::int64_t iota = pos_mod(step * jm[1], nn);
    for (std::size_t kf = 0; kf < npts; ++kf) {
      lat.multi_index(kf, km.data());
      const std::int64_t k = pos_mod(step * km[0], nn);
      const std::int64_t kappa = pos_mod(step * km[1], nn);

      const std::int64_t dfreq1 = pos_mod(iota - kappa, nn);
      const std::int64_t dfreq2 = pos_mod(k - j, nn);
      const std::size_t idx =
          ((static_cast<std::size_t>(j / step) * m +
            static_cast<std::size_t>(kappa / step)) *
               m +
           static_cast<std::size_t>(dfreq1 / step)) *
              m +
          static_cast<std::size_t>(dfreq2 / step);
      const std::int64_t tphase = pos_mod(dfreq2 * kappa, nn);
      A.at(jf, kf) = pref * V[idx] *
                     std::polar(1.0, kTwoPi * static_cast<double>(tphase) /
                                         static_cast<double>(nn));
    }
  }
  return A;
}

CyclicGridFunction apply_operator(const LatticeMatrix& A,
                                  const CyclicGridFunction& f) {
  if (A.n() != f.n) throw std::invalid_argument("apply_operator: size mismatch");
  CyclicGridFunction out(f.n);
  for (std::size_t j = 0; j < f.n; ++j) {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < f.n; ++k) acc += A.at(j, k) * f[k];
    out[j] = acc;
  }
  return out;
}

FactorizationIdentityReport check_factorization_identity(
    const Symbol& a, const PhaseSpaceSystem& sys, std::size_t trials,
    std::uint64_t seed, double tol) {
  const std::size_t n = sys.n;
  const std::size_t m = sys.m();
  const LatticeMatrix A = gabor_matrix(a, sys);
  const LatticeMatrix op = op0(a);
  const Lattice lat = phase_lattice(sys);

  auto through_factorization = [&](const CyclicGridFunction& f) {
    const GaborCoefficients c = analysis_with(sys.phi2, sys.step, sys.step, f);
    SequenceArray carr(lat);
    std::vector<std::int64_t> mi(2);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      lat.multi_index(i, mi.data());
      carr.values[i] = c.at(
          static_cast<std::size_t>(pos_mod(mi[0], static_cast<std::int64_t>(m))),
          static_cast<std::size_t>(pos_mod(mi[1], static_cast<std::int64_t>(m))));
    }
    const SequenceArray h = apply(A, carr);
    GaborCoefficients hc(m, m);
    for (std::size_t i = 0; i < lat.size(); ++i) {
      lat.multi_index(i, mi.data());
      hc.at(static_cast<std::size_t>(pos_mod(mi[0], static_cast<std::int64_t>(m))),
            static_cast<std::size_t>(pos_mod(mi[1], static_cast<std::int64_t>(m)))) =
          h.values[i];
    }
    return synthesis_with(sys.phi1, sys.step, sys.step, hc);
  };

  FactorizationIdentityReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, t);
    const CyclicGridFunction f = random_atom_superposition(n, 6, rng);
    const CyclicGridFunction lhs = apply_operator(op, f);
    const CyclicGridFunction rhs = through_factorization(f);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += std::norm(lhs[i] - rhs[i]);
      den += std::norm(lhs[i]);
    }
    const double resid = den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
    rep.max_residual = std::max(rep.max_residual, resid);
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

double symbol_mod_norm(const Symbol& a, const Exponent& p, const Exponent& q,
                       const Weight& w0, std::size_t sample_step,
                       const CyclicGridFunction& g) {
  const std::size_t n = a.n;
  if (g.n != n) throw std::invalid_argument("symbol_mod_norm: window mismatch");
  if (sample_step == 0 || n % sample_step != 0)
    throw std::invalid_argument("symbol_mod_norm: step must divide N");
  const std::size_t m = n / sample_step;
  const double h = grid_step(n);
  const double delta = static_cast<double>(sample_step) * h;

  // Tensor reference window on Z_N^2.
  Symbol G(n);
  for (std::size_t y1 = 0; y1 < n; ++y1)
    for (std::size_t y2 = 0; y2 < n; ++y2) G.at(y1, y2) = g[y1] * g[y2];

  const bool p_inf = p.is_inf();
  const bool q_inf = q.is_inf();
  std::vector<double> acc(m * m, 0.0);
  std::vector<cplx> tmp(n * n);
  std::vector<double> coords(4);

  for (std::size_t mt1 = 0; mt1 < m; ++mt1) {
    const std::size_t s1 = mt1 * sample_step;
    coords[0] = static_cast<double>(signed_index(s1, n)) * h;
    for (std::size_t mt2 = 0; mt2 < m; ++mt2) {
      const std::size_t s2 = mt2 * sample_step;
      coords[1] = static_cast<double>(signed_index(s2, n)) * h;
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        const std::size_t w1 = (y1 + n - s1) % n;
        for (std::size_t y2 = 0; y2 < n; ++y2)
          tmp[y1 * n + y2] =
              a.v[y1 * n + y2] * std::conj(G.v[w1 * n + (y2 + n - s2) % n]);
      }
      dft_2d(tmp, n, n, false);
      for (std::size_t nf1 = 0; nf1 < m; ++nf1) {
        coords[2] = static_cast<double>(signed_index(nf1 * sample_step, n)) * h;
        for (std::size_t nf2 = 0; nf2 < m; ++nf2) {
          coords[3] = static_cast<double>(signed_index(nf2 * sample_step, n)) * h;
          const double val =
              std::abs(tmp[(nf1 * sample_step) * n + nf2 * sample_step]) *
              w0(coords);
          double& slot = acc[nf1 * m + nf2];
          if (p_inf)
            slot = std::max(slot, val);
          else
            slot += std::pow(val, p.value());
        }
      }
    }
  }

  std::vector<double> g1(m * m);
  for (std::size_t i = 0; i < acc.size(); ++i)
    g1[i] = p_inf ? acc[i]
                  : std::pow(acc[i], 1.0 / p.value()) *
                        std::pow(delta, 2.0 / p.value());
  if (q_inf) {
    double mx = 0.0;
    for (double v : g1) mx = std::max(mx, v);
    return mx;
  }
  const double qv = q.value();
  std::vector<double> powers(g1.size());
  double mx = 0.0;
  for (double v : g1) mx = std::max(mx, v);
  if (mx == 0.0) return 0.0;
  for (std::size_t i = 0; i < g1.size(); ++i) powers[i] = std::pow(g1[i] / mx, qv);
  return mx * std::pow(pairwise_sum(powers), 1.0 / qv) *
         std::pow(delta, 2.0 / qv);
}

CyclicGridFunction random_atom_superposition(std::size_t n, std::size_t atoms,
                                             Rng& rng) {
  const CyclicGridFunction& g = cached_gaussian(n);
  CyclicGridFunction f(n);
  double amp = 1.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    const auto a = static_cast<std::int64_t>(rng.uniform_index(n));
    const auto b = static_cast<std::int64_t>(rng.uniform_index(n));
    const cplx c = amp * rng.cnormal();
    for (std::size_t x = 0; x < n; ++x) {
      const double ph = kTwoPi * static_cast<double>(b) * static_cast<double>(x) /
                        static_cast<double>(n);
      f[x] += c * std::polar(1.0, ph) * g.at_mod(static_cast<std::int64_t>(x) - a);
    }
    amp *= 0.7;
  }
  return f;
}

Symbol random_symbol_superposition(std::size_t n, std::size_t atoms, Rng& rng) {
  const CyclicGridFunction& g = cached_gaussian(n);
  Symbol s(n);
  double amp = 1.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    const auto m1 = static_cast<std::int64_t>(rng.uniform_index(n));
    const auto m2 = static_cast<std::int64_t>(rng.uniform_index(n));
    const auto n1 = static_cast<std::int64_t>(rng.uniform_index(n));
    const auto n2 = static_cast<std::int64_t>(rng.uniform_index(n));
    const cplx c = amp * rng.cnormal();
    for (std::size_t y1 = 0; y1 < n; ++y1) {
      const cplx g1 = g.at_mod(static_cast<std::int64_t>(y1) - m1);
      const double ph1 = kTwoPi * static_cast<double>(n1) * static_cast<double>(y1) /
                         static_cast<double>(n);
      for (std::size_t y2 = 0; y2 < n; ++y2) {
        const double ph2 = kTwoPi * static_cast<double>(n2) *
                           static_cast<double>(y2) / static_cast<double>(n);
        s.at(y1, y2) += c * std::polar(1.0, ph1 + ph2) * g1 *
                        g.at_mod(static_cast<std::int64_t>(y2) - m2);
      }
    }
    amp *= 0.7;
  }
  return s;
}

CyclicGridFunction reverse(const CyclicGridFunction& f) {
  CyclicGridFunction g(f.n);
  for (std::size_t x = 0; x < f.n; ++x)
    g[x] = f.at_mod(-static_cast<std::int64_t>(x));
  return g;
}

OpContinuityReport check_op_continuity(const Symbol& a, const MixedExponent& p1,
                                       const MixedExponent& p2,
                                       const Exponent& p, const Exponent& q,
                                       const Weight& w0, const Weight& w1,
                                       const Weight& w2, double t,
                                       std::size_t trials, std::uint64_t seed,
                                       const CyclicGridFunction& ref_window,
                                       std::size_t symbol_step) {
  std::string why;
  if (!pq_conditions_hold(p1, p2, p, q, &why))
    throw std::invalid_argument("check_op_continuity: " + why);

  OpContinuityReport rep;
  rep.symbol_norm = symbol_mod_norm(a, p, q, w0, symbol_step, ref_window);
  rep.trials = trials;
  const LatticeMatrix op = op_t(a, t);
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng = Rng::for_trial(seed, k);
    const CyclicGridFunction f = random_atom_superposition(a.n, 5, rng);
    const double nf = modulation_norm(f, p1, w1, ref_window);
    if (nf == 0.0) continue;
    const CyclicGridFunction g = apply_operator(op, f);
    const double ng = modulation_norm(g, p2, w2, ref_window);
    rep.worst_ratio = std::max(rep.worst_ratio, ng / (rep.symbol_norm * nf));
  }
  return rep;
}

double weighted_operator_schatten_norm(const LatticeMatrix& A, const Exponent& p,
                                       const Weight& w1, const Weight& w2,
                                       const CyclicGridFunction& g) {
  const std::size_t n = A.n();
  auto build_r = [&](const Weight& w) -> EMatrix {
    // Weighted full-lattice analysis map T: C^N -> C^{N^2},
    // (T f)(m,k) = h w(m,k) V_g f(m,k); the M^2_{(w)} norm is ||T f||_2 and
    // the thin-QR factor R realizes it as ||R f||_2.
    const double h = grid_step(n);
    const double pref = h / std::sqrt(static_cast<double>(n));
    EMatrix T(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n));
    std::vector<double> coords(2);
    for (std::size_t m = 0; m < n; ++m) {
      coords[0] = static_cast<double>(signed_index(m, n)) * h;
      for (std::size_t k = 0; k < n; ++k) {
        coords[1] = static_cast<double>(signed_index(k, n)) * h;
        const double wv = w(coords) * pref;
        for (std::size_t y = 0; y < n; ++y) {
          const double ph = -kTwoPi * static_cast<double>(y) *
                            static_cast<double>(k) / static_cast<double>(n);
          T(static_cast<Eigen::Index>(m * n + k), static_cast<Eigen::Index>(y)) =
              wv *
              std::conj(g.at_mod(static_cast<std::int64_t>(y) -
                                 static_cast<std::int64_t>(m))) *
              std::polar(1.0, ph);
        }
      }
    }
    Eigen::HouseholderQR<EMatrix> qr(T);
    EMatrix R = qr.matrixQR()
                    .topRows(static_cast<Eigen::Index>(n))
                    .template triangularView<Eigen::Upper>();
    return R;
  };

  const EMatrix R1 = build_r(w1);
  const EMatrix R2 = build_r(w2);
  EMatrix M = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                             Eigen::RowMajor>>(
      A.entries().data(), static_cast<Eigen::Index>(n),
      static_cast<Eigen::Index>(n));
  const EMatrix conj_op =
      R2 * M *
      R1.template triangularView<Eigen::Upper>().solve(
          EMatrix::Identity(static_cast<Eigen::Index>(n),
                            static_cast<Eigen::Index>(n)));
  Eigen::JacobiSVD<EMatrix> svd(conj_op);
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + svd.singularValues().size());
  return lp_reduce(sv, p);
}

RatioReport check_op_schatten(const Symbol& a, const Exponent& p,
                              const Weight& w0, const Weight& w1,
                              const Weight& w2, double t,
                              const CyclicGridFunction& ref_window,
                              std::size_t symbol_step) {
  if (p.as_double() > 2.0)
    throw std::invalid_argument("check_op_schatten: need p <= 2");
  RatioReport rep;
  rep.lhs = weighted_operator_schatten_norm(op_t(a, t), p, w1, w2, ref_window);
  rep.rhs = symbol_mod_norm(a, p, p, w0, symbol_step, ref_window);
  rep.ratio = rep.rhs == 0.0 ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

RatioReport check_wigner_modulation_bound(
    const CyclicGridFunction& f1, const CyclicGridFunction& f2, double t,
    const Exponent& p1, const Exponent& q1, const Exponent& p2,
    const Exponent& q2, const Exponent& p, const Exponent& q, const Weight& w0,
    const Weight& w1, const Weight& w2, const CyclicGridFunction& ref_window,
    std::size_t symbol_step) {
  const double target = p.reciprocal() + q.reciprocal();
  if (std::abs(p1.reciprocal() + p2.reciprocal() - target) > 1e-12 ||
      std::abs(q1.reciprocal() + q2.reciprocal() - target) > 1e-12)
    throw std::invalid_argument(
        "check_wigner_modulation_bound: 1/p1+1/p2 = 1/q1+1/q2 = 1/p+1/q fails");
  for (const Exponent* e : {&p1, &q1, &p2, &q2})
    if (e->as_double() < p.as_double() - 1e-12 ||
        e->as_double() > q.as_double() + 1e-12)
      throw std::invalid_argument(
          "check_wigner_modulation_bound: need p <= p_j, q_j <= q");

  RatioReport rep;
  const Symbol w = wigner_t(f1, f2, t);
  rep.lhs = symbol_mod_norm(w, p, q, w0, symbol_step, ref_window);
  rep.rhs = modulation_norm(f1, MixedExponent({p1, q1}), w1, ref_window) *
            modulation_norm(f2, MixedExponent({p2, q2}), w2, ref_window);
  rep.ratio = rep.rhs == 0.0 ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

WignerConvolutionReport check_wigner_convolution(
    const CyclicGridFunction& f1, const CyclicGridFunction& f2,
    const CyclicGridFunction& g1, const CyclicGridFunction& g2,
    const Exponent& p, const CyclicGridFunction& ref_window,
    double identity_tol) {
  if (p.as_double() > 1.0)
    throw std::invalid_argument("check_wigner_convolution: need p <= 1");
  const std::size_t n = f1.n;
  const double h = grid_step(n);

  const Symbol wa = weyl_wigner(f1, f2);
  const Symbol wb = weyl_wigner(g1, g2);

  // Circular convolution over Z_N^2 in Riemann units: h^2 * counting.
  std::vector<cplx> fa = wa.v, fb = wb.v;
  dft_2d(fa, n, n, false);
  dft_2d(fb, n, n, false);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  dft_2d(fa, n, n, true);
  const double conv_scale = static_cast<double>(n) * h * h;
  std::vector<double> conv_abs(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i)
    conv_abs[i] = std::abs(fa[i]) * conv_scale;

  const TimeFreqArray v1 = stft(g1, reverse(f2));
  const TimeFreqArray v2 = stft(g2, reverse(f1));
  std::vector<double> prod(fa.size());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xi = 0; xi < n; ++xi)
      prod[x * n + xi] = std::abs(v1.at(x, xi)) * std::abs(v2.at(x, xi));

  WignerConvolutionReport rep;
  double num = 0.0, den = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < prod.size(); ++i) {
    num += conv_abs[i] * prod[i];
    den += prod[i] * prod[i];
    mx = std::max(mx, conv_abs[i]);
  }
  rep.fitted_c = den == 0.0 ? 0.0 : num / den;
  for (std::size_t i = 0; i < prod.size(); ++i)
    rep.max_pointwise_dev = std::max(
        rep.max_pointwise_dev, std::abs(conv_abs[i] - rep.fitted_c * prod[i]));
  if (mx > 0.0) rep.max_pointwise_dev /= mx;
  rep.identity_pass = rep.max_pointwise_dev <= identity_tol;

  if (!p.is_inf()) {
    std::vector<double> powers(conv_abs.size());
    for (std::size_t i = 0; i < conv_abs.size(); ++i)
      powers[i] = std::pow(conv_abs[i], p.value());
    rep.lp_lhs = std::pow(pairwise_sum(powers) * h * h, 1.0 / p.value());
  }
  const Exponent twop = Exponent::finite(2.0 * p.value());
  const MixedExponent m2p = MixedExponent::flat(2, twop);
  const Weight one = Weight::one();
  rep.factor_product = modulation_norm(f1, m2p, one, ref_window) *
                       modulation_norm(f2, m2p, one, ref_window) *
                       modulation_norm(g1, m2p, one, ref_window) *
                       modulation_norm(g2, m2p, one, ref_window);
  rep.c_prime = rep.factor_product == 0.0 ? 0.0 : rep.lp_lhs / rep.factor_product;
  return rep;
}

RatioReport check_unorm_modnorm_equiv(const Symbol& a, const Exponent& p,
                                      const Exponent& q, const Weight& w,
                                      const Weight& w0,
                                      const PhaseSpaceSystem& sys,
                                      const CyclicGridFunction& ref_window) {
  RatioReport rep;
  rep.lhs = u_norm(gabor_matrix(a, sys), p, q, w);
  rep.rhs = symbol_mod_norm(a, p, q, w0, sys.step, ref_window);
  rep.ratio = rep.rhs == 0.0 ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

}  // namespace tfq
