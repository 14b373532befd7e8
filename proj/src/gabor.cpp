#include "tfq/gabor.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace tfq {

namespace {

using EMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Vector<cplx, Eigen::Dynamic>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double CyclicGridFunction::norm2() const {
  double s = 0.0;
  for (const cplx& z : values) s += std::norm(z);
  return std::sqrt(s);
}

CyclicGridFunction gaussian_window(std::size_t n) {
  CyclicGridFunction g(n);
  const double h = grid_step(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x0 = static_cast<double>(signed_index(j, n)) * h;
    double s = 0.0;
    for (int k = -4; k <= 4; ++k) {
      const double x = x0 + static_cast<double>(k) * static_cast<double>(n) * h;
      s += std::exp(-0.5 * x * x);
    }
    g[j] = s;
  }
  const double nrm = g.norm2();
  for (auto& v : g.values) v /= nrm;
  return g;
}

CyclicGridFunction hann_window(std::size_t n) {
  CyclicGridFunction g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double c = std::cos(kTwoPi * static_cast<double>(signed_index(j, n)) /
                              (2.0 * static_cast<double>(n)));
    g[j] = c * c;
  }
  const double nrm = g.norm2();
  for (auto& v : g.values) v /= nrm;
  return g;
}

CyclicGridFunction delta_window(std::size_t n) {
  CyclicGridFunction g(n);
  g[0] = 1.0;
  return g;
}

CyclicGridFunction unitary_dft(const CyclicGridFunction& f, bool inverse) {
  CyclicGridFunction g = f;
  dft(g.values, inverse);
  return g;
}

CyclicGridFunction time_freq_shift(const CyclicGridFunction& f, std::int64_t a,
                                   std::int64_t b) {
  CyclicGridFunction g(f.n);
  for (std::size_t x = 0; x < f.n; ++x) {
    const double ph = kTwoPi * static_cast<double>(b) * static_cast<double>(x) /
                      static_cast<double>(f.n);
    g[x] = std::polar(1.0, ph) * f.at_mod(static_cast<std::int64_t>(x) - a);
  }
  return g;
}

TimeFreqArray stft(const CyclicGridFunction& f, const CyclicGridFunction& phi) {
  if (f.n != phi.n) throw std::invalid_argument("stft: size mismatch");
  const std::size_t n = f.n;
  TimeFreqArray V(n);
  std::vector<cplx> row(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t y = 0; y < n; ++y)
      row[y] = f[y] * std::conj(phi.at_mod(static_cast<std::int64_t>(y) -
                                           static_cast<std::int64_t>(m)));
    dft(row, false);
    std::copy(row.begin(), row.end(), V.v.begin() + static_cast<std::ptrdiff_t>(m * n));
  }
  return V;
}

GridFunction stft_as_grid(const TimeFreqArray& V) {
  const std::size_t n = V.n;
  const double h = grid_step(n);
  const std::size_t shift = n / 2;
  GridFunction g({n, n}, {h, h},
                 {-static_cast<double>(shift) * h, -static_cast<double>(shift) * h});
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t m = (u + n - shift) % n;
    for (std::size_t w = 0; w < n; ++w) g.values[u * n + w] = V.at(m, (w + n - shift) % n);
  }
  return g;
}

GaborCoefficients analysis_with(const CyclicGridFunction& window,
                                std::size_t a, std::size_t b,
                                const CyclicGridFunction& f) {
  if (window.n != f.n) throw std::invalid_argument("analysis: size mismatch");
  const std::size_t n = f.n;
  GaborCoefficients c(n / a, n / b);
  std::vector<cplx> row(n);
  for (std::size_t j = 0; j < c.nt; ++j) {
    const std::size_t m = j * a;
    for (std::size_t y = 0; y < n; ++y)
      row[y] = f[y] * std::conj(window.at_mod(static_cast<std::int64_t>(y) -
                                              static_cast<std::int64_t>(m)));
    dft(row, false);
    for (std::size_t i = 0; i < c.nf; ++i) c.at(j, i) = row[i * b];
  }
  return c;
}

CyclicGridFunction synthesis_with(const CyclicGridFunction& window,
                                  std::size_t a, std::size_t b,
                                  const GaborCoefficients& c) {
  const std::size_t n = window.n;
  if (c.nt != n / a || c.nf != n / b)
    throw std::invalid_argument("synthesis: coefficient shape mismatch");
  CyclicGridFunction out(n);

  // sum_i c(j,i) e^{2 pi i (b i) x / N} is (N/b)-periodic in x: one inverse
  // DFT of length N/b per time shift.
  std::vector<cplx> block(c.nf);
  const double scale = std::sqrt(static_cast<double>(c.nf));  // undo unitary
  for (std::size_t j = 0; j < c.nt; ++j) {
    for (std::size_t i = 0; i < c.nf; ++i) block[i] = c.at(j, i);
    dft(block, true);
    const std::size_t m = j * a;
    for (std::size_t x = 0; x < n; ++x)
      out[x] += scale * block[x % c.nf] *
                window.at_mod(static_cast<std::int64_t>(x) -
                              static_cast<std::int64_t>(m));
  }
  const double pref = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : out.values) v *= pref;
  return out;
}

GaborSystem make_gabor_system(CyclicGridFunction window, std::size_t time_step,
                              std::size_t freq_step) {
  const std::size_t n = window.n;
  if (time_step == 0 || freq_step == 0 || n % time_step != 0 || n % freq_step != 0)
    throw std::invalid_argument("make_gabor_system: steps must divide N");
  GaborSystem sys;
  sys.window = std::move(window);
  sys.time_step = time_step;
  sys.freq_step = freq_step;
  return sys;
}

GaborCoefficients analysis(const GaborSystem& sys, const CyclicGridFunction& f) {
  return analysis_with(sys.window, sys.time_step, sys.freq_step, f);
}

CyclicGridFunction frame_operator(const GaborSystem& sys,
                                  const CyclicGridFunction& f) {
  return synthesis_with(sys.window, sys.time_step, sys.freq_step,
                        analysis(sys, f));
}

DualReport canonical_dual(GaborSystem& sys, double eig_floor) {
  const std::size_t n = sys.n();
  if (sys.time_step * sys.freq_step >= n)
    throw FrameConditionError(
        "canonical_dual: lattice not oversampled (need a*b < N)", 0.0);

  // Dense frame operator, one column per basis vector.
  EMatrix S(n, n);
  CyclicGridFunction e(n);
  for (std::size_t k = 0; k < n; ++k) {
    e.values.assign(n, cplx(0.0, 0.0));
    e[k] = 1.0;
    const CyclicGridFunction col = frame_operator(sys, e);
    for (std::size_t j = 0; j < n; ++j)
      S(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = col[j];
  }

  Eigen::SelfAdjointEigenSolver<EMatrix> eig(S);
  const auto& lam = eig.eigenvalues();
  const double lmax = lam(static_cast<Eigen::Index>(n) - 1);
  const double lmin = lam(0);
  const double cond = lmin > 0.0 ? lmax / lmin
                                 : std::numeric_limits<double>::infinity();
  if (!(lmin > eig_floor * lmax))
    throw FrameConditionError(
        "canonical_dual: frame operator numerically singular (condition " +
            std::to_string(cond) + ")",
        cond);

  EVector phi(n);
  for (std::size_t j = 0; j < n; ++j) phi(static_cast<Eigen::Index>(j)) = sys.window[j];
  EVector psi = eig.eigenvectors() *
                (eig.eigenvectors().adjoint() * phi).cwiseQuotient(
                    lam.cast<cplx>());

  CyclicGridFunction dual(n);
  for (std::size_t j = 0; j < n; ++j) dual[j] = psi(static_cast<Eigen::Index>(j));

  // Residual check with a conjugate-gradient polish if the direct solve ever
  // falls short of the 1e-12 target (iteration cap 10 N).
  auto residual_of = [&](const CyclicGridFunction& cand) {
    const CyclicGridFunction sc = frame_operator(sys, cand);
    double r2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) r2 += std::norm(sc[j] - sys.window[j]);
    return std::sqrt(r2) / sys.window.norm2();
  };
  double res = residual_of(dual);
  if (res > 1e-12) {
    EVector x = psi;
    EVector r = phi - S * x;
    EVector p = r;
    double rs = r.squaredNorm();
    for (std::size_t it = 0; it < 10 * n && std::sqrt(rs) > 1e-13 * phi.norm(); ++it) {
      const EVector sp = S * p;
      const cplx alpha = rs / p.dot(sp);
      x += alpha * p;
      r -= alpha * sp;
      const double rs2 = r.squaredNorm();
      p = r + (rs2 / rs) * p;
      rs = rs2;
    }
    for (std::size_t j = 0; j < n; ++j) dual[j] = x(static_cast<Eigen::Index>(j));
    res = residual_of(dual);
  }

  sys.dual = dual;
  DualReport rep;
  rep.condition_number = cond;
  rep.residual = res;
  return rep;
}

ReconstructionReport reconstruct(const GaborSystem& sys,
                                 const CyclicGridFunction& f) {
  if (!sys.dual) throw std::invalid_argument("reconstruct: no dual window");
  ReconstructionReport rep;
  rep.rec_dual_synthesis = synthesis_with(*sys.dual, sys.time_step, sys.freq_step,
                                          analysis(sys, f));
  rep.rec_dual_analysis =
      synthesis_with(sys.window, sys.time_step, sys.freq_step,
                     analysis_with(*sys.dual, sys.time_step, sys.freq_step, f));
  const double nf = f.norm2();
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t j = 0; j < f.n; ++j) {
    d1 += std::norm(rep.rec_dual_synthesis[j] - f[j]);
    d2 += std::norm(rep.rec_dual_analysis[j] - f[j]);
  }
  rep.residual_ds = nf == 0.0 ? std::sqrt(d1) : std::sqrt(d1) / nf;
  rep.residual_da = nf == 0.0 ? std::sqrt(d2) : std::sqrt(d2) / nf;
  return rep;
}

double modulation_norm(const CyclicGridFunction& f, const MixedExponent& e,
                       const Weight& w, const CyclicGridFunction& phi) {
  return mixed_grid_norm(stft_as_grid(stft(f, phi)), e, w);
}

double modulation_norm_lattice(const GaborSystem& sys,
                               const CyclicGridFunction& f,
                               const MixedExponent& e, const Weight& w) {
  const GaborCoefficients c = analysis(sys, f);
  const double h = grid_step(sys.n());
  const auto lo_t = -static_cast<std::int64_t>(c.nt / 2);
  const auto lo_f = -static_cast<std::int64_t>(c.nf / 2);
  Lattice lat({static_cast<double>(sys.time_step) * h,
               static_cast<double>(sys.freq_step) * h},
              {{lo_t, lo_t + static_cast<std::int64_t>(c.nt) - 1},
               {lo_f, lo_f + static_cast<std::int64_t>(c.nf) - 1}});
  SequenceArray s(lat);
  std::size_t flat = 0;
  for (std::int64_t j = lo_t; j < lo_t + static_cast<std::int64_t>(c.nt); ++j)
    for (std::int64_t i = lo_f; i < lo_f + static_cast<std::int64_t>(c.nf); ++i) {
      const auto jn = static_cast<std::size_t>(((j % static_cast<std::int64_t>(c.nt)) +
                                                static_cast<std::int64_t>(c.nt)) %
                                               static_cast<std::int64_t>(c.nt));
      const auto in = static_cast<std::size_t>(((i % static_cast<std::int64_t>(c.nf)) +
                                                static_cast<std::int64_t>(c.nf)) %
                                               static_cast<std::int64_t>(c.nf));
      s.values[flat++] = c.at(jn, in);
    }
  return mixed_seq_norm(s, e, w);
}

StftWindowBoundReport check_stft_window_bound(
    const CyclicGridFunction& f, const CyclicGridFunction& phi,
    const Exponent& p, const Weight& w, const Weight& w1, const Weight& w2,
    const CyclicGridFunction& reference_window) {
  if (p.as_double() > 2.0)
    throw std::invalid_argument("check_stft_window_bound: need p <= 2");
  const MixedExponent pp = MixedExponent::flat(2, p);
  StftWindowBoundReport rep;
  rep.lhs = mixed_grid_norm(stft_as_grid(stft(f, phi)), pp, w);
  rep.rhs = modulation_norm(f, pp, w1, reference_window) *
            modulation_norm(phi, pp, w2, reference_window);
  rep.ratio = rep.rhs == 0.0 ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

}  // namespace tfq
