#include "tfq/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tfq {

SequenceArray::SequenceArray(Lattice lat, std::vector<cplx> vals)
    : lattice(std::move(lat)), values(std::move(vals)) {
  if (values.size() != lattice.size())
    throw std::invalid_argument("SequenceArray: value count != lattice size");
}

GridFunction::GridFunction(std::vector<std::size_t> shape,
                           std::vector<double> steps,
                           std::vector<double> origins)
    : n(std::move(shape)), step(std::move(steps)), origin(std::move(origins)) {
  if (n.empty() || n.size() != step.size() || n.size() != origin.size())
    throw std::invalid_argument("GridFunction: shape/step/origin mismatch");
  std::size_t total = 1;
  for (std::size_t a = 0; a < n.size(); ++a) {
    if (n[a] == 0 || !(step[a] > 0.0))
      throw std::invalid_argument("GridFunction: empty axis or nonpositive step");
    total *= n[a];
  }
  values.assign(total, cplx(0.0, 0.0));
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double lp_reduce(std::span<const double> m, const Exponent& p) {
  if (m.empty()) return 0.0;
  if (p.is_inf()) {
    double mx = 0.0;
    for (double v : m) mx = std::max(mx, v);
    return mx;
  }
  double mx = 0.0;
  for (double v : m) mx = std::max(mx, v);
  if (mx == 0.0) return 0.0;
  const double pv = p.value();
  std::vector<double> powers(m.size());
  if (pv < kLogSpacePowThreshold) {
    for (std::size_t i = 0; i < m.size(); ++i)
      powers[i] = m[i] == 0.0 ? 0.0 : std::exp(pv * std::log(m[i] / mx));
  } else {
    for (std::size_t i = 0; i < m.size(); ++i) powers[i] = std::pow(m[i] / mx, pv);
  }
  const double s = pairwise_sum(powers);
  return mx * std::pow(s, 1.0 / pv);
}

namespace {

// Iterated axis-by-axis reduction of a magnitude array in lexicographic
// layout. steps empty => counting measure; otherwise finite-p reductions in
// axis a are scaled by steps[a]^{1/p}.
double mixed_reduce(std::vector<double> mags, std::vector<std::size_t> shape,
                    const MixedExponent& e, std::span<const double> steps) {
  const std::size_t d = shape.size();
  if (e.dim() != d)
    throw std::invalid_argument("mixed norm: exponent dimension mismatch");

  std::vector<std::size_t> axes(d);
  std::iota(axes.begin(), axes.end(), 0);

  std::vector<double> scratch, out;
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t orig_axis = e.axis_of_step(k);
    const std::size_t pos =
        static_cast<std::size_t>(std::find(axes.begin(), axes.end(), orig_axis) -
                                 axes.begin());
    const Exponent& p = e.p[k];

    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < pos; ++i) outer *= shape[i];
    for (std::size_t i = pos + 1; i < shape.size(); ++i) inner *= shape[i];
    const std::size_t len = shape[pos];

    double scale = 1.0;
    if (!steps.empty() && !p.is_inf())
      scale = std::pow(steps[orig_axis], 1.0 / p.value());

    out.assign(outer * inner, 0.0);
    scratch.resize(len);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < inner; ++i) {
        for (std::size_t t = 0; t < len; ++t)
          scratch[t] = mags[(o * len + t) * inner + i];
        out[o * inner + i] = scale * lp_reduce(scratch, p);
      }
    }
    mags.swap(out);
    shape.erase(shape.begin() + static_cast<std::ptrdiff_t>(pos));
    axes.erase(axes.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return mags[0];
}

}  // namespace

double mixed_seq_norm(const SequenceArray& f, const MixedExponent& e,
                      const Weight& w) {
  const Lattice& lat = f.lattice;
  std::vector<double> mags(f.size());
  std::vector<double> pt(lat.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    lat.point(i, pt.data());
    mags[i] = std::abs(f.values[i]) * w(pt);
  }
  std::vector<std::size_t> shape(lat.dim());
  for (std::size_t a = 0; a < lat.dim(); ++a)
    shape[a] = static_cast<std::size_t>(lat.extent(a));
  return mixed_reduce(std::move(mags), std::move(shape), e, {});
}

double mixed_grid_norm(const GridFunction& f, const MixedExponent& e,
                       const Weight& w) {
  std::vector<double> mags(f.size());
  std::vector<double> pt(f.dim());
  std::vector<std::size_t> idx(f.dim(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t a = 0; a < f.dim(); ++a)
      pt[a] = f.origin[a] + static_cast<double>(idx[a]) * f.step[a];
    mags[i] = std::abs(f.values[i]) * w(pt);
    for (std::size_t a = f.dim(); a-- > 0;) {
      if (++idx[a] < f.n[a]) break;
      idx[a] = 0;
    }
  }
  return mixed_reduce(std::move(mags), f.n, e, f.step);
}

double flat_seq_norm(const SequenceArray& f, const Exponent& p, const Weight& w) {
  const Lattice& lat = f.lattice;
  std::vector<double> mags(f.size());
  std::vector<double> pt(lat.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    lat.point(i, pt.data());
    mags[i] = std::abs(f.values[i]) * w(pt);
  }
  return lp_reduce(mags, p);
}

double flat_seq_norm(const SequenceArray& f, const Exponent& p) {
  std::vector<double> mags(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f.values[i]);
  return lp_reduce(mags, p);
}

SequenceArray convolve(const SequenceArray& h, const SequenceArray& c,
                       const std::optional<std::vector<AxisRange>>& out_box) {
  if (!h.lattice.same_theta(c.lattice))
    throw std::invalid_argument("convolve: incompatible lattice scales");
  const std::size_t d = h.lattice.dim();

  Lattice out_lat = out_box ? Lattice(h.lattice.theta(), *out_box)
                            : h.lattice.sum_lattice(c.lattice);
  SequenceArray out(out_lat);

  std::vector<std::int64_t> j(d), k(d), diff(d);
  for (std::size_t oj = 0; oj < out.size(); ++oj) {
    out_lat.multi_index(oj, j.data());
    cplx acc(0.0, 0.0);
    for (std::size_t ok = 0; ok < h.size(); ++ok) {
      h.lattice.multi_index(ok, k.data());
      bool inside = true;
      for (std::size_t a = 0; a < d; ++a) {
        diff[a] = j[a] - k[a];
        if (diff[a] < c.lattice.box()[a].lo || diff[a] > c.lattice.box()[a].hi) {
          inside = false;
          break;
        }
      }
      if (!inside) continue;
      acc += h.values[ok] * c.values[c.lattice.flat_index(diff.data())];
    }
    out.values[oj] = acc;
  }
  return out;
}

YoungReport check_young_quasi(const SequenceArray& h, const SequenceArray& c,
                              const MixedExponent& p, const Exponent& q) {
  if (q.as_double() > 1.0)
    throw std::invalid_argument(
        "check_young_quasi: q > 1 (use check_young_classical)");
  if (q.as_double() > p.min_exponent().as_double())
    throw std::invalid_argument("check_young_quasi: need q <= min(p)");

  YoungReport rep;
  const SequenceArray hc = convolve(h, c);
  rep.lhs = mixed_seq_norm(hc, p, Weight::one());
  rep.rhs = flat_seq_norm(h, q) * mixed_seq_norm(c, p, Weight::one());
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

YoungReport check_young_classical(const SequenceArray& h, const SequenceArray& c,
                                  const Exponent& q, const Exponent& p) {
  if (q.as_double() < 1.0 || p.as_double() < 1.0)
    throw std::invalid_argument("check_young_classical: need p, q >= 1");
  const double rr = q.reciprocal() + p.reciprocal() - 1.0;
  const Exponent r = rr <= 0.0 ? Exponent::infinity() : Exponent::finite(1.0 / rr);

  YoungReport rep;
  const SequenceArray hc = convolve(h, c);
  rep.lhs = flat_seq_norm(hc, r);
  rep.rhs = flat_seq_norm(h, q) * flat_seq_norm(c, p);
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

}  // namespace tfq
