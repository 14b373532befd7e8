#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tfq/lattice.hpp"

namespace tfq {

using cplx = std::complex<double>;

// Dense complex sequence on a finite lattice, lexicographic layout
// (axis 0 slowest), one value per lattice point.
struct SequenceArray {
  Lattice lattice;
  std::vector<cplx> values;

  explicit SequenceArray(Lattice lat)
      : lattice(std::move(lat)), values(lattice.size(), cplx(0.0, 0.0)) {}
  SequenceArray(Lattice lat, std::vector<cplx> vals);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

// Uniform samples of a box in R^d: value index i along an axis sits at
// coordinate origin + i * step (midpoint convention is the caller's choice
// of origin). Used for Riemann-sum quasi-norms.
struct GridFunction {
  std::vector<std::size_t> n;     // samples per axis
  std::vector<double> step;       // spacing per axis, > 0
  std::vector<double> origin;     // coordinate of index 0 per axis
  std::vector<cplx> values;       // lexicographic, axis 0 slowest

  GridFunction() = default;
  GridFunction(std::vector<std::size_t> shape, std::vector<double> steps,
               std::vector<double> origins);

  std::size_t dim() const { return n.size(); }
  std::size_t size() const { return values.size(); }
};

}  // namespace tfq
