#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tfq {

struct AxisRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // inclusive
  std::int64_t extent() const { return hi - lo + 1; }
};

// Finite truncation of the scaled integer lattice T_theta Z^d: the point set
// { (theta_1 j_1, ..., theta_d j_d) : j_i in [lo_i, hi_i] }. Enumeration is
// lexicographic in the integer index with axis 0 slowest, so iteration order
// is stable across runs.
class Lattice {
 public:
  Lattice(std::vector<double> theta, std::vector<AxisRange> box);

  std::size_t dim() const { return theta_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<double>& theta() const { return theta_; }
  const std::vector<AxisRange>& box() const { return box_; }
  std::int64_t extent(std::size_t axis) const { return box_[axis].extent(); }

  // Integer multi-index of the flat index (lexicographic, axis 0 slowest).
  std::vector<std::int64_t> multi_index(std::size_t flat) const;
  void multi_index(std::size_t flat, std::int64_t* out) const;

  // Flat index of an in-box integer multi-index.
  std::size_t flat_index(const std::int64_t* idx) const;
  bool contains(const std::int64_t* idx) const;

  // Real coordinates theta_i * j_i of the flat index.
  std::vector<double> point(std::size_t flat) const;
  void point(std::size_t flat, double* out) const;

  bool same_theta(const Lattice& other) const;
  bool operator==(const Lattice& other) const;

  // Same theta, box [lo_i - hi_i, hi_i - lo_i]: index differences j - k.
  Lattice difference_lattice() const;
  // Same theta, box [lo_i + o.lo_i, hi_i + o.hi_i]: index sums.
  Lattice sum_lattice(const Lattice& other) const;

 private:
  std::vector<double> theta_;
  std::vector<AxisRange> box_;
  std::vector<std::size_t> stride_;
  std::size_t size_;
};

Lattice make_lattice(std::vector<double> theta, std::vector<AxisRange> box);

// 1-d helper: theta * {lo..hi}.
Lattice make_lattice_1d(double theta, std::int64_t lo, std::int64_t hi);

}  // namespace tfq
