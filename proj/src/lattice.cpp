#include "tfq/lattice.hpp"

#include <stdexcept>
#include <string>

namespace tfq {

Lattice::Lattice(std::vector<double> theta, std::vector<AxisRange> box)
    : theta_(std::move(theta)), box_(std::move(box)) {
  if (theta_.empty() || theta_.size() != box_.size())
    throw std::invalid_argument("Lattice: theta/box dimension mismatch");
  for (double t : theta_)
    if (!(t > 0.0)) throw std::invalid_argument("Lattice: theta must be positive");
  size_ = 1;
  for (const auto& r : box_) {
    if (r.hi < r.lo)
      throw std::invalid_argument("Lattice: empty index range " +
                                  std::to_string(r.lo) + ".." + std::to_string(r.hi));
    size_ *= static_cast<std::size_t>(r.extent());
  }
  stride_.assign(box_.size(), 1);
  for (std::size_t a = box_.size(); a-- > 1;)
    stride_[a - 1] = stride_[a] * static_cast<std::size_t>(box_[a].extent());
}

std::vector<std::int64_t> Lattice::multi_index(std::size_t flat) const {
  std::vector<std::int64_t> idx(dim());
  multi_index(flat, idx.data());
  return idx;
}

void Lattice::multi_index(std::size_t flat, std::int64_t* out) const {
  for (std::size_t a = 0; a < dim(); ++a) {
    out[a] = box_[a].lo + static_cast<std::int64_t>(flat / stride_[a]);
    flat %= stride_[a];
  }
}

std::size_t Lattice::flat_index(const std::int64_t* idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < dim(); ++a)
    flat += stride_[a] * static_cast<std::size_t>(idx[a] - box_[a].lo);
  return flat;
}

bool Lattice::contains(const std::int64_t* idx) const {
  for (std::size_t a = 0; a < dim(); ++a)
    if (idx[a] < box_[a].lo || idx[a] > box_[a].hi) return false;
  return true;
}

std::vector<double> Lattice::point(std::size_t flat) const {
  std::vector<double> x(dim());
  point(flat, x.data());
  return x;
}

void Lattice::point(std::size_t flat, double* out) const {
  for (std::size_t a = 0; a < dim(); ++a) {
    const auto j = box_[a].lo + static_cast<std::int64_t>(flat / stride_[a]);
    flat %= stride_[a];
    out[a] = theta_[a] * static_cast<double>(j);
  }
}

bool Lattice::same_theta(const Lattice& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t a = 0; a < dim(); ++a)
    if (theta_[a] != other.theta_[a]) return false;
  return true;
}

bool Lattice::operator==(const Lattice& other) const {
  if (!same_theta(other)) return false;
  for (std::size_t a = 0; a < dim(); ++a)
    if (box_[a].lo != other.box_[a].lo || box_[a].hi != other.box_[a].hi)
      return false;
  return true;
}

Lattice Lattice::difference_lattice() const {
  std::vector<AxisRange> b(dim());
  for (std::size_t a = 0; a < dim(); ++a)
    b[a] = {box_[a].lo - box_[a].hi, box_[a].hi - box_[a].lo};
  return Lattice(theta_, std::move(b));
}

Lattice Lattice::sum_lattice(const Lattice& other) const {
  if (!same_theta(other))
    throw std::invalid_argument("Lattice::sum_lattice: incompatible theta");
  std::vector<AxisRange> b(dim());
  for (std::size_t a = 0; a < dim(); ++a)
    b[a] = {box_[a].lo + other.box_[a].lo, box_[a].hi + other.box_[a].hi};
  return Lattice(theta_, std::move(b));
}

Lattice make_lattice(std::vector<double> theta, std::vector<AxisRange> box) {
  return Lattice(std::move(theta), std::move(box));
}

Lattice make_lattice_1d(double theta, std::int64_t lo, std::int64_t hi) {
  return Lattice({theta}, {{lo, hi}});
}

}  // namespace tfq
