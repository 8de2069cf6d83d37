#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rledtw/rle.hpp"

namespace rledtw {

/// Block decomposition of the DTW matrix of two run-length encoded series.
///
/// Run i of x (1-based) covers matrix rows (row_bound(i-1), row_bound(i)] and
/// run j of y covers columns (col_bound(j-1), col_bound(j)]. Every cell of
/// block (i, j) has the same local cost (x_i - y_j)^2.
class BlockGrid {
public:
  BlockGrid(const RunLengthEncoding& x, const RunLengthEncoding& y) {
    require_canonical(x);
    require_canonical(y);
    a_.reserve(x.size() + 1);
    b_.reserve(y.size() + 1);
    a_.push_back(0);
    for (const Run& r : x) a_.push_back(a_.back() + r.length);
    b_.push_back(0);
    for (const Run& r : y) b_.push_back(b_.back() + r.length);
    for (const Run& r : x) x_values_.push_back(r.value);
    for (const Run& r : y) y_values_.push_back(r.value);
    cost_.resize(x.size() * y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double d = x_values_[i] - y_values_[j];
        cost_[i * y.size() + j] = d * d;
      }
  }

  /// Number of runs of x (block rows), k.
  std::size_t rows() const noexcept { return x_values_.size(); }
  /// Number of runs of y (block columns), l.
  std::size_t cols() const noexcept { return y_values_.size(); }
  /// Length of x, m.
  std::int64_t m() const noexcept { return a_.back(); }
  /// Length of y, n.
  std::int64_t n() const noexcept { return b_.back(); }

  /// a_i for i in [0, k]; a_0 = 0, a_k = m.
  std::int64_t row_bound(std::size_t i) const noexcept { return a_[i]; }
  /// b_j for j in [0, l]; b_0 = 0, b_l = n.
  std::int64_t col_bound(std::size_t j) const noexcept { return b_[j]; }

  /// Local cost of block (i, j), 1-based.
  double cost(std::size_t i, std::size_t j) const noexcept {
    return cost_[(i - 1) * cols() + (j - 1)];
  }

  /// Offset b_j - a_i of the diagonal through the upper-right corner of block (i, j).
  /// Defined for i in [0, k], j in [0, l].
  std::int64_t corner_offset(std::size_t i, std::size_t j) const noexcept { return b_[j] - a_[i]; }

  const std::vector<std::int64_t>& row_bounds() const noexcept { return a_; }
  const std::vector<std::int64_t>& col_bounds() const noexcept { return b_; }
  const std::vector<double>& x_values() const noexcept { return x_values_; }
  const std::vector<double>& y_values() const noexcept { return y_values_; }

private:
  std::vector<std::int64_t> a_;
  std::vector<std::int64_t> b_;
  std::vector<double> x_values_;
  std::vector<double> y_values_;
  std::vector<double> cost_;
};

inline BlockGrid build_grid(const RunLengthEncoding& x, const RunLengthEncoding& y) {
  return BlockGrid(x, y);
}

}  // namespace rledtw
