#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "rledtw/block_grid.hpp"
#include "rledtw/rle.hpp"

namespace rledtw {

struct DtwValue {
  double distance = 0.0;
  double squared_cost = 0.0;
};

struct BdtwBounds {
  double lower = 0.0;
  double upper = 0.0;
};

namespace detail {
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum of three predecessors; ties go to the diagonal one.
inline double min3_diag_first(double diag, double up, double left) noexcept {
  double best = diag;
  if (up < best) best = up;
  if (left < best) best = left;
  return best;
}
}  // namespace detail

/// Standard O(mn) dynamic program with a two-row rolling table.
inline DtwValue dtw_naive(const TimeSeries& x, const TimeSeries& y) {
  const std::size_t n = y.size();
  std::vector<double> prev(n + 1, detail::kInf);
  std::vector<double> curr(n + 1, detail::kInf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    curr[0] = detail::kInf;
    const double xi = x[i - 1];
    for (std::size_t j = 1; j <= n; ++j) {
      const double d = xi - y[j - 1];
      curr[j] = d * d + detail::min3_diag_first(prev[j - 1], prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return {std::sqrt(prev[n]), prev[n]};
}

/// DP restricted to cells on block boundaries (rows a_i and columns b_j).
///
/// Inside a block an optimal path moves diagonally until it meets the block's
/// top or right boundary, so each boundary cell is reached from a neighbouring
/// boundary cell (one horizontal or vertical step along the boundary) or by a
/// single diagonal segment entering through the block's bottom or left side.
/// O(kn + lm) time and space.
inline DtwValue dtw_boundary(const RunLengthEncoding& xr, const RunLengthEncoding& yr) {
  const BlockGrid grid(xr, yr);
  const std::size_t k = grid.rows();
  const std::size_t l = grid.cols();
  const std::int64_t m = grid.m();
  const std::int64_t n = grid.n();

  // top[i][c] = D[a_i][c] for c in [0, n]; right[j][r] = D[r][b_j] for r in [0, m].
  // Row 0 and column 0 hold the virtual border: 0 at the origin, +inf elsewhere.
  std::vector<std::vector<double>> top(k + 1, std::vector<double>(static_cast<std::size_t>(n) + 1, detail::kInf));
  std::vector<std::vector<double>> right(l + 1, std::vector<double>(static_cast<std::size_t>(m) + 1, detail::kInf));
  top[0][0] = 0.0;
  right[0][0] = 0.0;

  // Value at a cell on the bottom or left side of block (i, j), i.e. on row
  // a_{i-1} or column b_{j-1}.
  auto entry_value = [&](std::size_t i, std::size_t j, std::int64_t r, std::int64_t c) {
    if (r == grid.row_bound(i - 1)) return top[i - 1][static_cast<std::size_t>(c)];
    return right[j - 1][static_cast<std::size_t>(r)];
  };

  auto cell = [&](std::size_t i, std::size_t j, std::int64_t r, std::int64_t c) {
    const double w = grid.cost(i, j);
    const std::int64_t steps = std::min(r - grid.row_bound(i - 1), c - grid.col_bound(j - 1));
    double best = entry_value(i, j, r - steps, c - steps) + w * static_cast<double>(steps);
    if (r == grid.row_bound(i)) best = std::min(best, top[i][static_cast<std::size_t>(c - 1)] + w);
    if (c == grid.col_bound(j)) best = std::min(best, right[j][static_cast<std::size_t>(r - 1)] + w);
    return best;
  };

  for (std::size_t i = 1; i <= k; ++i) {
    const std::int64_t a = grid.row_bound(i);
    for (std::size_t j = 1; j <= l; ++j) {
      const std::int64_t b = grid.col_bound(j);
      for (std::int64_t r = grid.row_bound(i - 1) + 1; r < a; ++r)
        right[j][static_cast<std::size_t>(r)] = cell(i, j, r, b);
      for (std::int64_t c = grid.col_bound(j - 1) + 1; c < b; ++c)
        top[i][static_cast<std::size_t>(c)] = cell(i, j, a, c);
      const double corner = cell(i, j, a, b);
      top[i][static_cast<std::size_t>(b)] = corner;
      right[j][static_cast<std::size_t>(a)] = corner;
    }
  }
  const double total = top[k][static_cast<std::size_t>(n)];
  return {std::sqrt(total), total};
}

/// Block-level DP weighting each block by max (upper) or min (lower) of its
/// side lengths. Exact when every block is square.
inline BdtwBounds bdtw_bounds(const RunLengthEncoding& xr, const RunLengthEncoding& yr) {
  require_canonical(xr);
  require_canonical(yr);
  const std::size_t k = xr.size();
  const std::size_t l = yr.size();
  std::vector<double> up_prev(l + 1, detail::kInf), up_curr(l + 1, detail::kInf);
  std::vector<double> lo_prev(l + 1, detail::kInf), lo_curr(l + 1, detail::kInf);
  up_prev[0] = lo_prev[0] = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    up_curr[0] = lo_curr[0] = detail::kInf;
    const double xv = xr[i - 1].value;
    const std::int64_t mi = xr[i - 1].length;
    for (std::size_t j = 1; j <= l; ++j) {
      const double d = xv - yr[j - 1].value;
      const double c = d * d;
      const std::int64_t nj = yr[j - 1].length;
      up_curr[j] = static_cast<double>(std::max(mi, nj)) * c +
                   detail::min3_diag_first(up_prev[j - 1], up_prev[j], up_curr[j - 1]);
      lo_curr[j] = static_cast<double>(std::min(mi, nj)) * c +
                   detail::min3_diag_first(lo_prev[j - 1], lo_prev[j], lo_curr[j - 1]);
    }
    std::swap(up_prev, up_curr);
    std::swap(lo_prev, lo_curr);
  }
  return {std::sqrt(lo_prev[l]), std::sqrt(up_prev[l])};
}

}  // namespace rledtw
