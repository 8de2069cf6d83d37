#pragma once

// Exact DTW on run-length encoded series in time linear in the number of
// intersections between block boundaries and block diagonals.
//
// An optimal warping path exists that only moves along block boundaries
// (top rows a_i, right columns b_j) and block diagonals (the diagonals through
// the upper-right corners (a_i, b_j)). Blocks are handled row-major; for each
// block the intersections of the known diagonals with its top and right
// boundaries are appended, and the block's own corner diagonal is either
// extended or, when new, inserted and back-filled with its earlier
// intersections.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "rledtw/block_grid.hpp"
#include "rledtw/rle.hpp"

namespace rledtw {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct IntersectionEntry {
  std::int64_t row;
  std::int64_t col;
  /// Cost of the cheapest diagonal-conform path ending at (row, col).
  double cost;
};

struct Diagonal {
  static constexpr std::int64_t kLeftSentinel = std::numeric_limits<std::int64_t>::min();
  static constexpr std::int64_t kRightSentinel = std::numeric_limits<std::int64_t>::max();

  std::int64_t offset;  // col - row of every entry
  std::vector<IntersectionEntry> entries;  // strictly increasing row
  int prev = -1;
  int next = -1;

  bool is_sentinel() const noexcept {
    return offset == kLeftSentinel || offset == kRightSentinel;
  }
};

/// Diagonals sorted by offset in a doubly linked list over an index pool,
/// bracketed by two sentinels holding one unreachable entry each.
class DiagonalList {
public:
  static constexpr int kHead = 0;
  static constexpr int kTail = 1;

  DiagonalList() {
    pool_.push_back({Diagonal::kLeftSentinel,
                     {{Diagonal::kLeftSentinel, Diagonal::kLeftSentinel, kInfinity}}, -1, kTail});
    pool_.push_back({Diagonal::kRightSentinel,
                     {{Diagonal::kRightSentinel, Diagonal::kRightSentinel, kInfinity}}, kHead, -1});
  }

  Diagonal& operator[](int id) noexcept { return pool_[static_cast<std::size_t>(id)]; }
  const Diagonal& operator[](int id) const noexcept { return pool_[static_cast<std::size_t>(id)]; }

  int next(int id) const noexcept { return (*this)[id].next; }
  int prev(int id) const noexcept { return (*this)[id].prev; }
  std::int64_t offset(int id) const noexcept { return (*this)[id].offset; }

  /// Inserts an empty diagonal immediately before `before`; returns its id.
  int insert_before(int before, std::int64_t offset) {
    assert(before != kHead);
    const int after = prev(before);
    assert(this->offset(after) < offset && offset < this->offset(before));
    const int id = static_cast<int>(pool_.size());
    pool_.push_back({offset, {}, after, before});
    pool_[static_cast<std::size_t>(after)].next = id;
    pool_[static_cast<std::size_t>(before)].prev = id;
    return id;
  }

  /// Number of diagonals excluding the sentinels.
  std::size_t size() const noexcept { return pool_.size() - 2; }

  /// Ids of the non-sentinel diagonals in increasing offset order.
  std::vector<int> ordered_ids() const {
    std::vector<int> ids;
    for (int id = next(kHead); id != kTail; id = next(id)) ids.push_back(id);
    return ids;
  }

private:
  std::vector<Diagonal> pool_;
};

struct RleDtwResult {
  double distance = 0.0;
  double squared_cost = 0.0;
  /// Intersection entries created, including the (0, 0) seed.
  std::size_t kappa = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

/// Stepwise solver. `step()` handles one block in row-major order; `run()`
/// handles all remaining blocks. Single-threaded; holds mutable state.
class RleDtw {
public:
  RleDtw(const RunLengthEncoding& x, const RunLengthEncoding& y) : grid_(x, y) {
    const int origin = diagonals_.insert_before(DiagonalList::kTail, 0);
    diagonals_[origin].entries.push_back({0, 0, 0.0});
    kappa_ = 1;
  }

  const BlockGrid& grid() const noexcept { return grid_; }
  const DiagonalList& diagonals() const noexcept { return diagonals_; }
  std::size_t kappa() const noexcept { return kappa_; }

  bool done() const noexcept { return i_ > grid_.rows(); }

  /// Block (i, j), 1-based, that the next `step()` handles.
  std::size_t next_block_row() const noexcept { return i_; }
  std::size_t next_block_col() const noexcept { return j_; }

  void step() {
    assert(!done());
    if (j_ == 1) cursor_ = DiagonalList::kHead;
    process_block(i_, j_);
    if (++j_ > grid_.cols()) {
      j_ = 1;
      ++i_;
    }
  }

  RleDtwResult run() {
    while (!done()) step();
    RleDtwResult r;
    r.squared_cost = last_cost_;
    r.distance = std::sqrt(last_cost_);
    r.kappa = kappa_;
    r.k = grid_.rows();
    r.l = grid_.cols();
    r.m = grid_.m();
    r.n = grid_.n();
    return r;
  }

private:
  // Cost of reaching (row, col) in block (i, j) by a straight segment from `src`
  // along the top boundary. +inf if `src` is not a valid start on that segment.
  double horizontal_arrival(const IntersectionEntry& src, std::size_t i, std::size_t j,
                            std::int64_t col) const noexcept {
    if (src.row != grid_.row_bound(i) || src.col < grid_.col_bound(j - 1) || src.col >= col)
      return kInfinity;
    return src.cost + grid_.cost(i, j) * static_cast<double>(col - src.col);
  }

  double vertical_arrival(const IntersectionEntry& src, std::size_t i, std::size_t j,
                          std::int64_t row) const noexcept {
    if (src.col != grid_.col_bound(j) || src.row < grid_.row_bound(i - 1) || src.row >= row)
      return kInfinity;
    return src.cost + grid_.cost(i, j) * static_cast<double>(row - src.row);
  }

  double diagonal_arrival(const IntersectionEntry& src, std::size_t i, std::size_t j,
                          std::int64_t row) const noexcept {
    if (src.row < grid_.row_bound(i - 1) || src.col < grid_.col_bound(j - 1) || src.row >= row)
      return kInfinity;
    return src.cost + grid_.cost(i, j) * static_cast<double>(row - src.row);
  }

  void process_block(std::size_t i, std::size_t j) {
    const std::int64_t corner = grid_.corner_offset(i, j);
    const std::int64_t left = grid_.corner_offset(i, j - 1);
    const std::int64_t above = grid_.corner_offset(i - 1, j);

    // Diagonals with left < offset < corner cross the top boundary.
    int& L = cursor_;
    while (diagonals_.offset(L) <= left) L = diagonals_.next(L);
    while (diagonals_.offset(L) < corner) {
      append_entry(L, i, j);
      L = diagonals_.next(L);
    }

    // Diagonals with corner < offset < above cross the right boundary. The
    // diagonal with offset `above` ends at the corner of the block above and
    // is excluded. Visited with decreasing offset (increasing row).
    int right = L;
    while (diagonals_.offset(right) < above) right = diagonals_.next(right);
    right = diagonals_.prev(right);
    while (diagonals_.offset(right) > corner) {
      append_entry(right, i, j);
      right = diagonals_.prev(right);
    }

    if (diagonals_.offset(L) > corner) {
      const int created = diagonals_.insert_before(L, corner);
      trace(created, i, j);
    } else {
      append_entry(L, i, j);
    }
    last_cost_ = corner_cost(i, j);
  }

  double corner_cost(std::size_t i, std::size_t j) const {
    // The corner diagonal sits just before the cursor or is the cursor.
    int id = cursor_;
    if (diagonals_.offset(id) != grid_.corner_offset(i, j)) id = diagonals_.prev(id);
    assert(diagonals_.offset(id) == grid_.corner_offset(i, j));
    return diagonals_[id].entries.back().cost;
  }

  // Appends the intersection of diagonal `id` with the top and/or right
  // boundary of block (i, j).
  void append_entry(int id, std::size_t i, std::size_t j) {
    Diagonal& diag = diagonals_[id];
    const std::int64_t off = diag.offset;
    const std::int64_t corner = grid_.corner_offset(i, j);
    std::int64_t row = grid_.row_bound(i);
    std::int64_t col = grid_.col_bound(j);
    double cost = kInfinity;
    assert(!diag.entries.empty());
    const IntersectionEntry& last = diag.entries.back();

    if (off <= corner) {
      col = row + off;
      const IntersectionEntry& from_left = diagonals_[diag.prev].entries.back();
      cost = std::min(horizontal_arrival(from_left, i, j, col), diagonal_arrival(last, i, j, row));
    }
    if (off >= corner) {
      row = col - off;
      const IntersectionEntry& from_below = diagonals_[diag.next].entries.back();
      cost = std::min({cost, vertical_arrival(from_below, i, j, row),
                       diagonal_arrival(last, i, j, row)});
    }
    diag.entries.push_back({row, col, cost});
    ++kappa_;
  }

  struct TracePoint {
    std::size_t i;
    std::size_t j;
    std::int64_t row;
    std::int64_t col;
    double boundary_cost;  // best arrival along the boundary from a neighbour diagonal
  };

  // Back-fills a freshly inserted corner diagonal of block (i, j) with all its
  // intersections with boundaries of blocks (i', j'), i' <= i, j' <= j. The
  // intersections are collected from the corner backwards, then costed and
  // appended in increasing row order.
  void trace(int id, std::size_t i, std::size_t j) {
    const std::int64_t off = diagonals_[id].offset;
    const Diagonal& prev_diag = diagonals_[diagonals_[id].prev];
    const Diagonal& next_diag = diagonals_[diagonals_[id].next];
    std::ptrdiff_t zp = static_cast<std::ptrdiff_t>(prev_diag.entries.size()) - 1;
    std::ptrdiff_t zn = static_cast<std::ptrdiff_t>(next_diag.entries.size()) - 1;

    trace_buffer_.clear();
    std::size_t bi = i;
    std::size_t bj = j;
    std::int64_t row = grid_.row_bound(i);
    std::int64_t col = grid_.col_bound(j);
    for (;;) {
      const std::int64_t corner = grid_.corner_offset(bi, bj);
      double boundary = kInfinity;
      if (off <= corner) {
        while (zp >= 0 && prev_diag.entries[static_cast<std::size_t>(zp)].row > row) --zp;
        if (zp >= 0)
          boundary = horizontal_arrival(prev_diag.entries[static_cast<std::size_t>(zp)], bi, bj, col);
      }
      if (off >= corner) {
        while (zn >= 0 && next_diag.entries[static_cast<std::size_t>(zn)].col > col) --zn;
        if (zn >= 0)
          boundary = std::min(
              boundary, vertical_arrival(next_diag.entries[static_cast<std::size_t>(zn)], bi, bj, row));
      }
      trace_buffer_.push_back({bi, bj, row, col, boundary});

      // Previous intersection along the diagonal: where it leaves the block
      // through its bottom (row a_{i-1}) or left (column b_{j-1}) side.
      const std::int64_t steps =
          std::min(row - grid_.row_bound(bi - 1), col - grid_.col_bound(bj - 1));
      row -= steps;
      col -= steps;
      if (row == 0 || col == 0) break;  // matrix border: no earlier diagonal-conform source
      const std::int64_t diag_corner = grid_.corner_offset(bi - 1, bj - 1);
      assert(off != diag_corner);
      if (off > diag_corner)
        --bi;  // top boundary of block (bi - 1, bj)
      else
        --bj;  // right boundary of block (bi, bj - 1)
    }

    auto& entries = diagonals_[id].entries;
    entries.reserve(trace_buffer_.size());
    double cost = kInfinity;
    for (auto it = trace_buffer_.rbegin(); it != trace_buffer_.rend(); ++it) {
      double along = kInfinity;
      if (!entries.empty()) along = diagonal_arrival(entries.back(), it->i, it->j, it->row);
      cost = std::min(it->boundary_cost, along);
      entries.push_back({it->row, it->col, cost});
    }
    kappa_ += trace_buffer_.size();
  }

  BlockGrid grid_;
  DiagonalList diagonals_;
  std::size_t kappa_ = 0;
  std::size_t i_ = 1;
  std::size_t j_ = 1;
  int cursor_ = DiagonalList::kHead;
  double last_cost_ = kInfinity;
  std::vector<TracePoint> trace_buffer_;
};

inline RleDtwResult rle_dtw(const RunLengthEncoding& x, const RunLengthEncoding& y) {
  return RleDtw(x, y).run();
}

}  // namespace rledtw
