#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "rledtw/rle.hpp"

namespace rledtw {

/// Piecewise constant approximation with exactly k segments.
struct Segmentation {
  std::vector<std::size_t> breakpoints;  // 0 = t_0 < t_1 < ... < t_k = n
  std::vector<double> levels;            // mean of (t_{i-1}, t_i]
  double sse = 0.0;

  std::size_t segments() const noexcept { return levels.size(); }
};

struct ApcaResult {
  Segmentation segmentation;
  RunLengthEncoding rle;
};

/// Prefix sums of values and squared values; segment cost in O(1).
class SegmentCost {
public:
  explicit SegmentCost(const TimeSeries& ts) : sum_(ts.size() + 1, 0.0), sq_(ts.size() + 1, 0.0) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      sum_[i + 1] = sum_[i] + ts[i];
      sq_[i + 1] = sq_[i] + ts[i] * ts[i];
    }
  }

  /// Squared deviation from the mean over elements (begin, end] (0-based prefix indices).
  double operator()(std::size_t begin, std::size_t end) const noexcept {
    const double len = static_cast<double>(end - begin);
    const double s = sum_[end] - sum_[begin];
    const double cost = (sq_[end] - sq_[begin]) - s * s / len;
    return cost > 0.0 ? cost : 0.0;
  }

private:
  std::vector<double> sum_;
  std::vector<double> sq_;
};

// Direct mean over [begin, end); exact for constant segments.
inline double segment_mean(const TimeSeries& ts, std::size_t begin, std::size_t end) {
  bool constant = true;
  double sum = 0.0;
  for (std::size_t t = begin; t < end; ++t) {
    sum += ts[t];
    constant = constant && ts[t] == ts[begin];
  }
  return constant ? ts[begin] : sum / static_cast<double>(end - begin);
}

/// Minimum-SSE segmentation into k constant segments by O(n^2 k) dynamic
/// programming. The returned encoding is canonical, so it may have fewer
/// than k runs when adjacent segment means coincide.
inline ApcaResult apca(const TimeSeries& ts, std::size_t k) {
  const std::size_t n = ts.size();
  if (k < 1 || k > n) throw ValidationError("segment count k must satisfy 1 <= k <= n");
  const SegmentCost seg(ts);
  constexpr double inf = std::numeric_limits<double>::infinity();

  // prev/curr[i]: best SSE of (0, i] with s and s + 1 segments.
  // split[s][i]: start of the last of s + 1 segments covering (0, i].
  std::vector<double> prev(n + 1, inf), curr(n + 1, inf);
  std::vector<std::vector<std::size_t>> split(k, std::vector<std::size_t>(n + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) prev[i] = seg(0, i);
  for (std::size_t s = 1; s < k; ++s) {
    std::fill(curr.begin(), curr.end(), inf);
    // s + 1 segments need at least s + 1 elements; leave room for the rest.
    for (std::size_t i = s + 1; i <= n - (k - 1 - s); ++i) {
      double best = inf;
      std::size_t arg = i - 1;
      // Scan from the shortest last segment so ties keep it.
      for (std::size_t t = i - 1; t >= s; --t) {
        const double c = prev[t] + seg(t, i);
        if (c < best) {
          best = c;
          arg = t;
        }
        if (t == s) break;
      }
      curr[i] = best;
      split[s][i] = arg;
    }
    std::swap(prev, curr);
  }

  Segmentation out;
  out.breakpoints.assign(k + 1, 0);
  out.breakpoints[k] = n;
  for (std::size_t s = k - 1; s >= 1; --s) out.breakpoints[s] = split[s][out.breakpoints[s + 1]];
  out.levels.reserve(k);
  std::vector<Run> runs;
  runs.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t b = out.breakpoints[s];
    const std::size_t e = out.breakpoints[s + 1];
    const double level = segment_mean(ts, b, e);
    out.levels.push_back(level);
    double dev = 0.0;
    for (std::size_t t = b; t < e; ++t) dev += (ts[t] - level) * (ts[t] - level);
    out.sse += dev;
    runs.push_back({level, static_cast<std::int64_t>(e - b)});
  }
  return {std::move(out), canonicalize(RunLengthEncoding(std::move(runs)))};
}

/// k = max(1, round(n (1 - rho))) for a space-saving ratio rho in [0, 1).
inline std::size_t ratio_to_k(std::size_t n, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw ValidationError("space-saving ratio must lie in [0, 1)");
  const double k = std::round(static_cast<double>(n) * (1.0 - rho));
  if (k < 1.0) return 1;
  return std::min(n, static_cast<std::size_t>(k));
}

}  // namespace rledtw
