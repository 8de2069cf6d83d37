#pragma once

// Synthetic datasets standing in for archive data.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "rledtw/apca.hpp"
#include "rledtw/rle.hpp"

namespace rledtw {

/// Piecewise constant series with `runs` segments of random positive lengths
/// summing to n and random integer levels in [0, 9]. Adjacent levels may
/// coincide, so the canonical encoding has at most `runs` runs.
inline TimeSeries staircase(std::size_t n, std::size_t runs, std::mt19937_64& rng) {
  if (runs < 1 || runs > n) throw ValidationError("staircase requires 1 <= runs <= n");
  std::vector<std::size_t> cuts;
  cuts.reserve(runs + 1);
  if (runs > 1) {
    // runs - 1 distinct cut positions in [1, n - 1].
    std::vector<std::size_t> positions(n - 1);
    for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i + 1;
    for (std::size_t i = 0; i + 1 < runs; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, positions.size() - 1);
      std::swap(positions[i], positions[pick(rng)]);
    }
    cuts.assign(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(runs - 1));
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(n);

  std::uniform_int_distribution<int> level(0, 9);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t s = 0; s < runs; ++s) {
    const double v = level(rng);
    values.insert(values.end(), cuts[s + 1] - cuts[s], v);
  }
  return TimeSeries(std::move(values));
}

/// Gaussian random walk of length n.
inline TimeSeries random_walk(std::size_t n, std::mt19937_64& rng) {
  if (n < 1) throw ValidationError("random walk requires n >= 1");
  std::normal_distribution<double> step(0.0, 1.0);
  std::vector<double> values(n);
  double v = 0.0;
  for (double& x : values) {
    v += step(rng);
    x = v;
  }
  return TimeSeries(std::move(values));
}

/// Random walk compressed to `runs` segments and expanded back to length n.
inline TimeSeries random_walk_apca(std::size_t n, std::size_t runs, std::mt19937_64& rng) {
  return decode(apca(random_walk(n, rng), runs).rle);
}

}  // namespace rledtw
