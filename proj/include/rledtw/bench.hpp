#pragma once

// Sweep engine: compress a sample of equal-length series at several
// space-saving ratios and time every enabled algorithm on every unordered
// pair against the naive DP.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "rledtw/apca.hpp"
#include "rledtw/baselines.hpp"
#include "rledtw/rle.hpp"
#include "rledtw/rle_dtw.hpp"

namespace rledtw {

enum class Algorithm { naive, boundary, rledtw, bdtw };

inline const char* algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::naive: return "naive";
    case Algorithm::boundary: return "boundary";
    case Algorithm::rledtw: return "rledtw";
    case Algorithm::bdtw: return "bdtw";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "naive") return Algorithm::naive;
  if (name == "boundary") return Algorithm::boundary;
  if (name == "rledtw") return Algorithm::rledtw;
  if (name == "bdtw") return Algorithm::bdtw;
  throw ValidationError("unknown algorithm '" + name + "'");
}

// BDTW emits one record per bound.
inline constexpr const char* kBdtwLower = "bdtw_lower";
inline constexpr const char* kBdtwUpper = "bdtw_upper";

/// Worker count: physical cores minus one (at least one), capped by RLEDTW_THREADS.
inline std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = hw > 1 ? hw - 1 : 1;
  if (const char* env = std::getenv("RLEDTW_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) workers = std::min(workers, static_cast<std::size_t>(cap));
  }
  return workers;
}

struct BenchConfig {
  std::vector<double> ratios{0.1, 0.5, 0.75, 0.9, 0.925, 0.95, 0.975, 0.99};
  std::size_t sample_size = 100;
  std::vector<Algorithm> algorithms{Algorithm::naive, Algorithm::boundary, Algorithm::rledtw,
                                    Algorithm::bdtw};
  std::uint64_t seed = 1;
  std::size_t repetitions = 5;
  std::size_t workers = default_workers();
  std::string dataset = "dataset";

  void validate() const {
    if (ratios.empty()) throw ValidationError("at least one space-saving ratio is required");
    for (double r : ratios)
      if (!(r >= 0.0 && r < 1.0)) throw ValidationError("space-saving ratios must lie in [0, 1)");
    if (sample_size < 2) throw ValidationError("sample size must be at least 2");
    if (repetitions < 1) throw ValidationError("repetitions must be at least 1");
    if (workers < 1) throw ValidationError("worker count must be at least 1");
    if (dataset.find_first_of(",\n") != std::string::npos)
      throw ValidationError("dataset id must not contain commas or newlines");
  }
};

struct BenchRecord {
  std::string dataset;
  double rho = 0.0;
  std::size_t k = 0;
  std::string algorithm;
  std::size_t pair = 0;
  std::int64_t wall_ns = 0;
  double distance = 0.0;
  double squared_cost = 0.0;
  std::optional<std::size_t> kappa;
  double speedup = 1.0;
  std::optional<double> error_pct;
};

/// E = 100 |exact - approx| / exact; undefined when exact is 0.
inline std::optional<double> error_percent(double exact, double approx) {
  if (!(exact > 0.0)) return std::nullopt;
  return 100.0 * std::abs(exact - approx) / exact;
}

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Best-of-R wall time of fn(); returns (nanoseconds, last result).
template <typename Fn>
auto best_of(std::size_t reps, Fn&& fn) {
  using clock = std::chrono::steady_clock;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  decltype(fn()) result{};
  for (std::size_t r = 0; r < reps; ++r) {
    const auto t0 = clock::now();
    result = fn();
    const auto t1 = clock::now();
    best = std::min<std::int64_t>(best, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  }
  return std::pair{std::max<std::int64_t>(best, 1), result};
}

inline int algorithm_rank(const std::string& name) {
  static const char* order[] = {"naive", "boundary", "rledtw", kBdtwLower, kBdtwUpper};
  for (int i = 0; i < 5; ++i)
    if (name == order[i]) return i;
  return 5;
}

}  // namespace detail

/// Pair index -> (first, second) for the unordered pairs i < j of `count` items,
/// enumerated row by row.
inline std::vector<std::pair<std::size_t, std::size_t>> unordered_pairs(std::size_t count) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(count * (count - 1) / 2);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b) pairs.emplace_back(a, b);
  return pairs;
}

/// Deterministic sample of at most `size` indices out of `count`.
inline std::vector<std::size_t> sample_indices(std::size_t count, std::size_t size, std::uint64_t seed) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (size >= count) return idx;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(size);
  return idx;
}

inline std::vector<BenchRecord> run_sweep(const std::vector<TimeSeries>& data, const BenchConfig& cfg) {
  cfg.validate();
  if (data.size() < 2) throw ValidationError("a sweep needs at least 2 series");
  const std::size_t n = data.front().size();
  for (const auto& ts : data)
    if (ts.size() != n) throw ValidationError("all series of a sweep must have the same length");

  const auto picked = sample_indices(data.size(), cfg.sample_size, cfg.seed);
  const auto pairs = unordered_pairs(picked.size());

  bool with_boundary = false, with_rledtw = false, with_bdtw = false;
  for (Algorithm a : cfg.algorithms) {
    with_boundary |= a == Algorithm::boundary;
    with_rledtw |= a == Algorithm::rledtw;
    with_bdtw |= a == Algorithm::bdtw;
  }

  std::vector<BenchRecord> records;
  std::mutex records_mutex;
  for (double rho : cfg.ratios) {
    const std::size_t k = ratio_to_k(n, rho);
    std::vector<std::optional<RunLengthEncoding>> rle(picked.size());
    std::vector<std::optional<TimeSeries>> raw(picked.size());
    detail::parallel_for(picked.size(), cfg.workers, [&](std::size_t s) {
      rle[s] = apca(data[picked[s]], k).rle;
      raw[s] = decode(*rle[s]);
    });

    detail::parallel_for(pairs.size(), cfg.workers, [&](std::size_t p) {
      const auto [a, b] = pairs[p];
      const TimeSeries& xa = *raw[a];
      const TimeSeries& xb = *raw[b];
      const RunLengthEncoding& ra = *rle[a];
      const RunLengthEncoding& rb = *rle[b];

      std::vector<BenchRecord> out;
      auto make = [&](const char* name, std::int64_t ns, double dist, double sq) {
        BenchRecord r;
        r.dataset = cfg.dataset;
        r.rho = rho;
        r.k = k;
        r.algorithm = name;
        r.pair = p;
        r.wall_ns = ns;
        r.distance = dist;
        r.squared_cost = sq;
        return r;
      };

      const auto [t_naive, exact] = detail::best_of(cfg.repetitions, [&] { return dtw_naive(xa, xb); });
      const double t_ref = static_cast<double>(t_naive);
      out.push_back(make("naive", t_naive, exact.distance, exact.squared_cost));

      if (with_boundary) {
        const auto [t, v] = detail::best_of(cfg.repetitions, [&] { return dtw_boundary(ra, rb); });
        out.push_back(make("boundary", t, v.distance, v.squared_cost));
        out.back().speedup = t_ref / static_cast<double>(t);
      }
      if (with_rledtw) {
        const auto [t, v] = detail::best_of(cfg.repetitions, [&] { return rle_dtw(ra, rb); });
        out.push_back(make("rledtw", t, v.distance, v.squared_cost));
        out.back().kappa = v.kappa;
        out.back().speedup = t_ref / static_cast<double>(t);
      }
      if (with_bdtw) {
        const auto [t, v] = detail::best_of(cfg.repetitions, [&] { return bdtw_bounds(ra, rb); });
        out.push_back(make(kBdtwLower, t, v.lower, v.lower * v.lower));
        out.back().speedup = t_ref / static_cast<double>(t);
        out.back().error_pct = error_percent(exact.distance, v.lower);
        out.push_back(make(kBdtwUpper, t, v.upper, v.upper * v.upper));
        out.back().speedup = t_ref / static_cast<double>(t);
        out.back().error_pct = error_percent(exact.distance, v.upper);
      }
      std::lock_guard lock(records_mutex);
      records.insert(records.end(), out.begin(), out.end());
    });
  }

  std::sort(records.begin(), records.end(), [](const BenchRecord& x, const BenchRecord& y) {
    return std::tuple(x.dataset, x.rho, x.pair, detail::algorithm_rank(x.algorithm), x.algorithm) <
           std::tuple(y.dataset, y.rho, y.pair, detail::algorithm_rank(y.algorithm), y.algorithm);
  });
  return records;
}

struct BenchSummary {
  std::string dataset;
  double rho = 0.0;
  std::size_t k = 0;
  std::string algorithm;
  std::size_t count = 0;
  double mean_speedup = 0.0;
  double median_speedup = 0.0;
  std::optional<double> mean_error_pct;  // over records with a defined E
  std::optional<double> mean_kappa;
  // Theoretical caps for equal-length inputs of length n compressed to k runs:
  // kn + lm - kl = 2kn - k^2 and (k + l)(kl + 1) = 2k(k^2 + 1). Set when n is known.
  std::optional<double> kappa_cap_boundary;
  std::optional<double> kappa_cap_blocks;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// Per-(dataset, rho, algorithm) aggregates, sorted by dataset, rho, algorithm.
/// `series_length` (0 = unknown) enables the kappa caps.
inline std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records,
                                           std::size_t series_length = 0) {
  using Key = std::tuple<std::string, double, int, std::string>;
  std::map<Key, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records)
    groups[{r.dataset, r.rho, detail::algorithm_rank(r.algorithm), r.algorithm}].push_back(&r);

  std::vector<BenchSummary> out;
  out.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    BenchSummary s;
    s.dataset = std::get<0>(key);
    s.rho = std::get<1>(key);
    s.algorithm = std::get<3>(key);
    s.k = group.front()->k;
    s.count = group.size();
    std::vector<double> speedups;
    double err_sum = 0.0, kappa_sum = 0.0;
    std::size_t err_n = 0, kappa_n = 0;
    for (const BenchRecord* r : group) {
      speedups.push_back(r->speedup);
      if (r->error_pct) {
        err_sum += *r->error_pct;
        ++err_n;
      }
      if (r->kappa) {
        kappa_sum += static_cast<double>(*r->kappa);
        ++kappa_n;
      }
    }
    s.mean_speedup = std::accumulate(speedups.begin(), speedups.end(), 0.0) / static_cast<double>(speedups.size());
    s.median_speedup = median(speedups);
    if (err_n) s.mean_error_pct = err_sum / static_cast<double>(err_n);
    if (kappa_n) s.mean_kappa = kappa_sum / static_cast<double>(kappa_n);
    if (series_length && kappa_n) {
      const double k = static_cast<double>(s.k);
      const double n = static_cast<double>(series_length);
      s.kappa_cap_boundary = 2.0 * k * n - k * k;
      s.kappa_cap_blocks = 2.0 * k * (k * k + 1.0);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rledtw
