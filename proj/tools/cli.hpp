#pragma once

// Command-line front end. `run_cli` is separate from main() so tests can drive
// it with captured streams.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rledtw/apca.hpp"
#include "rledtw/baselines.hpp"
#include "rledtw/bench.hpp"
#include "rledtw/io.hpp"
#include "rledtw/rle.hpp"
#include "rledtw/rle_dtw.hpp"
#include "rledtw/synth.hpp"

namespace rledtw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

inline std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Inline RLE text, or the first line of an RLE file of that name.
inline RunLengthEncoding rle_argument(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    return canonicalize(parse_rle_lines(in).front());
  }
  return canonicalize(parse_rle(arg));
}

inline TimeSeries series_argument(const std::string& path) {
  return load_ucr(path).series.front();
}

// Removes the named files unless released.
class OutputGuard {
public:
  void track(const std::string& path) {
    if (!path.empty()) paths_.push_back(path);
  }
  void release() { paths_.clear(); }
  ~OutputGuard() {
    for (const auto& p : paths_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }

private:
  std::vector<std::string> paths_;
};

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact DTW on run-length encoded time series", "rledtw"};
  app.require_subcommand(1);

  // dtw
  auto* dtw = app.add_subcommand("dtw", "DTW distance between two series");
  std::string dtw_a, dtw_b, dtw_algo = "rledtw";
  bool dtw_rle = false;
  dtw->add_option("a", dtw_a, "first series: UCR file, or RLE text/file with --rle")->required();
  dtw->add_option("b", dtw_b, "second series")->required();
  dtw->add_option("--algo", dtw_algo, "naive | boundary | rledtw | bdtw")
      ->check(CLI::IsMember({"naive", "boundary", "rledtw", "bdtw"}));
  dtw->add_flag("--rle", dtw_rle, "inputs are run-length encodings (value:length ...)");

  // compress
  auto* compress = app.add_subcommand("compress", "APCA-compress every series of a dataset");
  std::string comp_file, comp_out;
  std::optional<std::size_t> comp_k;
  std::optional<double> comp_ratio;
  compress->add_option("file", comp_file, "UCR-format dataset")->required();
  auto* k_opt = compress->add_option("--k", comp_k, "number of segments");
  auto* r_opt = compress->add_option("--ratio", comp_ratio, "space-saving ratio rho = 1 - k/n");
  k_opt->excludes(r_opt);
  compress->add_option("--out", comp_out, "output RLE file (default: stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "speedup/error sweep over space-saving ratios");
  std::string bench_file, bench_ratios, bench_algos, bench_csv, bench_svg;
  BenchConfig cfg;
  bench->add_option("file", bench_file, "UCR-format dataset")->required();
  bench->add_option("--ratios", bench_ratios, "comma-separated rho values");
  bench->add_option("--sample", cfg.sample_size, "series sampled from the dataset");
  bench->add_option("--seed", cfg.seed, "sampling seed");
  bench->add_option("--reps", cfg.repetitions, "timing repetitions (best of)");
  bench->add_option("--algos", bench_algos, "comma-separated subset of naive,boundary,rledtw,bdtw");
  bench->add_option("--csv", bench_csv, "per-pair CSV output");
  bench->add_option("--svg", bench_svg, "chart output");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  std::string gen_kind = "staircase", gen_out;
  std::size_t gen_n = 1024, gen_count = 100, gen_runs = 16;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "staircase | randomwalk-then-apca")
      ->check(CLI::IsMember({"staircase", "randomwalk-then-apca"}));
  gen->add_option("--n", gen_n, "series length");
  gen->add_option("--count", gen_count, "number of series");
  gen->add_option("--runs", gen_runs, "runs per series");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dtw->parsed()) {
      if (dtw_algo == "naive" && !dtw_rle) {
        out << format12(dtw_naive(detail::series_argument(dtw_a), detail::series_argument(dtw_b)).distance) << '\n';
        return kExitOk;
      }
      const RunLengthEncoding x = dtw_rle ? detail::rle_argument(dtw_a) : encode(detail::series_argument(dtw_a));
      const RunLengthEncoding y = dtw_rle ? detail::rle_argument(dtw_b) : encode(detail::series_argument(dtw_b));
      if (dtw_algo == "naive") {
        out << format12(dtw_naive(decode(x), decode(y)).distance) << '\n';
      } else if (dtw_algo == "boundary") {
        out << format12(dtw_boundary(x, y).distance) << '\n';
      } else if (dtw_algo == "rledtw") {
        const auto r = rle_dtw(x, y);
        out << format12(r.distance) << '\n' << "kappa=" << r.kappa << '\n';
      } else {
        const auto b = bdtw_bounds(x, y);
        out << format12(b.lower) << ' ' << format12(b.upper) << '\n';
      }
      return kExitOk;
    }

    if (compress->parsed()) {
      if (!comp_k && !comp_ratio) throw ValidationError("exactly one of --k or --ratio is required");
      const Dataset ds = load_ucr(comp_file);
      for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
      std::ostringstream body;
      double total_sse = 0.0;
      for (std::size_t s = 0; s < ds.series.size(); ++s) {
        const std::size_t n = ds.series[s].size();
        const std::size_t k = comp_k ? *comp_k : ratio_to_k(n, *comp_ratio);
        const auto res = apca(ds.series[s], k);
        body << to_text(res.rle) << '\n';
        err << "series " << s << ": k=" << k << " runs=" << res.rle.size() << " sse=" << format12(res.segmentation.sse)
            << '\n';
        total_sse += res.segmentation.sse;
      }
      err << "compressed " << ds.series.size() << " series, total sse=" << format12(total_sse) << '\n';
      if (comp_out.empty()) {
        out << body.str();
      } else {
        std::ofstream f(comp_out);
        if (!f) throw ValidationError("cannot write '" + comp_out + "'");
        f << body.str();
      }
      return kExitOk;
    }

    if (bench->parsed()) {
      detail::OutputGuard guard;
      if (!bench_ratios.empty()) {
        cfg.ratios.clear();
        for (const auto& r : detail::split_list(bench_ratios)) cfg.ratios.push_back(parse_double(r));
      }
      if (!bench_algos.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : detail::split_list(bench_algos)) cfg.algorithms.push_back(parse_algorithm(a));
      }
      const Dataset ds = load_ucr(bench_file);
      for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
      cfg.dataset = ds.name;
      cfg.validate();
      if (std::min(cfg.sample_size, ds.series.size()) < 2)
        throw ValidationError("bench needs at least 2 series after sampling");

      guard.track(bench_csv);
      guard.track(bench_svg);
      const auto records = run_sweep(ds.series, cfg);
      const auto summary = summarize(records, ds.series.front().size());
      if (!bench_csv.empty()) {
        std::ofstream f(bench_csv);
        if (!f) throw ValidationError("cannot write '" + bench_csv + "'");
        write_csv(f, records);
        if (!f) throw std::runtime_error("write failed: " + bench_csv);
      }
      if (!bench_svg.empty()) {
        std::ofstream f(bench_svg);
        if (!f) throw ValidationError("cannot write '" + bench_svg + "'");
        write_svg(f, summary);
        if (!f) throw std::runtime_error("write failed: " + bench_svg);
      }
      out << "rho,k,algorithm,pairs,mean_speedup,median_speedup,mean_error_pct,mean_kappa,kappa_cap\n";
      for (const auto& s : summary) {
        out << format_double(s.rho) << ',' << s.k << ',' << s.algorithm << ',' << s.count << ','
            << format12(s.mean_speedup) << ',' << format12(s.median_speedup) << ','
            << (s.mean_error_pct ? format12(*s.mean_error_pct) : "") << ','
            << (s.mean_kappa ? format12(*s.mean_kappa) : "") << ','
            << (s.kappa_cap_boundary ? format12(*s.kappa_cap_boundary) : "") << '\n';
      }
      guard.release();
      return kExitOk;
    }

    if (gen->parsed()) {
      if (gen_n < 1 || gen_runs < 1 || gen_runs > gen_n || gen_count < 1)
        throw ValidationError("gen requires n >= runs >= 1 and count >= 1");
      std::mt19937_64 rng(gen_seed);
      Dataset ds;
      for (std::size_t s = 0; s < gen_count; ++s) {
        ds.series.push_back(gen_kind == "staircase" ? staircase(gen_n, gen_runs, rng)
                                                    : random_walk_apca(gen_n, gen_runs, rng));
        ds.labels.push_back("1");
      }
      if (gen_out.empty()) {
        write_ucr(out, ds);
      } else {
        std::ofstream f(gen_out);
        if (!f) throw ValidationError("cannot write '" + gen_out + "'");
        write_ucr(f, ds);
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace rledtw::cli
