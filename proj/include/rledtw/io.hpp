#pragma once

// Text formats: UCR-style datasets, RLE lines, benchmark CSV and SVG charts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rledtw/bench.hpp"
#include "rledtw/rle.hpp"

namespace rledtw {

struct Dataset {
  std::string name;
  std::vector<TimeSeries> series;
  std::vector<std::string> labels;
  /// One message per skipped line.
  std::vector<std::string> warnings;

  bool equal_length() const noexcept {
    for (const auto& s : series)
      if (s.size() != series.front().size()) return false;
    return true;
  }
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  // Delimiter per line: tab if present, else comma, else runs of spaces.
  char delim = ' ';
  if (line.find('\t') != std::string_view::npos)
    delim = '\t';
  else if (line.find(',') != std::string_view::npos)
    delim = ',';
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = line.find(delim, pos);
    if (end == std::string_view::npos) end = line.size();
    std::string_view f = line.substr(pos, end - pos);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\r')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\r')) f.remove_suffix(1);
    if (!(delim == ' ' && f.empty())) fields.push_back(f);
    pos = end + 1;
  }
  if (delim != ' ' && !fields.empty() && fields.back().empty()) fields.pop_back();  // trailing delimiter
  return fields;
}

inline bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace detail

/// Parses a UCR-style dataset: one series per non-empty line, first field the
/// class label, remaining fields the values. Lines whose field count differs
/// from the first series are skipped with a warning.
inline Dataset parse_ucr(std::istream& in, std::string name = "dataset") {
  Dataset ds;
  ds.name = std::move(name);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> fields_expected;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() < 2) {
      ds.warnings.push_back("line " + std::to_string(lineno) + ": no values after label, skipped");
      continue;
    }
    if (fields_expected && fields.size() != *fields_expected) {
      ds.warnings.push_back("line " + std::to_string(lineno) + ": expected " + std::to_string(*fields_expected) +
                            " fields, found " + std::to_string(fields.size()) + ", skipped");
      continue;
    }
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      const double v = parse_double(fields[f], lineno);
      if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
      values.push_back(v);
    }
    fields_expected = fields.size();
    ds.labels.emplace_back(fields[0]);
    ds.series.emplace_back(std::move(values));
  }
  if (ds.series.empty()) throw ParseError("no series");
  return ds;
}

inline Dataset load_ucr(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  std::replace(name.begin(), name.end(), ',', '_');
  return parse_ucr(in, name);
}

inline void write_ucr(std::ostream& out, const Dataset& ds) {
  for (std::size_t s = 0; s < ds.series.size(); ++s) {
    out << (s < ds.labels.size() ? ds.labels[s] : std::string("0"));
    for (double v : ds.series[s]) out << '\t' << format_double(v);
    out << '\n';
  }
}

/// One RLE per non-empty line.
inline std::vector<RunLengthEncoding> parse_rle_lines(std::istream& in) {
  std::vector<RunLengthEncoding> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    out.push_back(parse_rle(line, lineno));
  }
  if (out.empty()) throw ParseError("no run-length encodings");
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark CSV

inline constexpr std::string_view kCsvHeader =
    "dataset,rho,k,algorithm,pair,wall_ns,distance,squared_cost,kappa,speedup,error_pct";

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.dataset << ',' << format_double(r.rho) << ',' << r.k << ',' << r.algorithm << ',' << r.pair << ','
        << r.wall_ns << ',' << format_double(r.distance) << ',' << format_double(r.squared_cost) << ',';
    if (r.kappa) out << *r.kappa;
    out << ',' << format_double(r.speedup) << ',';
    if (r.error_pct) out << format_double(*r.error_pct);
    out << '\n';
  }
}

inline std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("unexpected CSV header", 1);
  std::vector<BenchRecord> out;
  std::size_t lineno = 1;
  auto to_size = [&](std::string_view f) {
    std::size_t v = 0;
    auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size())
      throw ParseError("invalid integer '" + std::string(f) + "'", lineno);
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank(line)) continue;
    if (line.back() == '\r') line.pop_back();
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 11) throw ParseError("expected 11 CSV fields", lineno);
    BenchRecord r;
    r.dataset = std::string(f[0]);
    r.rho = parse_double(f[1], lineno);
    r.k = to_size(f[2]);
    r.algorithm = std::string(f[3]);
    r.pair = to_size(f[4]);
    r.wall_ns = static_cast<std::int64_t>(to_size(f[5]));
    r.distance = parse_double(f[6], lineno);
    r.squared_cost = parse_double(f[7], lineno);
    if (!f[8].empty()) r.kappa = to_size(f[8]);
    r.speedup = parse_double(f[9], lineno);
    if (!f[10].empty()) r.error_pct = parse_double(f[10], lineno);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG chart: log10(mean speedup) over rho per algorithm, and log10(mean E)
// for the BDTW bounds.

namespace detail {

struct Series2d {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (rho, log10 value)
};

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return colors[i % 6];
}

inline void svg_panel(std::ostream& out, double x0, double y0, double w, double h, const std::string& title,
                      const std::string& ylabel, const std::vector<Series2d>& series) {
  double rmin = 1.0, rmax = 0.0, vmin = 0.0, vmax = 0.0;
  bool any = false;
  for (const auto& s : series)
    for (auto [r, v] : s.points) {
      if (!any) {
        vmin = vmax = v;
        any = true;
      }
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  if (!any) {
    rmin = 0.0;
    rmax = 1.0;
  }
  if (rmax <= rmin) rmax = rmin + 1e-3;
  vmin = std::floor(std::min(vmin, 0.0));
  vmax = std::ceil(std::max(vmax, vmin + 1.0));
  const double left = x0 + 60, right = x0 + w - 130, top = y0 + 30, bottom = y0 + h - 40;
  auto px = [&](double r) { return left + (r - rmin) / (rmax - rmin) * (right - left); };
  auto py = [&](double v) { return bottom - (v - vmin) / (vmax - vmin) * (bottom - top); };

  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << y0 + 18
      << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\""
      << bottom - top << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (double v = vmin; v <= vmax + 1e-9; v += 1.0) {
    out << "<line x1=\"" << left << "\" y1=\"" << py(v) << "\" x2=\"" << right << "\" y2=\"" << py(v)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
        << v << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double r = rmin + (rmax - rmin) * t / 4.0;
    std::ostringstream lbl;
    lbl.precision(3);
    lbl << r;
    out << "<text x=\"" << px(r) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
        << lbl.str() << "</text>\n";
  }
  out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 32
      << "\" text-anchor=\"middle\" font-size=\"12\">space-saving ratio rho</text>\n";
  out << "<text x=\"" << x0 + 14 << "\" y=\"" << (top + bottom) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 "
      << x0 + 14 << ' ' << (top + bottom) / 2 << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << palette(s) << "\" stroke-width=\"2\" points=\"";
    for (auto [r, v] : series[s].points) out << px(r) << ',' << py(v) << ' ';
    out << "\"/>\n";
    for (auto [r, v] : series[s].points)
      out << "<circle cx=\"" << px(r) << "\" cy=\"" << py(v) << "\" r=\"3\" fill=\"" << palette(s) << "\"/>\n";
    out << "<text x=\"" << right + 10 << "\" y=\"" << top + 16 + 16.0 * static_cast<double>(s)
        << "\" font-size=\"12\" fill=\"" << palette(s) << "\">" << series[s].label << "</text>\n";
  }
}

}  // namespace detail

inline void write_svg(std::ostream& out, const std::vector<BenchSummary>& summaries) {
  std::map<std::string, detail::Series2d> speed, error;
  for (const auto& s : summaries) {
    if (s.mean_speedup > 0.0) {
      auto& ser = speed[s.algorithm];
      ser.label = s.algorithm;
      ser.points.emplace_back(s.rho, std::log10(s.mean_speedup));
    }
    if (s.mean_error_pct && *s.mean_error_pct > 0.0) {
      auto& ser = error[s.algorithm];
      ser.label = s.algorithm;
      ser.points.emplace_back(s.rho, std::log10(*s.mean_error_pct));
    }
  }
  auto flatten = [](std::map<std::string, detail::Series2d>& m) {
    std::vector<detail::Series2d> v;
    for (auto& [name, s] : m) {
      std::sort(s.points.begin(), s.points.end());
      v.push_back(std::move(s));
    }
    return v;
  };
  const double w = 720, h = 360;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << 2 * h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  detail::svg_panel(out, 0, 0, w, h, "Mean speedup over naive DTW", "log10(mean speedup)", flatten(speed));
  detail::svg_panel(out, 0, h, w, h, "Mean error percentage of BDTW bounds", "log10(mean E)", flatten(error));
  out << "</svg>\n";
}

}  // namespace rledtw
