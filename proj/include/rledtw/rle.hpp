#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rledtw {

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A non-empty series of finite reals.
class TimeSeries {
public:
  explicit TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("time series must not be empty");
    for (double v : values_)
      if (!std::isfinite(v)) throw ValidationError("time series values must be finite");
  }
  TimeSeries(std::initializer_list<double> values) : TimeSeries(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
  std::vector<double> values_;
};

struct Run {
  double value;
  std::int64_t length;

  friend bool operator==(const Run&, const Run&) = default;
};

/// Sequence of (value, length) runs. Construction validates run lengths and
/// values; canonical form (distinct adjacent values) is not required here.
class RunLengthEncoding {
public:
  explicit RunLengthEncoding(std::vector<Run> runs) : runs_(std::move(runs)) {
    if (runs_.empty()) throw ValidationError("run-length encoding must have at least one run");
    for (const Run& r : runs_) {
      if (r.length < 1) throw ValidationError("run length must be positive");
      if (!std::isfinite(r.value)) throw ValidationError("run values must be finite");
      total_ += r.length;
    }
  }
  RunLengthEncoding(std::initializer_list<Run> runs) : RunLengthEncoding(std::vector<Run>(runs)) {}

  /// Coding length (number of runs).
  std::size_t size() const noexcept { return runs_.size(); }
  std::int64_t total_length() const noexcept { return total_; }
  const Run& operator[](std::size_t i) const noexcept { return runs_[i]; }
  std::span<const Run> runs() const noexcept { return runs_; }
  auto begin() const noexcept { return runs_.begin(); }
  auto end() const noexcept { return runs_.end(); }

  bool is_canonical() const noexcept {
    for (std::size_t i = 1; i < runs_.size(); ++i)
      if (runs_[i].value == runs_[i - 1].value) return false;
    return true;
  }

  friend bool operator==(const RunLengthEncoding& a, const RunLengthEncoding& b) {
    return a.runs_ == b.runs_;
  }

private:
  std::vector<Run> runs_;
  std::int64_t total_ = 0;
};

// Run merging uses exact floating-point equality.
inline RunLengthEncoding encode(const TimeSeries& ts) {
  std::vector<Run> runs;
  for (double v : ts) {
    if (!runs.empty() && runs.back().value == v)
      ++runs.back().length;
    else
      runs.push_back({v, 1});
  }
  return RunLengthEncoding(std::move(runs));
}

inline TimeSeries decode(const RunLengthEncoding& rle) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rle.total_length()));
  for (const Run& r : rle) out.insert(out.end(), static_cast<std::size_t>(r.length), r.value);
  return TimeSeries(std::move(out));
}

inline RunLengthEncoding canonicalize(const RunLengthEncoding& rle) {
  std::vector<Run> runs;
  runs.reserve(rle.size());
  for (const Run& r : rle) {
    if (!runs.empty() && runs.back().value == r.value)
      runs.back().length += r.length;
    else
      runs.push_back(r);
  }
  return RunLengthEncoding(std::move(runs));
}

inline void require_canonical(const RunLengthEncoding& rle) {
  if (!rle.is_canonical())
    throw ValidationError("run-length encoding must be canonical (adjacent runs with equal values)");
}

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, std::size_t line = 0) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ParseError("invalid number '" + std::string(text) + "'", line);
  return v;
}

/// Renders `v1:l1 v2:l2 ...`.
inline std::string to_text(const RunLengthEncoding& rle) {
  std::string out;
  for (std::size_t i = 0; i < rle.size(); ++i) {
    if (i) out += ' ';
    out += format_double(rle[i].value);
    out += ':';
    out += std::to_string(rle[i].length);
  }
  return out;
}

inline RunLengthEncoding parse_rle(std::string_view text, std::size_t line = 0) {
  std::vector<Run> runs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\r') ++end;
    std::string_view token = text.substr(pos, end - pos);
    auto colon = token.rfind(':');
    if (colon == std::string_view::npos)
      throw ParseError("run '" + std::string(token) + "' is not of the form value:length", line);
    double value = parse_double(token.substr(0, colon), line);
    std::string_view len_text = token.substr(colon + 1);
    std::int64_t len = 0;
    auto res = std::from_chars(len_text.data(), len_text.data() + len_text.size(), len);
    if (len_text.empty() || res.ec != std::errc() || res.ptr != len_text.data() + len_text.size())
      throw ParseError("invalid run length '" + std::string(len_text) + "'", line);
    runs.push_back({value, len});
    pos = end;
  }
  if (runs.empty()) throw ParseError("empty run-length encoding", line);
  try {
    return RunLengthEncoding(std::move(runs));
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace rledtw
