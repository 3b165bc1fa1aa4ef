#pragma once

// Line-oriented reader shared by the instance, solution and manifest parsers.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "farmroute/errors.hpp"
#include "farmroute/geometry.hpp"

namespace farmroute::detail {

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t line_no() const { return pos_; }  // 1-based number of the last line read

  // Next line split on whitespace; the first token must equal `key`.
  std::vector<std::string> keyed(std::string_view key) {
    auto toks = next(key);
    if (toks.empty() || toks.front() != key) {
      fail(std::string(key), "expected '" + std::string(key) + "'");
    }
    toks.erase(toks.begin());
    return toks;
  }

  std::vector<std::string> next(std::string_view what) {
    if (done()) throw FormatError(0, std::string(what), "unexpected end of input");
    std::vector<std::string> toks;
    std::istringstream in(lines_[pos_++]);
    for (std::string t; in >> t;) toks.push_back(t);
    return toks;
  }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw FormatError(pos_, field, what);
  }

  void arity(const std::vector<std::string>& toks, std::size_t n, const std::string& field) const {
    if (toks.size() != n) {
      fail(field, "expected " + std::to_string(n) + " value(s), got " + std::to_string(toks.size()));
    }
  }

  double real(const std::string& tok, const std::string& field) const {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size() || !std::isfinite(v)) {
      fail(field, "bad real '" + tok + "'");
    }
    return v;
  }

  template <typename Int>
  Int integer(const std::string& tok, const std::string& field) const {
    Int v{};
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size()) {
      fail(field, "bad integer '" + tok + "'");
    }
    return v;
  }

  Point point(const std::vector<std::string>& toks, std::size_t at, const std::string& field) const {
    return {real(toks.at(at), field), real(toks.at(at + 1), field)};
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

}  // namespace farmroute::detail
