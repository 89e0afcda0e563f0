#pragma once

// Grid arguments of the command line: comma-separated items, each a single
// value or a range. Integer ranges are "a..b" (inclusive); real ranges are
// "a..b:step", expanded as a + i * step for i = 0, 1, ... while <= b.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "collent/errors.hpp"

namespace collent::cli {

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw DomainError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

inline std::vector<std::size_t> parse_size_list(std::string_view text, std::string_view what) {
  std::vector<std::size_t> out;
  for (auto item : detail::split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_number<std::size_t>(item, what));
      continue;
    }
    const auto lo = detail::parse_number<std::size_t>(item.substr(0, dots), what);
    const auto hi = detail::parse_number<std::size_t>(item.substr(dots + 2), what);
    if (hi < lo) throw DomainError("empty " + std::string(what) + " range '" + std::string(item) + "'");
    if (hi - lo > 1'000'000) throw DomainError(std::string(what) + " range too large");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

inline std::vector<double> parse_real_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (auto item : detail::split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(detail::parse_number<double>(item, what));
      continue;
    }
    const auto colon = item.find(':', dots);
    if (colon == std::string_view::npos) {
      throw DomainError(std::string(what) + " range '" + std::string(item) +
                        "' needs a step, e.g. 0.1..0.9:0.1");
    }
    const double lo = detail::parse_number<double>(item.substr(0, dots), what);
    const double hi = detail::parse_number<double>(item.substr(dots + 2, colon - dots - 2), what);
    const double step = detail::parse_number<double>(item.substr(colon + 1), what);
    if (!(step > 0.0) || !(hi >= lo)) {
      throw DomainError("invalid " + std::string(what) + " range '" + std::string(item) + "'");
    }
    const double count = std::floor((hi - lo) / step + 1e-9) + 1.0;
    if (count > 1e6) throw DomainError(std::string(what) + " range too large");
    for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
      out.push_back(lo + static_cast<double>(i) * step);
    }
  }
  return out;
}

}  // namespace collent::cli
