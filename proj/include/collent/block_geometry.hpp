#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collent/errors.hpp"

namespace collent {

/// Two interleaved periodic blocks A and B: each has m subblocks of s
/// contiguous oscillators, consecutive subblocks (alternately A, B, A, ...)
/// are d sites apart. m = 1 is the plain two-block geometry.
struct BlockSpec {
  std::size_t m = 1;
  std::size_t s = 1;
  std::size_t d = 0;

  /// Oscillators per block.
  std::size_t n() const noexcept { return m * s; }
  /// Sites from the first oscillator of A to the last of B, inclusive.
  std::size_t span() const noexcept { return 2 * m * s + (2 * m - 1) * d; }
  /// Largest |i - j| between any two involved oscillators.
  std::size_t max_lag() const noexcept { return span() - 1; }

  friend auto operator<=>(const BlockSpec&, const BlockSpec&) = default;
};

inline void validate(const BlockSpec& spec) {
  if (spec.m < 1 || spec.s < 1) {
    throw DomainError("block spec needs m >= 1 and s >= 1");
  }
}

/// Canonical "m:s:d" form.
inline std::string to_string(const BlockSpec& spec) {
  return std::to_string(spec.m) + ":" + std::to_string(spec.s) + ":" + std::to_string(spec.d);
}

inline BlockSpec parse_block_spec(std::string_view text) {
  std::size_t fields[3] = {0, 0, 0};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = (i < 2) ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos || end == pos) {
      throw DomainError("block spec must have the form m:s:d, got '" + std::string(text) + "'");
    }
    const auto field = text.substr(pos, end - pos);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), fields[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      throw DomainError("block spec must have the form m:s:d, got '" + std::string(text) + "'");
    }
    pos = end + 1;
  }
  BlockSpec spec{fields[0], fields[1], fields[2]};
  validate(spec);
  return spec;
}

struct BlockIndices {
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;
};

/// Chain positions of both blocks, laid out from site 0 with A's subblock first.
inline BlockIndices block_indices(const BlockSpec& spec) {
  validate(spec);
  BlockIndices out;
  out.a.reserve(spec.n());
  out.b.reserve(spec.n());
  std::int64_t pos = 0;
  for (std::size_t sub = 0; sub < 2 * spec.m; ++sub) {
    auto& target = (sub % 2 == 0) ? out.a : out.b;
    for (std::size_t j = 0; j < spec.s; ++j) target.push_back(pos++);
    pos += static_cast<std::int64_t>(spec.d);
  }
  return out;
}

using LagCounts = std::map<std::size_t, std::size_t>;

/// Multiplicity of each lag |i - j| over all pairs (i in x, j in y).
inline LagCounts lag_multiset(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  LagCounts counts;
  for (const auto i : x) {
    for (const auto j : y) {
      ++counts[static_cast<std::size_t>(i > j ? i - j : j - i)];
    }
  }
  return counts;
}

}  // namespace collent
