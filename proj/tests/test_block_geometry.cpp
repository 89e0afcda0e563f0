#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "collent/block_geometry.hpp"

using namespace collent;
using Sites = std::vector<std::int64_t>;

TEST(BlockIndices, ContiguousLayout) {
  const auto idx = block_indices({1, 3, 2});
  EXPECT_EQ(idx.a, (Sites{0, 1, 2}));
  EXPECT_EQ(idx.b, (Sites{5, 6, 7}));
}

TEST(BlockIndices, PeriodicInterleavedLayout) {
  const auto idx = block_indices({2, 3, 1});
  EXPECT_EQ(idx.a, (Sites{0, 1, 2, 8, 9, 10}));
  EXPECT_EQ(idx.b, (Sites{4, 5, 6, 12, 13, 14}));
}

TEST(BlockIndices, StrictAlternation) {
  const auto idx = block_indices({3, 1, 0});
  EXPECT_EQ(idx.a, (Sites{0, 2, 4}));
  EXPECT_EQ(idx.b, (Sites{1, 3, 5}));
}

TEST(BlockIndices, RejectsEmptySubblocks) {
  EXPECT_THROW(block_indices({0, 3, 1}), DomainError);
  EXPECT_THROW(block_indices({2, 0, 1}), DomainError);
}

TEST(BlockIndices, LayoutPropertiesOverGrid) {
  for (std::size_t m = 1; m <= 6; ++m) {
    for (std::size_t s = 1; s <= 6; ++s) {
      for (std::size_t d = 0; d <= 4; ++d) {
        const BlockSpec spec{m, s, d};
        const auto idx = block_indices(spec);
        ASSERT_EQ(idx.a.size(), spec.n());
        ASSERT_EQ(idx.b.size(), spec.n());
        ASSERT_TRUE(std::is_sorted(idx.a.begin(), idx.a.end()));
        ASSERT_TRUE(std::is_sorted(idx.b.begin(), idx.b.end()));
        Sites all = idx.a;
        all.insert(all.end(), idx.b.begin(), idx.b.end());
        std::sort(all.begin(), all.end());
        ASSERT_EQ(std::adjacent_find(all.begin(), all.end()), all.end()) << "overlap";
        ASSERT_EQ(static_cast<std::size_t>(all.back() - all.front()), spec.max_lag());
        // Walking left to right: subblocks of s sites alternate A, B with gaps of d.
        for (std::size_t sub = 0; sub < 2 * m; ++sub) {
          const auto& owner = (sub % 2 == 0) ? idx.a : idx.b;
          const std::int64_t start = static_cast<std::int64_t>(sub * (s + d));
          for (std::size_t j = 0; j < s; ++j) {
            ASSERT_EQ(owner[(sub / 2) * s + j], start + static_cast<std::int64_t>(j));
          }
        }
        const auto max_lag = lag_multiset(all, all).rbegin()->first;
        ASSERT_EQ(max_lag, spec.max_lag());
        ASSERT_EQ(lag_multiset(idx.a, idx.a), lag_multiset(idx.b, idx.b));
      }
    }
  }
}

TEST(BlockIndices, SingleSubblockIsContiguousPair) {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t d = 0; d <= 3; ++d) {
      const auto idx = block_indices({1, n, d});
      Sites a(n), b(n);
      std::iota(a.begin(), a.end(), 0);
      std::iota(b.begin(), b.end(), static_cast<std::int64_t>(n + d));
      EXPECT_EQ(idx.a, a);
      EXPECT_EQ(idx.b, b);
    }
  }
}

TEST(LagMultiset, SmallEnumerations) {
  const Sites pair{0, 1};
  EXPECT_EQ(lag_multiset(pair, pair), (LagCounts{{0, 2}, {1, 2}}));
  EXPECT_EQ(lag_multiset(Sites{0}, Sites{2}), (LagCounts{{2, 1}}));
  EXPECT_TRUE(lag_multiset(Sites{}, pair).empty());
}

TEST(LagMultiset, InterleavedLayoutCrossPairs) {
  const auto idx = block_indices({2, 3, 1});
  const auto counts = lag_multiset(idx.a, idx.b);
  std::size_t total = 0;
  for (const auto& [lag, count] : counts) total += count;
  EXPECT_EQ(total, 36u);
  // Pair enumeration of a = {0,1,2,8,9,10}, b = {4,5,6,12,13,14}.
  const LagCounts expected{{2, 3}, {3, 6},  {4, 9},  {5, 6},  {6, 3},
                           {10, 1}, {11, 2}, {12, 3}, {13, 2}, {14, 1}};
  EXPECT_EQ(counts, expected);
}

TEST(BlockSpecText, ParseAndFormat) {
  const auto spec = parse_block_spec("2:3:1");
  EXPECT_EQ(spec, (BlockSpec{2, 3, 1}));
  EXPECT_EQ(to_string(spec), "2:3:1");
  EXPECT_EQ(parse_block_spec(to_string({12, 1, 0})), (BlockSpec{12, 1, 0}));
  for (const char* bad : {"", "1:2", "1:2:3:4", "a:1:1", "1::1", "0:1:1", "1:-1:0", "1:1:2x"}) {
    EXPECT_THROW(parse_block_spec(bad), DomainError) << bad;
  }
}
