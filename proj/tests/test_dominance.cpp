#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schulze/dominance.hpp"

using namespace schulze;

namespace {

const IntMatrix kA = IntMatrix::from_rows({{1, 3}, {2, 4}});
const IntMatrix kB = IntMatrix::from_rows({{2, 1}, {3, 4}});
const IntMatrix kC = IntMatrix::from_rows({{2, 2}, {1, 1}});

}  // namespace

TEST(DominanceBruteforce, HandExample) {
  EXPECT_EQ(dominance_product_bruteforce(kA, kB), kC);
  EXPECT_EQ(oracle::dominance(kA, kB), kC);
}

TEST(DominanceBruteforce, DegenerateInstances) {
  const IntMatrix zero(3, 3);
  EXPECT_EQ(dominance_product_bruteforce(zero, zero), IntMatrix(3, 3, 3));
  EXPECT_EQ(dominance_product_bruteforce(IntMatrix(3, 3, 5), IntMatrix(3, 3, 4)), IntMatrix(3, 3, 0));
}

TEST(DominanceBlocked, HandExampleAllBucketSizes) {
  for (std::size_t s = 1; s <= 5; ++s) EXPECT_EQ(dominance_product_blocked(kA, kB, s), kC) << "s " << s;
  EXPECT_THROW(dominance_product_blocked(kA, kB, 0), std::invalid_argument);
}

TEST(DominanceBlocked, ExhaustiveThreeByThree) {
  // Every 3x3 matrix over {0, 1, 2} in both operand roles, against fixed partners.
  std::mt19937_64 rng(5);
  std::vector<IntMatrix> fixed;
  for (int k = 0; k < 6; ++k) fixed.push_back(oracle::random_matrix(3, 3, 0, 2, rng));
  std::size_t checked = 0;
  for (std::int64_t code = 0; code < 19683; ++code) {
    IntMatrix x(3, 3);
    std::int64_t rest = code;
    for (auto& cell : x.values()) cell = rest % 3, rest /= 3;
    for (const auto& y : fixed) {
      for (std::size_t s : {1, 2, 4, 6}) {
        ASSERT_EQ(dominance_product_blocked(x, y, s), oracle::dominance(x, y));
        ASSERT_EQ(dominance_product_blocked(y, x, s), oracle::dominance(y, x));
        checked += 2;
      }
    }
  }
  EXPECT_EQ(checked, 19683u * 6 * 4 * 2);
}

TEST(DominanceBlocked, RandomSquareAndRectangular) {
  std::mt19937_64 rng(17);
  for (std::size_t r : {1, 2, 7, 33, 64}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = oracle::random_matrix(r, r, -5, 5, rng);
      const auto b = oracle::random_matrix(r, r, -5, 5, rng);
      const auto want = oracle::dominance(a, b);
      for (std::size_t s : {std::size_t{1}, std::size_t{4}, std::size_t{16}, 2 * r}) {
        ASSERT_EQ(dominance_product_blocked(a, b, s), want) << "r " << r << " s " << s;
      }
      EXPECT_EQ(dominance_product(a, b), want);
    }
  }
  const auto a = oracle::random_matrix(5, 70, 0, 9, rng);
  const auto b = oracle::random_matrix(70, 3, 0, 9, rng);
  EXPECT_EQ(dominance_product_blocked(a, b, 3), oracle::dominance(a, b));
  EXPECT_THROW(dominance_product_blocked(a, a, 3), std::invalid_argument);
}

TEST(DefaultBucketSize, WithinRange) {
  for (std::size_t p : {1, 10, 100}) {
    for (std::size_t q : {1, 64, 1000}) {
      const auto s = default_bucket_size(p, q, p);
      EXPECT_GE(s, 1u);
      EXPECT_LE(s, 2 * p);
    }
  }
}

TEST(HasDominatingPair, Examples) {
  EXPECT_TRUE(has_dominating_pair({IntMatrix(2, 2), IntMatrix(2, 2)}));
  EXPECT_TRUE(has_dominating_pair({kA, kB}));
  EXPECT_FALSE(has_dominating_pair({IntMatrix(2, 2, 1), IntMatrix(2, 2, 0)}));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 6;
    DominanceInstance inst(oracle::random_matrix(r, r, 0, 3, rng), oracle::random_matrix(r, r, 0, 3, rng));
    EXPECT_EQ(has_dominating_pair(inst),
              oracle::has_full_entry(oracle::dominance(inst.a, inst.b), static_cast<std::int64_t>(r)));
  }
}

TEST(MakeEntriesDistinct, Examples) {
  const auto single = make_entries_distinct({IntMatrix(1, 1, 1), IntMatrix(1, 1, 1)});
  EXPECT_EQ(single.a, IntMatrix(1, 1, 1));
  EXPECT_EQ(single.b, IntMatrix(1, 1, 2));

  const auto equal = make_entries_distinct({IntMatrix(2, 2, 4), IntMatrix(2, 2, 4)});
  EXPECT_EQ(oracle::dominance(equal.a, equal.b), IntMatrix(2, 2, 2));

  const auto relabeled = make_entries_distinct({kA, kB});
  EXPECT_EQ(oracle::dominance(relabeled.a, relabeled.b), kC);
}

TEST(MakeEntriesDistinct, PreservesProductAndDistinctness) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + trial % 32;
    DominanceInstance inst(oracle::random_matrix(r, r, 0, 4, rng), oracle::random_matrix(r, r, 0, 4, rng));
    const auto d = make_entries_distinct(inst);
    ASSERT_EQ(oracle::dominance(d.a, d.b), oracle::dominance(inst.a, inst.b));
    std::vector<std::int64_t> all(d.a.values().begin(), d.a.values().end());
    all.insert(all.end(), d.b.values().begin(), d.b.values().end());
    std::sort(all.begin(), all.end());
    EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  }
}

TEST(MatrixFormat, RoundTripAndErrors) {
  const auto text = format_matrix(kA) + "# next\n" + format_matrix(kB);
  const auto mats = parse_matrices(text);
  ASSERT_EQ(mats.size(), 2u);
  EXPECT_EQ(mats[0], kA);
  EXPECT_EQ(mats[1], kB);
  EXPECT_THROW(parse_matrices("mat 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_matrices("mat 2\n1 2 3\n4 5\n"), ParseError);
  EXPECT_THROW(parse_matrices("matrix 1\n1\n"), ParseError);
  EXPECT_THROW(DominanceInstance(IntMatrix(2, 3), IntMatrix(3, 2)), std::invalid_argument);
}
