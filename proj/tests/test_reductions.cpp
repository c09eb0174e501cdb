#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schulze/schulze.hpp"

using namespace schulze;

namespace {

const IntMatrix kA = IntMatrix::from_rows({{1, 3}, {2, 4}});
const IntMatrix kB = IntMatrix::from_rows({{2, 1}, {3, 4}});

}  // namespace

TEST(DominanceToWmg, HandExample) {
  const auto inst = dominance_to_wmg_instance({kA, kB});
  EXPECT_EQ(inst.profile.num_voters(), 2u);
  EXPECT_EQ(inst.profile.num_candidates(), 4u);
  const auto g = build_wmg_naive(inst.profile);
  EXPECT_EQ(g(inst.u(0), inst.v(0)), 2);
  EXPECT_EQ(g(inst.u(1), inst.v(1)), 0);
  EXPECT_EQ(recover_dominance_from_wmg(g, inst.roles, 2), IntMatrix::from_rows({{2, 2}, {1, 1}}));
}

TEST(DominanceToWmg, SingleVoter) {
  const auto inst = dominance_to_wmg_instance({IntMatrix(1, 1, 0), IntMatrix(1, 1, 1)});
  ASSERT_EQ(inst.profile.num_voters(), 1u);
  EXPECT_EQ(inst.profile.votes()[0].groups, (std::vector<std::vector<Candidate>>{{inst.u(0)}, {inst.v(0)}}));
  const auto g = build_wmg_naive(inst.profile);
  EXPECT_EQ(g(inst.u(0), inst.v(0)), 1);
  EXPECT_EQ(recover_dominance_from_wmg(g, inst.roles, 1), IntMatrix(1, 1, 1));
}

TEST(DominanceToWmg, StrictVotesAndShape) {
  std::mt19937_64 rng(1);
  for (std::size_t r = 1; r <= 10; ++r) {
    const auto inst =
        dominance_to_wmg_instance({oracle::random_matrix(r, r, 0, 3, rng), oracle::random_matrix(r, r, 0, 3, rng)});
    EXPECT_EQ(inst.profile.num_voters(), r);
    EXPECT_EQ(inst.profile.num_candidates(), 2 * r);
    for (const auto& vote : inst.profile.votes()) EXPECT_EQ(vote.groups.size(), 2 * r);
  }
}

TEST(DominanceToWmg, RoundTripRecoversProduct) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 32;
    const DominanceInstance source(oracle::random_matrix(r, r, -3, 3, rng), oracle::random_matrix(r, r, -3, 3, rng));
    const auto inst = dominance_to_wmg_instance(source);
    const auto g = build_wmg_naive(inst.profile);
    ASSERT_EQ(recover_dominance_from_wmg(g, inst.roles, r), oracle::dominance(source.a, source.b)) << "r " << r;
  }
}

TEST(RecoverDominance, RejectsForeignGraphs) {
  const auto inst = dominance_to_wmg_instance({kA, kB});
  IntMatrix w = build_wmg_naive(inst.profile).weights();
  w(inst.u(0), inst.v(0)) += 1;
  EXPECT_THROW(recover_dominance_from_wmg(ComparisonGraph(w), inst.roles, 2), ReductionError);
  w(inst.u(0), inst.v(0)) = 40;
  EXPECT_THROW(recover_dominance_from_wmg(ComparisonGraph(w), inst.roles, 2), ReductionError);
}

TEST(PadForPositivity, EntriesOfPaddedDimensionAreDominatingPairs) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 5;
    const DominanceInstance inst(oracle::random_matrix(r, r, -2, 2, rng), oracle::random_matrix(r, r, -2, 2, rng));
    const auto padded = pad_for_positivity(inst);
    ASSERT_EQ(padded.dimension(), r + 1);
    const auto c = oracle::dominance(padded.a, padded.b);
    const auto original = oracle::dominance(inst.a, inst.b);
    for (std::size_t i = 0; i <= r; ++i) {
      for (std::size_t j = 0; j <= r; ++j) {
        EXPECT_GE(c(i, j), 1);
        const bool full = c(i, j) == static_cast<std::int64_t>(r + 1);
        const bool dominated = i < r && j < r && original(i, j) == static_cast<std::int64_t>(r);
        EXPECT_EQ(full, dominated);
      }
    }
  }
}

TEST(DominatingPairsInstance, ShapeAndVoterCount) {
  std::mt19937_64 rng(5);
  for (std::size_t r = 1; r <= 6; ++r) {
    const auto inst = dominating_pairs_to_schulze_instance(
        {oracle::random_matrix(r, r, 0, 5, rng), oracle::random_matrix(r, r, 0, 5, rng)});
    const std::size_t big_r = r + 1;
    EXPECT_EQ(inst.encoded_dimension(), big_r);
    EXPECT_EQ(inst.profile.num_candidates(), 2 * big_r + 2);
    EXPECT_EQ(inst.profile.num_voters(), 10 * big_r - 2);
    EXPECT_EQ(inst.profile.num_voters(), big_r + big_r + (big_r - 1) + (big_r - 1) + 3 * (2 * big_r));
    EXPECT_EQ(inst.r, r);
    EXPECT_TRUE(inst.padded);
  }
}

TEST(DominatingPairsInstance, ImportantEntriesMatchClosedForms) {
  std::mt19937_64 rng(6);
  for (std::size_t r : {2, 3, 5}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto inst = dominating_pairs_to_schulze_instance(
          {oracle::random_matrix(r, r, 0, 4, rng), oracle::random_matrix(r, r, 0, 4, rng)});
      EXPECT_EQ(oracle::important_entry_mismatches(inst), 0u) << "r " << r;
    }
  }
}

TEST(DominatingPairsInstance, ImportantEntriesWithNegativeInputs) {
  std::mt19937_64 rng(7);
  const auto inst = dominating_pairs_to_schulze_instance(
      {oracle::random_matrix(4, 4, -9, 9, rng), oracle::random_matrix(4, 4, -9, 9, rng)});
  EXPECT_EQ(oracle::important_entry_mismatches(inst), 0u);
}

TEST(DecideDominatingPairs, Examples) {
  EXPECT_TRUE(decide_dominating_pairs_via_schulze({IntMatrix(2, 2), IntMatrix(2, 2)}));
  EXPECT_FALSE(decide_dominating_pairs_via_schulze({IntMatrix(2, 2, 100), IntMatrix(2, 2, -100)}));
}

TEST(DecideDominatingPairs, WinnerOfGeneratedInstance) {
  IntMatrix a = IntMatrix::from_rows({{0, 5}, {5, 5}});
  IntMatrix b = IntMatrix::from_rows({{0, 0}, {9, 0}});
  const DominanceInstance yes(a, b);
  ASSERT_TRUE(oracle::has_full_entry(oracle::dominance(a, b), 2));
  const auto inst = dominating_pairs_to_schulze_instance(yes);
  EXPECT_FALSE(verify_winner(build_wmg_naive(inst.profile), inst.w()));

  const DominanceInstance no(IntMatrix(2, 2, 3), IntMatrix(2, 2, 1));
  const auto inst_no = dominating_pairs_to_schulze_instance(no);
  EXPECT_TRUE(verify_winner(build_wmg_naive(inst_no.profile), inst_no.w()));
}

TEST(DecideDominatingPairs, ExhaustiveTwoByTwo) {
  std::size_t count = 0;
  oracle::for_each_instance(2, 3, [&](const IntMatrix& a, const IntMatrix& b) {
    const DominanceInstance inst(a, b);
    const bool want = oracle::has_full_entry(oracle::dominance(a, b), 2);
    ASSERT_EQ(decide_dominating_pairs_via_schulze(inst), want);
    ASSERT_EQ(has_dominating_pair(inst), want);
    ++count;
  });
  EXPECT_EQ(count, 6561u);
}

TEST(DecideDominatingPairs, RandomInstances) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + trial % 16;
    const std::int64_t hi = trial % 2 ? 1 : 6;
    const DominanceInstance inst(oracle::random_matrix(r, r, 0, hi, rng), oracle::random_matrix(r, r, 0, hi, rng));
    EXPECT_EQ(decide_dominating_pairs_via_schulze(inst),
              oracle::has_full_entry(oracle::dominance(inst.a, inst.b), static_cast<std::int64_t>(r)));
  }
}

TEST(Reductions, RejectEmptyInstances) {
  EXPECT_THROW(dominance_to_wmg_instance({IntMatrix(), IntMatrix()}), std::invalid_argument);
  EXPECT_THROW(dominating_pairs_to_schulze_instance({IntMatrix(), IntMatrix()}), std::invalid_argument);
}
