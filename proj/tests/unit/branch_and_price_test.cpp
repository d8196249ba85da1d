#include "blanket/branch_and_price.hpp"

#include <gtest/gtest.h>

#include <map>

#include "blanket/oracle.hpp"
#include "support/oracles.hpp"

namespace blanket {
namespace {

using namespace testing_support;

SolverConfig config(int k, BranchRule rule = BranchRule::PixelPair) {
  SolverConfig c;
  c.k = k;
  c.rule = rule;
  return c;
}

LpSolution fractional_pair(const MasterLp& m) {
  LpSolution s;
  for (const auto& c : m.columns()) {
    s.column_ids.push_back(c.id);
    s.primal.push_back(0.5);
  }
  return s;
}

TEST(LagrangeanBoundTest, Formula) {
  EXPECT_EQ(lagrangean_bound(-1.0, -3.0, 2), -5.0);
  EXPECT_EQ(lagrangean_bound(0.0, -3.0, 4), -3.0);
}

TEST(BranchTargetTest, PixelPairOnCrossingColumns) {
  MasterLp m(plus3(), 2);
  m.add_column(kMidRow);
  m.add_column(kMidCol);
  const auto pair = find_pixel_pair(fractional_pair(m), m);
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->first, (Pixel{1, 2}));
  EXPECT_EQ(pair->second, (Pixel{2, 2}));
  const auto target = find_branch_target(fractional_pair(m), m, BranchRule::PixelPair);
  EXPECT_TRUE((std::holds_alternative<std::pair<Pixel, Pixel>>(target)));
}

TEST(BranchTargetTest, VariableRulePicksOnlyFractional) {
  LpSolution s;
  s.column_ids = {7, 9};
  s.primal = {0.3, 1.0};
  EXPECT_EQ(find_fractional_column(s), 7);
  s.primal = {0.5, 0.5};
  EXPECT_EQ(find_fractional_column(s), 7);
  s.primal = {0.2, 0.6};
  EXPECT_EQ(find_fractional_column(s), 9);
}

TEST(BranchTargetTest, IntegralSolutionIsAnError) {
  MasterLp m(plus3(), 2);
  m.add_column(kMidRow);
  LpSolution s;
  s.column_ids = {m.columns()[0].id};
  s.primal = {1.0};
  EXPECT_THROW(find_fractional_column(s), std::logic_error);
  EXPECT_THROW(find_pixel_pair(s, m), std::logic_error);
  EXPECT_TRUE(is_integral(s));
}

TEST(BranchTargetTest, PixelPairFallsBackWhenNoPairExists) {
  // A lone fractional column shares no pixel with another positive column.
  MasterLp m(plus3(), 2);
  m.add_column(kMidRow);
  LpSolution s;
  s.column_ids = {m.columns()[0].id};
  s.primal = {0.5};
  EXPECT_FALSE(find_pixel_pair(s, m));
  const auto target = find_branch_target(s, m, BranchRule::PixelPair);
  ASSERT_TRUE(std::holds_alternative<ColumnId>(target));
  EXPECT_EQ(std::get<ColumnId>(target), m.columns()[0].id);
}

TEST(SolveTest, PlusThreeLadder) {
  const std::map<int, std::int64_t> expected = {{1, 2}, {2, 1}, {3, 0}, {4, 0}, {6, 0}};
  for (auto rule : {BranchRule::Variable, BranchRule::PixelPair}) {
    for (const auto& [k, z] : expected) {
      const auto s = solve(plus3(), config(k, rule));
      EXPECT_EQ(s.objective, z) << "k=" << k;
      EXPECT_EQ(s.status, SolveStatus::Optimal);
      EXPECT_EQ(s.lower_bound, static_cast<double>(z));
      EXPECT_TRUE(valid_blanket(s.blanket, k));
      EXPECT_EQ(naive_mismatch(plus3(), s.blanket), z);
    }
  }
}

TEST(SolveTest, PlusThreeRootBoundSandwich) {
  auto c = config(3);
  c.record_trace = true;
  c.lagrangean_stop = false;
  const auto s = solve(plus3(), c);
  ASSERT_FALSE(s.nodes.empty());
  const double z_final = s.nodes.front().z_final;
  EXPECT_NEAR(z_final, -5.0, 1e-6);
  for (const auto& t : s.trace) {
    if (t.node != 0) continue;
    EXPECT_LE(t.lagrangean, z_final + 1e-6);
    EXPECT_LE(z_final, t.z_rlpm + 1e-6);
  }
}

TEST(SolveTest, TrivialImages) {
  const std::vector<std::string> ones = {"11", "11"};
  EXPECT_EQ(solve(BinaryImage::from_rows(ones), config(1)).objective, 0);
  const BinaryImage zeros(4, 4);
  const auto s = solve(zeros, config(2));
  EXPECT_EQ(s.objective, 0);
  EXPECT_TRUE(s.blanket.empty());
  EXPECT_EQ(s.stats.columns, 0);
  const auto k0 = solve(plus3(), config(0));
  EXPECT_EQ(k0.objective, 5);
  EXPECT_TRUE(k0.blanket.empty());
}

TEST(SolveTest, MatchesOracleOnRandomEightByEight) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto img = random_image(seed + 100, 8, 8, 0.5);
    for (int k = 1; k <= 3; ++k) {
      const auto want = exact_solve(img, k).objective;
      for (auto rule : {BranchRule::Variable, BranchRule::PixelPair}) {
        const auto s = solve(img, config(k, rule));
        ASSERT_EQ(s.objective, want) << "seed " << seed << " k " << k;
        ASSERT_TRUE(valid_blanket(s.blanket, k));
        ASSERT_EQ(naive_mismatch(img, s.blanket), s.objective);
      }
    }
  }
}

TEST(SolveTest, DualsAndDualityHoldOnEveryIteration) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = config(2);
    c.record_trace = true;
    const auto s = solve(random_image(seed, 6, 6, 0.5), c);
    for (const auto& t : s.trace) {
      EXPECT_LE(t.max_pixel_dual, 1e-9);
      EXPECT_LE(t.mu, 1e-9);
      EXPECT_NEAR(t.z_rlpm, t.dual_objective, 1e-6 * std::max(1.0, std::abs(t.z_rlpm)));
      EXPECT_LE(t.lagrangean, t.z_rlpm + 1e-6);
    }
  }
}

TEST(SolveTest, MispriceForcesExactRound) {
  auto c = config(3);
  c.record_trace = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = solve(random_image(seed, 7, 7, 0.5), c);
    for (std::size_t i = 0; i + 1 < s.trace.size(); ++i) {
      if (s.trace[i].misprice && s.trace[i + 1].node == s.trace[i].node) {
        EXPECT_EQ(s.trace[i + 1].alpha, 0.0);
      }
    }
  }
}

TEST(SolveTest, OptimumNonIncreasingInK) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto img = random_image(seed + 40, 7, 7, 0.5);
    std::int64_t prev = img.area();
    for (int k = 1; k <= 4; ++k) {
      const auto z = solve(img, config(k)).objective;
      EXPECT_LE(z, prev);
      prev = z;
    }
  }
}

TEST(SolveTest, DeterministicAcrossRuns) {
  const auto img = random_image(77, 9, 9, 0.5);
  const auto a = solve(img, config(3));
  const auto b = solve(img, config(3));
  EXPECT_EQ(a.blanket, b.blanket);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
  EXPECT_EQ(a.stats.columns, b.stats.columns);
}

TEST(SolveTest, TimeLimitReturnsBoundedIncumbent) {
  auto c = config(6);
  c.time_limit = 1e-9;
  const auto img = random_image(5, 10, 10, 0.5);
  const auto s = solve(img, c);
  EXPECT_EQ(s.status, SolveStatus::TimeLimit);
  EXPECT_TRUE(valid_blanket(s.blanket, 6));
  EXPECT_LE(s.lower_bound, static_cast<double>(s.objective));
}

TEST(SolveTest, RejectsBadConfig) {
  EXPECT_THROW(solve(plus3(), config(-1)), std::invalid_argument);
  auto c = config(1);
  c.alpha = 1.0;
  EXPECT_THROW(solve(plus3(), c), std::invalid_argument);
}

}  // namespace
}  // namespace blanket
