#include "blanket/master_lp.hpp"

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace blanket {
namespace {

using namespace testing_support;

void expect_dual_signs(const LpSolution& s) {
  for (double p : s.pixel_duals) EXPECT_LE(p, 1e-9);
  EXPECT_LE(s.mu, 1e-9);
  EXPECT_NEAR(s.objective, s.dual_objective, 1e-6);
}

TEST(MasterLpTest, EmptyMasterSolvesToZero) {
  for (int k : {0, 2}) {
    MasterLp m(plus3(), k);
    const auto s = m.solve();
    EXPECT_EQ(s.objective, 0.0);
    EXPECT_EQ(s.mu, 0.0);
    for (double p : s.pixel_duals) EXPECT_EQ(p, 0.0);
  }
  const std::vector<std::string> one = {"1"};
  MasterLp single(BinaryImage::from_rows(one), 1);
  EXPECT_EQ(single.solve().objective, 0.0);
}

TEST(MasterLpTest, SingleColumn) {
  MasterLp m(plus3(), 1);
  const auto id = m.add_column(kMidRow);
  ASSERT_TRUE(id);
  EXPECT_EQ(m.find(*id)->cost, -3);
  const auto s = m.solve();
  EXPECT_NEAR(s.objective, -3.0, 1e-9);
  EXPECT_NEAR(s.value_of(*id), 1.0, 1e-9);
  expect_dual_signs(s);
}

TEST(MasterLpTest, OverlappingPairAndDominatedColumn) {
  MasterLp m(plus3(), 2);
  m.add_column(kMidRow);
  m.add_column(kMidCol);
  const auto s = m.solve();
  EXPECT_NEAR(s.objective, -3.0, 1e-9);
  expect_dual_signs(s);
  EXPECT_LE(s.pixel_duals[plus3().index(2, 2)], 1e-9);

  MasterLp one(plus3(), 1);
  one.add_column(kMidRow);
  one.add_column(kMidCol);
  one.add_column(kFull3);
  EXPECT_NEAR(one.solve().objective, -3.0, 1e-9);
}

TEST(MasterLpTest, KZeroKeepsObjectiveZero) {
  MasterLp m(plus3(), 0);
  m.add_column(kMidRow);
  m.add_column(kFull3);
  const auto s = m.solve();
  EXPECT_NEAR(s.objective, 0.0, 1e-9);
  expect_dual_signs(s);
}

TEST(MasterLpTest, DuplicateAndOutOfBoundsColumns) {
  MasterLp m(plus3(), 2);
  EXPECT_TRUE(m.add_column(kMidRow));
  EXPECT_FALSE(m.add_column(kMidRow));
  EXPECT_THROW(m.add_column(Rect{1, 4, 1, 1}), BoundsError);
}

TEST(MasterLpTest, WarmStartMatchesColdStart) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto img = random_image(seed, 5, 5, 0.5);
    MasterLp m(img, 3);
    const auto rects = all_rects(5, 5);
    for (std::size_t i = seed; i < rects.size(); i += 11) {
      m.add_column(rects[i]);
      const auto warm = m.solve();
      MasterLp copy = m;
      const auto cold = copy.solve_cold();
      ASSERT_NEAR(warm.objective, cold.objective, 1e-9);
      ASSERT_NEAR(m.solve().objective, warm.objective, 1e-9);
      expect_dual_signs(warm);
      for (const auto& c : m.columns()) ASSERT_GE(m.reduced_cost(c.rect, warm), -1e-6);
    }
  }
}

TEST(MasterLpTest, DifferBranchRemovesCoveringColumn) {
  MasterLp m(plus3(), 2);
  m.add_column(kMidRow);
  m.add_column(kMidCol);
  m.apply_branch(PairDiffer{{1, 2}, {2, 2}});
  ASSERT_EQ(m.columns().size(), 1u);
  EXPECT_EQ(m.columns()[0].rect, kMidCol);
  ASSERT_EQ(m.branch_rows().size(), 1u);
  EXPECT_EQ(m.branch_rows()[0].sense, BranchRow::Sense::AtMostZero);
  EXPECT_NEAR(m.solve().objective, -3.0, 1e-9);
  EXPECT_FALSE(m.add_column(kMidRow));
}

TEST(MasterLpTest, SameBranchInstallsAtLeastOneRow) {
  MasterLp m(plus3(), 2);
  m.add_column(kMidRow);
  m.add_column(kMidCol);
  m.apply_branch(PairSame{{1, 2}, {2, 2}});
  ASSERT_EQ(m.branch_rows().size(), 1u);
  EXPECT_EQ(m.branch_rows()[0].sense, BranchRow::Sense::AtLeastOne);
  ASSERT_EQ(m.columns().size(), 1u);
  EXPECT_EQ(m.columns()[0].rect, kMidRow);
  const auto s = m.solve();
  EXPECT_NEAR(s.objective, -3.0, 1e-9);
  EXPECT_NEAR(s.artificial_total, 0.0, 1e-9);
  ASSERT_EQ(s.branch_duals.size(), 1u);
  EXPECT_GE(s.branch_duals[0], -1e-9);
}

TEST(MasterLpTest, SameBranchWithoutCoveringColumnUsesArtificial) {
  MasterLp m(plus3(), 2);
  m.apply_branch(PairSame{{1, 1}, {3, 3}});
  const auto s = m.solve();
  EXPECT_NEAR(s.artificial_total, 1.0, 1e-9);
  m.add_column(kFull3);
  const auto t = m.solve();
  EXPECT_NEAR(t.artificial_total, 0.0, 1e-9);
  EXPECT_NEAR(t.objective, -1.0, 1e-9);
}

TEST(MasterLpTest, FixColumnDropsBudgetAndOverlaps) {
  MasterLp m(plus3(), 2);
  const auto row = m.add_column(kMidRow);
  m.add_column(kMidCol);
  m.add_column(Rect{2, 2, 1, 1});
  EXPECT_EQ(m.fix_column(*row), kMidRow);
  EXPECT_EQ(m.budget(), 1);
  EXPECT_EQ(m.fixed_cost(), -3);
  for (const auto& c : m.columns()) EXPECT_FALSE(c.rect.intersects(Rect{1, 3, 2, 2}));
  EXPECT_EQ(m.columns().size(), 1u);
  EXPECT_FALSE(m.add_column(Rect{1, 1, 1, 2}));
  const auto s = m.solve();
  EXPECT_NEAR(s.objective, -1.0, 1e-9);
  EXPECT_THROW(m.fix_column(999), std::out_of_range);
}

TEST(MasterLpTest, ProhibitColumnBlocksReadding) {
  MasterLp m(plus3(), 2);
  const auto id = m.add_column(kMidRow);
  EXPECT_EQ(m.prohibit_column(*id), kMidRow);
  EXPECT_TRUE(m.columns().empty());
  EXPECT_TRUE(m.prohibited().contains(kMidRow));
  EXPECT_FALSE(m.add_column(kMidRow));
  EXPECT_THROW(m.prohibit_column(*id), std::out_of_range);
}

TEST(MasterLpTest, AgingRemovesIdleColumnsAndDoublesLifespan) {
  MasterLp m(plus3(), 1, 2);
  m.add_column(kMidRow);
  m.add_column(kFull3);  // dominated, stays nonbasic at zero
  int removed = 0;
  for (int i = 0; i < 5 && removed == 0; ++i) removed = m.age_columns(m.solve());
  EXPECT_EQ(removed, 1);
  EXPECT_FALSE(m.contains(kFull3));
  EXPECT_TRUE(m.contains(kMidRow));
  const auto again = m.add_column(kFull3);
  ASSERT_TRUE(again);
  EXPECT_EQ(m.find(*again)->lifespan, 4);
}

}  // namespace
}  // namespace blanket
