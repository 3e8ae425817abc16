#include <gtest/gtest.h>

#include <sstream>

#include "epsnet/construction.hpp"
#include "epsnet/reports.hpp"

using namespace epsnet;

TEST(Growth, SmallestRow) {
  GrowthModes modes;
  modes.sample = true;
  const auto rows = growth_table(2, 2, modes, kDefaultNodeBudget, 1);
  ASSERT_EQ(rows.size(), 1u);
  const GrowthRow& row = rows[0];
  EXPECT_EQ(row.eps, pow2_inverse(7));
  EXPECT_EQ(row.n_rects, 12u);
  EXPECT_TRUE(row.certified);
  EXPECT_GE(row.lower_bound, 6u);
  ASSERT_TRUE(row.exact_size);
  EXPECT_GE(*row.exact_size, row.lower_bound);
  EXPECT_GE(row.greedy_size, *row.exact_size);
  ASSERT_TRUE(row.sample_size);
  EXPECT_GE(*row.sample_size, *row.exact_size);
}

TEST(Growth, CsvIsReproducible) {
  GrowthModes modes;
  std::ostringstream a, b;
  auto strip_times = [](std::string s) {
    // The last two columns are wall-clock seconds.
    std::string out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
      for (int k = 0; k < 2; ++k) line = line.substr(0, line.rfind(','));
      out += line + "\n";
    }
    return out;
  };
  write_growth_csv(a, growth_table(2, 2, modes, kDefaultNodeBudget, 0));
  write_growth_csv(b, growth_table(2, 2, modes, kDefaultNodeBudget, 0));
  EXPECT_EQ(strip_times(a.str()), strip_times(b.str()));
  EXPECT_NE(a.str().find("exact-independence"), std::string::npos);
}

TEST(Growth, RejectsBadRange) { EXPECT_THROW(growth_table(3, 2, {}, 10, 0), std::invalid_argument); }

TEST(Falsify, SmallCandidatesFail) {
  const RangeSpace dual = dual_space(build_family(4, 2));
  const FalsifyReport rep = falsify_small_nets(dual, pow2_inverse(7), 5, 100, 3);
  EXPECT_EQ(rep.failures, 100u);
  EXPECT_EQ(rep.witnesses.size(), 100u);

  const FalsifyReport empty = falsify_small_nets(dual, pow2_inverse(7), 0, 3, 3);
  EXPECT_EQ(empty.failures, 3u);
  const RangeSpace light = RangeSpace::from_incidences(4, {{0}});
  EXPECT_THROW(falsify_small_nets(light, make_rational(1, 2), 0, 1, 3), std::runtime_error);

  EXPECT_THROW(falsify_small_nets(dual, pow2_inverse(7), 12, 1, 3), std::runtime_error);
}

TEST(Falsify, RandomSubset) {
  const IndexSet s = random_subset(20, 7, 4);
  EXPECT_EQ(s.size(), 7u);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
  EXPECT_EQ(s, random_subset(20, 7, 4));
}

TEST(Verify, ReportsPass) {
  EXPECT_TRUE(verify_independence_bound(3, 2, 2, kDefaultNodeBudget)["passed"].get<bool>());
  EXPECT_TRUE(verify_staged_intervals(128, 2, 64, 20000, 3)["passed"].get<bool>());
  EXPECT_TRUE(verify_vc(dual_space(build_family(3, 2)), 4, 2)["passed"].get<bool>());
  EXPECT_FALSE(verify_vc(dual_space(build_family(3, 2)), 4, 3)["passed"].get<bool>());
  EXPECT_TRUE(verify_duality(3, 2, 500, 1)["passed"].get<bool>());
  EXPECT_TRUE(verify_box_halfspace_emulation(10, 20, 1)["passed"].get<bool>());
}
