#include <gtest/gtest.h>

#include "epsnet/construction.hpp"
#include "epsnet/solver.hpp"
#include "oracles.hpp"

using namespace epsnet;

namespace {

RangeSpace space(std::size_t n, std::vector<IndexSet> ranges) {
  return RangeSpace::from_incidences(n, std::move(ranges));
}

bool hits_all(const RangeSpace& rs, const IndexSet& s) {
  const Bitset b = to_bitset(rs.ground_size(), s);
  for (std::size_t r = 0; r < rs.num_ranges(); ++r) {
    if (!rs.mask(r).intersects(b)) return false;
  }
  return true;
}

}  // namespace

TEST(Greedy, TieBreakAndForcedChoices) {
  EXPECT_EQ(greedy_hitting_set(space(6, {{3, 5}})), (IndexSet{3}));
  EXPECT_EQ(greedy_hitting_set(space(2, {{0}, {1}})), (IndexSet{0, 1}));
  EXPECT_THROW(greedy_hitting_set(space(2, {{}, {1}})), std::invalid_argument);
}

TEST(Greedy, DualOfConstructionAtDepthTwo) {
  const RangeSpace targets = ranges_of_size(dual_space(build_family(4, 2)), 2);
  const IndexSet g = greedy_hitting_set(targets);
  EXPECT_TRUE(hits_all(targets, g));
  EXPECT_GE(g.size(), exact_min_hitting_set(targets).size);
}

TEST(Exact, SmallExamples) {
  const OptResult a = exact_min_hitting_set(space(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(a.size, 1u);
  EXPECT_EQ(a.solution, (IndexSet{1}));
  EXPECT_TRUE(a.optimal);
  const OptResult b = exact_min_hitting_set(space(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}));
  EXPECT_EQ(b.size, 4u);
  EXPECT_EQ(b.lower_bound, 4u);
  EXPECT_THROW(exact_min_hitting_set(space(2, {{}})), std::invalid_argument);
  EXPECT_EQ(exact_min_hitting_set(space(4, {})).size, 0u);
}

TEST(Exact, MatchesEnumerationOnRandomSpaces) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform(14);
    const RangeSpace rs = oracle::random_space(n, 1 + rng.uniform(25), rng);
    const OptResult res = exact_min_hitting_set(rs);
    ASSERT_TRUE(res.optimal);
    EXPECT_TRUE(hits_all(rs, res.solution));
    EXPECT_EQ(res.size, oracle::min_hitting_set_size(rs)) << "trial " << trial;
    EXPECT_LE(res.lower_bound, res.size);
  }
}

TEST(Exact, BudgetExhaustionIsFlagged) {
  Rng rng(3);
  std::vector<IndexSet> ranges;
  for (int k = 0; k < 120; ++k) {
    IndexSet r;
    for (Index e = 0; e < 40; ++e) {
      if (rng.uniform(6) == 0) r.push_back(e);
    }
    if (r.size() < 2) r = {static_cast<Index>(k % 40), static_cast<Index>((k + 7) % 40)};
    ranges.push_back(r);
  }
  const RangeSpace rs = space(40, ranges);
  const OptResult res = exact_min_hitting_set(rs, 5);
  EXPECT_LE(res.nodes_explored, 6u);
  EXPECT_TRUE(hits_all(rs, res.solution));
  EXPECT_LE(res.lower_bound, res.size);
  if (!res.optimal) EXPECT_LT(res.lower_bound, res.size);
}

TEST(Exact, Deterministic) {
  const RangeSpace rs = ranges_of_size(dual_space(build_family(3, 3)), 2);
  const OptResult a = exact_min_hitting_set(rs);
  const OptResult b = exact_min_hitting_set(rs);
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
}

TEST(EpsilonNet, Examples) {
  const RangeSpace none = space(3, {{0}});
  const OptResult empty = min_epsilon_net(none, make_rational(1, 2));
  EXPECT_EQ(empty.size, 0u);
  EXPECT_TRUE(empty.solution.empty());

  const OptResult one = min_epsilon_net(space(3, {{0, 1}, {1, 2}}), make_rational(2, 3));
  EXPECT_EQ(one.solution, (IndexSet{1}));

  const RangeSpace dual = dual_space(build_family(4, 2));
  const OptResult net = min_epsilon_net(dual, pow2_inverse(7));
  EXPECT_TRUE(net.optimal);
  EXPECT_GE(net.size, 6u);
  EXPECT_TRUE(is_epsilon_net(dual, pow2_inverse(7), net.solution).is_net);
  EXPECT_THROW(min_epsilon_net(dual, Rational(0)), std::invalid_argument);
}

TEST(Independence, SmallestFamily) {
  const OptResult res = max_r_independent(build_family(3, 1), 2);
  EXPECT_EQ(res.size, 1u);
  EXPECT_TRUE(res.optimal);
}

TEST(Independence, MatchesEnumerationAndBound) {
  for (auto [c, d] : {std::pair{3, 2}, std::pair{4, 2}}) {
    const Family f = build_family(c, d);
    const OptResult res = max_r_independent(f, 2);
    const auto masks = oracle::range_masks(ranges_of_size(oracle::dual_by_membership(f), 2));
    EXPECT_EQ(res.size, oracle::max_avoiding_set_size(f.size(), masks));
    EXPECT_TRUE(is_r_independent(f, res.solution, 2).independent);
    EXPECT_LE(Rational(static_cast<unsigned long>(res.upper_bound)), max_independent_bound(c, d, 2));
  }
}

TEST(Independence, ExactlyReadingIsNoSmaller) {
  const Family f = build_family(4, 2);
  const OptResult at_least = max_r_independent(f, 2);
  const OptResult exactly = max_r_independent(f, 2, kDefaultNodeBudget, IndependenceReading::kExactly);
  EXPECT_GE(exactly.size, at_least.size);
}

TEST(Sampling, SampleSizeFormula) {
  // d = 2, eps = 1/4, confidence 1/10: max(64 log2 64, 16 log2 20) = 384.
  EXPECT_EQ(hw_sample_size(2, make_rational(1, 4), make_rational(1, 10)), 384u);
  EXPECT_EQ(hw_sample_size(0, Rational(1), make_rational(1, 2)), hw_sample_size(1, Rational(1), make_rational(1, 2)));
}

TEST(Sampling, ReturnsVerifiedNets) {
  const RangeSpace single = space(4, {{0, 1, 2, 3}});
  const SampledNet a = hw_sample_net(single, Rational(1), make_rational(1, 10), 5);
  EXPECT_GE(a.attempts, 1u);
  EXPECT_TRUE(is_epsilon_net(single, Rational(1), a.net).is_net);

  const SampledNet none = hw_sample_net(space(4, {}), make_rational(1, 2), make_rational(1, 10), 5);
  EXPECT_TRUE(none.net.empty());

  const RangeSpace dual = dual_space(build_family(4, 2));
  const SampledNet b = hw_sample_net(dual, pow2_inverse(7), make_rational(1, 10), 1);
  EXPECT_TRUE(is_epsilon_net(dual, pow2_inverse(7), b.net).is_net);
  const SampledNet c = hw_sample_net(dual, pow2_inverse(7), make_rational(1, 10), 1);
  EXPECT_EQ(b.net, c.net);
}
