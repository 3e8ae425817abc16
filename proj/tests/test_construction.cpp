#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "epsnet/construction.hpp"
#include "epsnet/rng.hpp"
#include "oracles.hpp"

using namespace epsnet;

namespace {

Rational q(std::int64_t a, std::int64_t b = 1) { return make_rational(a, b); }

DigitString ds(int base, std::vector<int> digits) { return DigitString(base, std::move(digits)); }

bool closed_overlap(const Rect& a, const Rect& b) {
  return a.x_lo < b.x_hi && b.x_lo < a.x_hi && a.y_lo < b.y_hi && b.y_lo < a.y_hi;
}

}  // namespace

TEST(Construction, EvalFraction) {
  EXPECT_EQ(eval_fraction(ds(3, {})), 0);
  EXPECT_EQ(eval_fraction(ds(4, {1, 2})), q(3, 8));
  EXPECT_EQ(eval_fraction(ds(3, {2, 2})), q(8, 9));
  EXPECT_THROW(ds(3, {3}), std::invalid_argument);
}

TEST(Construction, BuildRect) {
  const Rect a = build_rect(0, ds(3, {}), ds(3, {0}), 3, 1);
  EXPECT_EQ(a.x_lo, 0);
  EXPECT_EQ(a.x_hi, 1);
  EXPECT_EQ(a.y_lo, 0);
  EXPECT_EQ(a.y_hi, q(1, 3));
  const Rect b = build_rect(1, ds(3, {0}), ds(3, {}), 3, 1);
  EXPECT_EQ(b.x_hi, q(1, 3));
  EXPECT_EQ(b.y_hi, 1);
  const Rect c = build_rect(1, ds(4, {2}), ds(4, {2}), 4, 2);
  EXPECT_EQ(c.x_lo, q(1, 2));
  EXPECT_EQ(c.x_hi, q(3, 4));
  EXPECT_EQ(c.y_lo, q(1, 2));
  EXPECT_EQ(c.y_hi, q(3, 4));
  EXPECT_THROW(build_rect(1, ds(4, {}), ds(4, {2}), 4, 2), std::invalid_argument);
}

TEST(Construction, FamilySizes) {
  for (int c = 2; c <= 5; ++c) {
    for (int d = 1; d <= 4; ++d) {
      EXPECT_EQ(build_family(c, d).size(), static_cast<std::size_t>((d + 1) * ipow(c, d - 1)));
    }
  }
  EXPECT_EQ(build_family(4, 5).size(), 1536u);
  EXPECT_THROW(build_family(1, 2), std::invalid_argument);
  EXPECT_THROW(build_family(3, 0), std::invalid_argument);
}

TEST(Construction, SmallestFamilyMembers) {
  const Family f = build_family(3, 1);
  ASSERT_EQ(f.size(), 2u);
  std::set<std::vector<Rational>> got;
  for (const auto& r : f.rects) got.insert({r.x_lo, r.x_hi, r.y_lo, r.y_hi});
  EXPECT_TRUE(got.count({q(0), q(1), q(0), q(1, 3)}));
  EXPECT_TRUE(got.count({q(0), q(1, 3), q(0), q(1)}));
}

TEST(Construction, FamilyMatchesDefinitionByEnumeration) {
  // Enumerate every (k, u, v) pair of the right lengths and keep those with
  // u_k = v_{d-k}, then compare rectangle sets.
  for (auto [c, d] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}}) {
    std::set<std::vector<Rational>> expected;
    for (int k = 0; k <= d; ++k) {
      const auto nu = ipow(c, k), nv = ipow(c, d - k);
      for (std::int64_t a = 0; a < nu; ++a) {
        for (std::int64_t b = 0; b < nv; ++b) {
          std::vector<int> u(k), v(d - k);
          for (int j = k - 1, x = static_cast<int>(a); j >= 0; --j, x /= c) u[j] = x % c;
          for (int j = d - k - 1, x = static_cast<int>(b); j >= 0; --j, x /= c) v[j] = x % c;
          const int uk = k == 0 ? 0 : u[k - 1];
          const int vdk = d - k == 0 ? 0 : v[d - k - 1];
          if (uk != vdk) continue;
          const Rational x = eval_fraction(ds(c, u)), y = eval_fraction(ds(c, v));
          expected.insert({x, x + inverse_power(c, k), y, y + inverse_power(c, d - k)});
        }
      }
    }
    std::set<std::vector<Rational>> got;
    for (const auto& r : build_family(c, d).rects) got.insert({r.x_lo, r.x_hi, r.y_lo, r.y_hi});
    EXPECT_EQ(got, expected) << c << "," << d;
  }
}

TEST(Construction, SiblingGroups) {
  const Family f42 = build_family(4, 2);
  const auto g42 = sibling_groups(f42);
  ASSERT_EQ(g42.size(), 1u);
  EXPECT_EQ(g42[0].size(), 4u);
  for (Index i : g42[0]) EXPECT_EQ(f42.rects[i].tag->k, 1);

  const Family f33 = build_family(3, 3);
  const auto g33 = sibling_groups(f33);
  ASSERT_EQ(g33.size(), 6u);
  std::map<int, int> per_level;
  for (const auto& g : g33) {
    EXPECT_EQ(g.size(), 3u);
    const auto& t0 = *f33.rects[g[0]].tag;
    per_level[t0.k] += 1;
    for (std::size_t s = 0; s < g.size(); ++s) {
      const auto& t = *f33.rects[g[s]].tag;
      EXPECT_EQ(t.u.last(), static_cast<int>(s));
      EXPECT_EQ(std::vector<int>(t.u.digits.begin(), t.u.digits.end() - 1),
                std::vector<int>(t0.u.digits.begin(), t0.u.digits.end() - 1));
    }
  }
  EXPECT_EQ(per_level[1], 3);
  EXPECT_EQ(per_level[2], 3);
}

TEST(Construction, PrecedenceOrder) {
  const Family f = build_family(3, 1);
  const Rect tall = build_rect(1, ds(3, {0}), ds(3, {}), 3, 1);
  const Rect wide = build_rect(0, ds(3, {}), ds(3, {0}), 3, 1);
  EXPECT_TRUE(precedes(tall, wide));
  EXPECT_FALSE(precedes(wide, tall));
  EXPECT_TRUE(precedes(tall, tall));
  Rect far = tall;
  far.x_lo += 5;
  far.x_hi += 5;
  far.y_lo += 5;
  far.y_hi += 5;
  EXPECT_FALSE(precedes(tall, far));
  EXPECT_FALSE(precedes(far, tall));
}

TEST(Construction, IntersectingMembersAreComparable) {
  for (auto [c, d] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}}) {
    const Family f = build_family(c, d);
    for (const auto& a : f.rects) {
      for (const auto& b : f.rects) {
        if (closed_overlap(a, b)) EXPECT_TRUE(precedes(a, b) || precedes(b, a));
      }
    }
  }
}

TEST(Construction, NoMemberContainsAVertexOfAnother) {
  const Family f = build_family(3, 3);
  for (const auto& a : f.rects) {
    for (const auto& b : f.rects) {
      for (const auto& v : {Point2{b.x_lo, b.y_lo}, Point2{b.x_lo, b.y_hi}, Point2{b.x_hi, b.y_lo},
                            Point2{b.x_hi, b.y_hi}}) {
        EXPECT_FALSE(a.contains(v));
      }
    }
  }
}

TEST(Construction, WitnessPoints) {
  const Family f = build_family(3, 1);
  const auto w = witness_points(f);
  ASSERT_EQ(w.size(), 9u);
  EXPECT_EQ(w[0].x, q(1, 6));
  EXPECT_EQ(w[0].y, q(1, 6));
  EXPECT_EQ(w[1].x, q(1, 2));
  EXPECT_TRUE(f.rects[0].contains(w[0]));
  EXPECT_TRUE(f.rects[1].contains(w[0]));
}

TEST(Construction, DualSpaceAgreesWithMembershipOracle) {
  for (auto [c, d] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}, std::pair{4, 3}}) {
    const Family f = build_family(c, d);
    EXPECT_EQ(dual_space(f), oracle::dual_by_membership(f)) << c << "," << d;
  }
  EXPECT_EQ(dual_space(build_family(3, 1)).ranges(), (std::vector<IndexSet>{{}, {0}, {0, 1}, {1}}));
  EXPECT_EQ(dual_space(build_family(4, 2)).max_range_size(), 3u);
  EXPECT_EQ(dual_space(Family{}).num_ranges(), 0u);
}

TEST(Construction, DualWitnessesRealizeTheirRanges) {
  const Family f = build_family(4, 3);
  const DualSpace dual = dual_space_with_witnesses(f);
  for (std::size_t k = 0; k < dual.space.num_ranges(); ++k) {
    const Point2 p = dual.witness(k, f);
    IndexSet hit;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f.rects[i].contains(p)) hit.push_back(static_cast<Index>(i));
    }
    EXPECT_EQ(hit, dual.space.range(k));
  }
}

TEST(Construction, IndependenceBound) {
  EXPECT_EQ(max_independent_bound(4, 2, 2), 6);
  EXPECT_EQ(max_independent_bound(3, 3, 2), 18);
  EXPECT_EQ(max_independent_bound(4, 5, 3), 768);
  EXPECT_THROW(max_independent_bound(2, 3, 2), std::invalid_argument);
}

TEST(Construction, IndependenceVerdicts) {
  const Family f = build_family(3, 1);
  EXPECT_TRUE(is_r_independent(f, {}, 2).independent);
  EXPECT_TRUE(is_r_independent(f, {0}, 2).independent);
  const IndependenceVerdict v = is_r_independent(f, {0, 1}, 2);
  EXPECT_FALSE(v.independent);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(f.rects[0].contains(*v.witness));
  EXPECT_TRUE(f.rects[1].contains(*v.witness));
}

TEST(Construction, BadRectangles) {
  const Family f = build_family(4, 2);
  EXPECT_TRUE(bad_rectangles(f, {}).empty());
  IndexSet all(f.size());
  std::iota(all.begin(), all.end(), 0);
  EXPECT_TRUE(bad_rectangles(f, all).empty());
  const IndexSet group = sibling_groups(f)[0];
  const IndexSet chosen(group.begin() + 1, group.end());
  EXPECT_EQ(bad_rectangles(f, chosen), (IndexSet{group[0]}));
}

TEST(Construction, InequalityOnIndependentSets) {
  const Family f = build_family(4, 2);
  EXPECT_TRUE(verify_inequality_x(f, {}, 2));
  EXPECT_THROW(verify_inequality_x(build_family(3, 1), {0, 1}, 2), std::invalid_argument);
  // Random independent sets grown element by element.
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    IndexSet chosen;
    for (std::size_t step = 0; step < f.size(); ++step) {
      const auto e = static_cast<Index>(rng.uniform(f.size()));
      if (std::find(chosen.begin(), chosen.end(), e) != chosen.end()) continue;
      IndexSet next = chosen;
      next.insert(std::upper_bound(next.begin(), next.end(), e), e);
      if (is_r_independent(f, next, 2).independent) chosen = std::move(next);
    }
    EXPECT_TRUE(verify_inequality_x(f, chosen, 2));
  }
}

TEST(Construction, LowerBoundParameters) {
  const auto a = lower_bound_parameters(pow2_inverse(7));
  EXPECT_EQ(std::tie(a.r, a.c, a.d), std::make_tuple(2, 4, 2));
  const auto b = lower_bound_parameters(pow2_inverse(13));
  EXPECT_EQ(std::tie(b.r, b.c, b.d), std::make_tuple(3, 4, 5));
  const auto e = lower_bound_parameters(pow2_inverse(12));
  EXPECT_EQ(std::tie(e.r, e.c, e.d), std::make_tuple(2, 4, 2));
  EXPECT_EQ(lower_bound_epsilon(2), pow2_inverse(7));
  EXPECT_EQ(lower_bound_epsilon(3), pow2_inverse(13));
  EXPECT_THROW(lower_bound_parameters(Rational(0)), std::invalid_argument);
  EXPECT_THROW(lower_bound_parameters(q(1, 2)), std::invalid_argument);
}

TEST(Construction, ChainBlowup) {
  const Family f = build_family(3, 1);
  const Family same = chain_blowup(f, 1);
  ASSERT_EQ(same.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(same.rects[i].x_lo, f.rects[i].x_lo);
    EXPECT_EQ(same.rects[i].y_hi, f.rects[i].y_hi);
  }
  const Family two = chain_blowup(f, 2);
  int depth = 0;
  for (const auto& r : two.rects) depth += r.contains(Point2{q(1, 6), q(1, 6)});
  EXPECT_EQ(depth, 4);
  EXPECT_THROW(chain_blowup(f, 0), std::invalid_argument);

  const Family three = chain_blowup(build_family(4, 2), 3);
  ASSERT_EQ(three.size(), 36u);
  for (std::size_t i = 0; i < three.size(); ++i) {
    for (std::size_t j = 0; j < three.size(); ++j) {
      const auto& ti = *three.rects[i].tag;
      const auto& tj = *three.rects[j].tag;
      if (three.base[i] == three.base[j] && ti.chain + 1 == tj.chain) {
        EXPECT_TRUE(precedes(three.rects[i], three.rects[j]));
      }
    }
  }
}
