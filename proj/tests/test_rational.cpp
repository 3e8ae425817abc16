#include <gtest/gtest.h>

#include "epsnet/rational.hpp"

using namespace epsnet;

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(parse_rational("2/4"), make_rational(1, 2));
  EXPECT_EQ(to_string(parse_rational("-6/3")), "-2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, Powers) {
  EXPECT_EQ(pow2_inverse(7), make_rational(1, 128));
  EXPECT_EQ(inverse_power(4, 3), make_rational(1, 64));
  EXPECT_EQ(ipow(3, 4), 81);
  EXPECT_THROW(ipow(10, 30), std::overflow_error);
}
