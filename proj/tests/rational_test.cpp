#include <gtest/gtest.h>

#include "ccm/errors.hpp"
#include "ccm/rational.hpp"

namespace ccm {
namespace {

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("2"), Rational(2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  for (const char* bad : {"", "1/0", "a", "1/2/3", "1.2.3", ".", "--1", "1e3"}) {
    EXPECT_THROW(parse_rational(bad), ParameterError) << bad;
  }
}

TEST(Rational, ToString) {
  EXPECT_EQ(to_string(Rational(6, 8)), "3/4");
  EXPECT_EQ(to_string(Rational(5)), "5/1");
  EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(from_double(0.5), Rational(1, 2));
  EXPECT_EQ(from_double(-3.0), Rational(-3));
  EXPECT_EQ(from_double(0.0), Rational(0));
  EXPECT_EQ(from_double(0.1), Rational(BigInt("3602879701896397"), BigInt("36028797018963968")));
  for (double x : {0.1, 1e-300, 12345.678, 0.3333}) EXPECT_EQ(to_double(from_double(x)), x);
  EXPECT_THROW(from_double(std::numeric_limits<double>::infinity()), ParameterError);
}

TEST(Rational, Power) {
  EXPECT_EQ(power(Rational(2, 3), 0), Rational(1));
  EXPECT_EQ(power(Rational(2, 3), 5), Rational(32, 243));
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a({Rational(1), Rational(-1)});   // 1 - p
  const Polynomial b({Rational(0), Rational(1, 2)}); // p/2
  const auto prod = a * b;
  EXPECT_EQ(prod.degree(), 2);
  EXPECT_EQ(prod.coefficient(1), Rational(1, 2));
  EXPECT_EQ(prod.coefficient(2), Rational(-1, 2));
  EXPECT_EQ(prod.coefficient(7), Rational(0));
  EXPECT_EQ(prod(Rational(1, 3)), Rational(1, 9));
  EXPECT_DOUBLE_EQ(prod(0.5), 0.125);
  EXPECT_EQ(prod.derivative(), Polynomial({Rational(1, 2), Rational(-1)}));

  Polynomial sum = a;
  sum += Polynomial({Rational(0), Rational(1)});
  EXPECT_EQ(sum.degree(), 0);
  EXPECT_EQ(Polynomial().degree(), -1);
  EXPECT_EQ((Polynomial() * a).degree(), -1);
  EXPECT_EQ(Polynomial({Rational(0), Rational(0)}).coefficients().size(), 0u);
}

}  // namespace
}  // namespace ccm
