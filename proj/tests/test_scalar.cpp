#include <gtest/gtest.h>

#include "qbb/parse.hpp"
#include "qbb/scalar.hpp"

using namespace qbb;

namespace {

RatFunc q() { return RatFunc::q(); }
RatFunc P(const std::string& s) { return parse_ratfunc(s); }

}  // namespace

TEST(Radical, InvertSqrt2) {
  auto r2 = RadicalRational::sqrt_of(2);
  EXPECT_EQ(radical_invert(r2), RadicalRational::sqrt_of(2, mpq_class(1, 2)));
}

TEST(Radical, InvertOnePlusSqrt2) {
  auto x = RadicalRational(1) + RadicalRational::sqrt_of(2);
  EXPECT_EQ(radical_invert(x), RadicalRational(-1) + RadicalRational::sqrt_of(2));
}

TEST(Radical, ProductNormalizesRadicand) {
  auto p = RadicalRational::sqrt_of(2) * RadicalRational::sqrt_of(3);
  EXPECT_EQ(p, RadicalRational::sqrt_of(6));
  EXPECT_EQ(radical_invert(p), RadicalRational::sqrt_of(6, mpq_class(1, 6)));
  EXPECT_EQ(RadicalRational::sqrt_of(6) * RadicalRational::sqrt_of(10), RadicalRational::sqrt_of(15, 2));
  EXPECT_EQ(RadicalRational::sqrt_of(8), RadicalRational::sqrt_of(2, 2));
  EXPECT_EQ(RadicalRational::sqrt_of(mpq_class(1, 2)), RadicalRational::sqrt_of(2, mpq_class(1, 2)));
}

TEST(Radical, InverseInTower) {
  // (1 + sqrt2 + sqrt3 + sqrt6)^-1 times itself
  RadicalRational x = RadicalRational(1) + RadicalRational::sqrt_of(2) + RadicalRational::sqrt_of(3) +
                      RadicalRational::sqrt_of(6, 5);
  EXPECT_EQ(x * radical_invert(x), RadicalRational(1));
  RadicalRational y = RadicalRational::sqrt_of(5) - RadicalRational::sqrt_of(3, 2) + RadicalRational(7);
  EXPECT_EQ(y * y.inverse(), RadicalRational(1));
  EXPECT_THROW(RadicalRational().inverse(), DivisionByZero);
}

TEST(Radical, SquarefreeRadicands) {
  for (unsigned m = 1; m < 40; ++m)
    for (unsigned n = 1; n < 40; ++n) {
      auto p = RadicalRational::sqrt_of(m) * RadicalRational::sqrt_of(n);
      for (auto r : p.radicands())
        for (unsigned k = 2; k * k <= r; ++k) EXPECT_NE(r % (k * k), 0u);
    }
}

TEST(Radical, Text) {
  EXPECT_EQ((RadicalRational(1) + RadicalRational::sqrt_of(2, 2)).str(), "1+2*sqrt(2)");
  EXPECT_EQ(RadicalRational::sqrt_of(3, -1).str(), "-sqrt(3)");
  EXPECT_EQ(RadicalRational(mpq_class(-1, 2)).str(), "-1/2");
}

TEST(QBinom, Examples) {
  EXPECT_EQ(RatFunc(qbinom(2, 1, 1)), q() + q().inverse());
  EXPECT_EQ(RatFunc(qbinom(3, 1, 1)), q() * q() + RatFunc(1) + RatFunc::q_pow(-2));
  EXPECT_EQ(RatFunc(qbinom(3, 2, 1)), q() * q() + RatFunc(1) + RatFunc::q_pow(-2));
  EXPECT_EQ(RatFunc(qbinom(5, 0, 2)), RatFunc(1));
  EXPECT_THROW(qbinom(3, -1, 1), std::invalid_argument);
}

TEST(QBinom, NegativeUpper) {
  // [-1 choose k] = (-1)^k q^{...}: [-1][-2]/[2]! = [2]/[2] = 1 times sign (+)
  EXPECT_EQ(RatFunc(qbinom(-1, 2, 1)), RatFunc(1));
  EXPECT_EQ(RatFunc(qbinom(-1, 1, 1)), RatFunc(-1));
  EXPECT_EQ(RatFunc(qbinom(2, 3, 1)), RatFunc(0));
}

TEST(QBinom, PascalAlternatingSum) {
  for (int r = 1; r <= 3; ++r)
    for (int m = 1; m <= 7; ++m)
      for (int sign : {1, -1}) {
        RatFunc s;
        for (int k = 0; k <= m; ++k) {
          RatFunc t = RatFunc::q_pow(sign * r * k * (1 - m)) * RatFunc(qbinom(m, k, r));
          s += (k % 2) ? -t : t;
        }
        EXPECT_TRUE(s.is_zero()) << "m=" << m << " r=" << r;
      }
}

TEST(Bar, Examples) {
  EXPECT_EQ(bar_scalar(q() * q() + RatFunc(3) * q().inverse()), RatFunc::q_pow(-2) + RatFunc(3) * q());
  RatFunc x = RatFunc(1) / (RatFunc(1) - q());
  EXPECT_EQ(bar_scalar(x), -q() / (RatFunc(1) - q()));
  EXPECT_EQ(bar_scalar(x).str(), "-q/(1-q)");
  RatFunc y = (RatFunc(1) + q()) / (RatFunc(1) - q() * q() * q());
  EXPECT_EQ(bar_scalar(bar_scalar(y)), y);
}

TEST(Bar, Multiplicative) {
  std::vector<RatFunc> xs = {P("1/(1-q)"), P("(2+q^3)/(1+q+q^2)"), P("q^-2+3"), P("(1-q)/(q^2+5*q)")};
  for (auto& a : xs)
    for (auto& b : xs) {
      EXPECT_EQ(bar_scalar(a * b), bar_scalar(a) * bar_scalar(b));
      EXPECT_EQ(bar_scalar(a + b), bar_scalar(a) + bar_scalar(b));
    }
}

TEST(ValueAtZero, Examples) {
  EXPECT_EQ(value_at_zero((RatFunc(1) + q()) / (RatFunc(1) - q())), RadicalRational(1));
  EXPECT_EQ(value_at_zero(q() / (q() + q() * q() * q())), RadicalRational(1));
  EXPECT_THROW(value_at_zero(q().inverse()), NotRegularAtZero);
}

TEST(ValueAtZero, RingHomomorphism) {
  std::vector<RatFunc> xs = {P("1/(1-q)"), P("(2+q^3)/(3+q+q^2)"), P("q/(1+q)"), P("(1-q)/(7+5*q)")};
  for (auto& a : xs)
    for (auto& b : xs) {
      EXPECT_EQ(value_at_zero(a * b), value_at_zero(a) * value_at_zero(b));
      EXPECT_EQ(value_at_zero(a + b), value_at_zero(a) + value_at_zero(b));
    }
}

TEST(RatFunc, Normalization) {
  RatFunc x = P("(q^2-1)/(q-1)");
  EXPECT_TRUE(x.is_laurent());
  EXPECT_EQ(x, q() + RatFunc(1));
  RatFunc y = P("q/(q+q^3)");
  EXPECT_EQ(y.den().coeff(0), RadicalRational(1));
  EXPECT_EQ(y.str(), "1/(1+q^2)");
  EXPECT_EQ(P("1/(2-2*q)").str(), "1/(2-2*q)");
  EXPECT_EQ(P("(1/2)*q^2 - q^-1").str(), "1/2*q^2-q^-1");
}

TEST(RatFunc, Series) {
  // 1/(1-q) = 1 + q + q^2 + ...
  auto s = P("q^-1/(1-q)").series_at_zero(-2, 2);
  std::vector<RadicalRational> want = {0, 1, 1, 1, 1};
  EXPECT_EQ(s, want);
}

TEST(Parse, Errors) {
  try {
    parse_ratfunc("1/(1-q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column, 7);
  }
  EXPECT_THROW(parse_ratfunc("1/0"), ParseError);
  EXPECT_THROW(parse_ratfunc("x+1"), ParseError);
  EXPECT_EQ(parse_ratfunc("q^-2"), RatFunc::q_pow(-2));
  EXPECT_EQ(parse_ratfunc("-(1+q)^2"), -(RatFunc(1) + q()) * (RatFunc(1) + q()));
}
