#include <gtest/gtest.h>

#include <random>

#include "qbb/form.hpp"

using namespace qbb;

namespace {

RatFunc qp(int e) { return RatFunc::q_pow(e); }
FreeElement f(int i, int l = 1) { return FreeElement::letter(i, l); }

const Datum kIso({"i"}, {{0}}, {1});
const Datum kIm({"i"}, {{-2}}, {1});
const Datum kReal({"i"}, {{2}}, {1});
const Datum kMix({"i", "j"}, {{2, -1}, {-1, 0}}, {1, 1});
const Datum kA2({"i", "j"}, {{2, -1}, {-1, 2}}, {1, 1});
const Datum kB2({"i", "j"}, {{2, -2}, {-1, 2}}, {1, 2});

}  // namespace

TEST(Coproduct, LevelTwoLetter) {
  auto t = coproduct(kIm, f(0, 2));
  TensorElement want(Word{{0, 2}}, Word{});
  want.add(Word{{0, 1}}, Word{{0, 1}}, qp(1));  // q_(i)^-1 with q_(i) = q^-1
  want.add(Word{}, Word{{0, 2}}, RatFunc(1));
  EXPECT_EQ(t, want);
  EXPECT_EQ(coproduct(kIm, FreeElement::one()), TensorElement(Word{}, Word{}));
}

TEST(Coproduct, TwoRealLetters) {
  auto t = coproduct(kA2, f(0) * f(1));
  TensorElement want(Word{{0, 1}, {1, 1}}, Word{});
  want.add(Word{{0, 1}}, Word{{1, 1}}, RatFunc(1));
  want.add(Word{{1, 1}}, Word{{0, 1}}, qp(1));  // q^{-(alpha_i, alpha_j)}, (alpha_i,alpha_j) = -1
  want.add(Word{}, Word{{0, 1}, {1, 1}}, RatFunc(1));
  EXPECT_EQ(t, want);
}

TEST(Coproduct, Coassociative) {
  for (const Datum* d : {&kMix, &kIm, &kB2}) {
    for (auto& a : {RootVector(d->size(), 1), d->simple(0, 2) + d->simple(d->size() - 1, 1)})
      for (auto& w : words_of_weight(*d, a)) {
        auto t = coproduct(*d, FreeElement(w));
        EXPECT_EQ(coproduct_left(*d, t), coproduct_right(*d, t));
      }
  }
}

TEST(Form, Examples) {
  LusztigForm iso(kIso, {});
  EXPECT_EQ(iso.pair(Word{}, Word{}), RatFunc(1));
  Word ff{{0, 1}, {0, 1}}, f2{{0, 2}};
  for (const Datum* d : {&kIso, &kIm, &kReal}) {
    LusztigForm form(*d, {});
    int qpar = d->qparen_exp(0);
    if (!d->is_real(0)) EXPECT_EQ(form.pair(ff, f2), qp(-qpar));
    EXPECT_EQ(form.pair(ff, ff), RatFunc(1) + qp(-2 * qpar));
  }
}

TEST(Form, GramExamples) {
  LusztigForm iso(kIso, {});
  auto g = iso.gram_matrix({2});
  Matrix<RatFunc> want(2, 2);
  want(0, 0) = 2;
  want(0, 1) = 1;
  want(1, 0) = 1;
  want(1, 1) = 1;
  EXPECT_EQ(g, want);
  LusztigForm real(kReal, {});
  auto gr = real.gram_matrix({2});
  ASSERT_EQ(gr.rows(), 1u);
  EXPECT_EQ(gr(0, 0), RatFunc(1) + qp(-2));
  EXPECT_TRUE(iso.pair(Word{{0, 1}}, Word{{0, 2}}).is_zero());
  LusztigForm bounded(kIso, {}, 2);
  EXPECT_THROW(bounded.gram_matrix({3}), HeightBoundExceeded);
}

TEST(Form, NuOverride) {
  NuAssignment nu;
  nu.set(0, 1, "1/(1-q)");
  LusztigForm form(kIso, nu);
  EXPECT_EQ(form.pair(Word{{0, 1}}, Word{{0, 1}}), parse_ratfunc("1/(1-q)"));
  EXPECT_TRUE(nu.warnings().empty());
  nu.set(0, 2, "q-1");
  EXPECT_EQ(nu.warnings().size(), 1u);
}

TEST(Form, SymmetricAndWeightOrthogonal) {
  NuAssignment nu;
  nu.set(1, 2, "1/(1-q^2)");
  for (const Datum* d : {&kMix, &kB2}) {
    LusztigForm form(*d, nu);
    std::vector<RootVector> ws = {{1, 1}, {2, 1}, {1, 2}, {3, 0}, {0, 3}, {2, 2}};
    for (auto& a : ws) {
      auto g = form.gram_matrix(a);
      EXPECT_EQ(g, g.transpose());
    }
    for (auto& x : words_of_weight(*d, {2, 1}))
      for (auto& y : words_of_weight(*d, {1, 2})) EXPECT_TRUE(form.pair(x, y).is_zero());
  }
}

TEST(Form, CoproductAdjunction) {
  // (x, yz) = (rho(x), y (x) z) with rho built from its algebra-map definition
  std::mt19937 rng(7);
  for (const Datum* d : {&kMix, &kIm, &kB2}) {
    LusztigForm form(*d, {});
    RootVector a = d->size() == 2 ? RootVector{2, 2} : RootVector{4};
    auto ws = words_of_weight(*d, a);
    for (int trial = 0; trial < 40; ++trial) {
      const Word& x = ws[rng() % ws.size()];
      const Word& yz = ws[rng() % ws.size()];
      std::size_t cut = 1 + rng() % (yz.size());
      Word y(yz.begin(), yz.begin() + cut), z(yz.begin() + cut, yz.end());
      RatFunc lhs = form.pair(x, yz);
      RatFunc rhs = form.pair(coproduct(*d, FreeElement(x)), TensorElement(y, z));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Form, RealExtraction) {
  // (y f_i, x) = (f_i, f_i)(y, rho_i(x))
  for (const Datum* d : {&kMix, &kB2}) {
    LusztigForm form(*d, {});
    for (auto& x : words_of_weight(*d, {2, 2})) {
      FreeElement rx = extract_real(*d, Extract::sub, 0, FreeElement(x));
      for (auto& y : words_of_weight(*d, {1, 2})) {
        RatFunc lhs = form.pair(FreeElement(y) * f(0), FreeElement(x));
        RatFunc rhs = form.pair(Word{{0, 1}}, Word{{0, 1}}) * form.pair(FreeElement(y), rx);
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(Extract, Examples) {
  FreeElement x = f(0) * f(1);
  EXPECT_EQ(extract_real(kA2, Extract::super, 0, x), f(1));
  EXPECT_EQ(extract_real(kA2, Extract::sub, 0, x), qp(1) * f(1));
  auto m = extract(kIm, Extract::super, 0, 1, f(0, 3));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.at(Parts{1}), qp(-kIm.qparen_exp(0) * 1 * 2) * f(0, 2));
}

TEST(Extract, RealLeibniz) {
  for (const Datum* d : {&kMix, &kB2}) {
    int i = 0;
    for (auto& xw : words_of_weight(*d, {1, 1}))
      for (auto& yw : words_of_weight(*d, {1, 1})) {
        FreeElement x(xw), y(yw);
        RootVector wy = weight_of(*d, yw), wx = weight_of(*d, xw);
        auto sub = [&](const FreeElement& e) { return extract_real(*d, Extract::sub, i, e); };
        auto sup = [&](const FreeElement& e) { return extract_real(*d, Extract::super, i, e); };
        EXPECT_EQ(sub(x * y), qp(-d->pair_simple(i, wy)) * (sub(x) * y) + x * sub(y));
        EXPECT_EQ(sup(x * y), sup(x) * y + qp(-d->pair_simple(i, wx)) * (x * sup(y)));
      }
  }
}

TEST(DividedPower, Examples) {
  EXPECT_EQ(divided_power(kReal, 0, 0), FreeElement::one());
  EXPECT_EQ(divided_power(kReal, 0, 2), (RatFunc(1) / (qp(1) + qp(-1))) * (f(0) * f(0)));
  EXPECT_THROW(divided_power(kIso, 0, 1), PreconditionViolated);
  auto t = coproduct(kReal, divided_power(kReal, 0, 2));
  TensorElement want;
  RatFunc inv2 = RatFunc(1) / (qp(1) + qp(-1));
  want.add(Word{{0, 1}, {0, 1}}, Word{}, inv2);
  want.add(Word{{0, 1}}, Word{{0, 1}}, qp(-1));
  want.add(Word{}, Word{{0, 1}, {0, 1}}, inv2);
  EXPECT_EQ(t, want);
}

TEST(DividedPower, CoproductProperty) {
  Datum d({"i"}, {{2}}, {2});
  for (int n = 0; n <= 4; ++n) {
    TensorElement want;
    for (int p = 0; p <= n; ++p) {
      RatFunc c = qp(-d.r(0) * p * (n - p));
      FreeElement x = divided_power(d, 0, p), y = divided_power(d, 0, n - p);
      for (auto& [a, ca] : x.terms())
        for (auto& [b, cb] : y.terms()) want.add(a, b, c * ca * cb);
    }
    EXPECT_EQ(coproduct(d, divided_power(d, 0, n)), want);
  }
}

TEST(Serre, Examples) {
  EXPECT_TRUE(serre_element(kMix, 0, 0, 3, {}, 1).is_zero());
  auto x = serre_element(kMix, 0, 1, 2, {1}, 1);
  FreeElement want = divided_power(kMix, 0, 2) * f(1) - f(0) * f(1) * f(0) + f(1) * divided_power(kMix, 0, 2);
  EXPECT_EQ(x, want);
  EXPECT_THROW(serre_element(kMix, 0, 1, 1, {1}, 1), PreconditionViolated);
  EXPECT_THROW(serre_element(kMix, 1, 0, 2, {1}, 1), PreconditionViolated);
  // defining relation with m = 1 - l a_ij
  auto y = serre_element(kMix, 0, 1, 3, {2}, -1);
  FreeElement z;
  for (int r = 0; r <= 3; ++r) {
    FreeElement t = divided_power(kMix, 0, r) * f(1, 2) * divided_power(kMix, 0, 3 - r);
    z += r % 2 ? RatFunc(-1) * t : t;
  }
  EXPECT_EQ(y, z);
}

TEST(Serre, RadicalMembership) {
  LusztigForm form(kMix, {});
  EXPECT_TRUE(form.radical_contains(serre_element(kMix, 0, 1, 2, {1}, 1)));
  EXPECT_FALSE(form.radical_contains(f(0)));
  EXPECT_FALSE(form.radical_contains(f(0) * f(1)));
  auto ws = words_of_weight(kMix, {2, 1});
  EXPECT_EQ(ws.size(), 3u);
}

TEST(Serre, HigherOrderRealPairs) {
  for (const Datum* d : {&kA2, &kB2}) {
    LusztigForm form(*d, {});
    for (int i = 0; i < 2; ++i) {
      int j = 1 - i;
      for (int n = 0; n <= 2; ++n)
        for (int m = -d->a(i, j) * n + 1; m <= 4; ++m)
          for (int s : {1, -1}) {
            Parts c(n, 1);
            EXPECT_TRUE(form.radical_contains(serre_element(*d, i, j, m, c, s)))
                << "i=" << i << " m=" << m << " n=" << n;
          }
    }
  }
}

TEST(Commutator, Examples) {
  Datum d({"i", "j"}, {{0, 0}, {0, -2}}, {1, 1});
  EXPECT_TRUE(commutator_element(d, 0, 1, 0, 1).is_zero());
  EXPECT_EQ(commutator_element(d, 0, 1, 1, 2), f(0, 1) * f(1, 2) - f(1, 2) * f(0, 1));
  EXPECT_EQ(commutator_element(d, 0, 1, 0, 2), f(0, 1) * f(0, 2) - f(0, 2) * f(0, 1));
  EXPECT_THROW(commutator_element(kMix, 0, 1, 1, 1), PreconditionViolated);
  LusztigForm form(d, {});
  EXPECT_TRUE(form.radical_contains(commutator_element(d, 0, 1, 1, 2)));
  EXPECT_TRUE(form.radical_contains(commutator_element(d, 0, 1, 0, 2)));
}
