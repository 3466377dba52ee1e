#include <gtest/gtest.h>

#include "qbb/canned.hpp"
#include "qbb/uminus_suites.hpp"

using namespace qbb;

namespace {

class UMinusSuites : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(UMinusSuites, AllPassAtHeightThree) {
  for (auto& [name, run] : uminus_suites()) {
    UMinus u(LusztigForm(*canned_datum(GetParam()), NuAssignment()));
    SuiteResult r = run(u, 3);
    EXPECT_TRUE(r.pass) << name << ": " << r.counterexample;
    bool real_only = name == "divided-power-eprime" || name == "projector-p";
    bool has_real = false;
    for (std::size_t i = 0; i < u.datum().size(); ++i) has_real = has_real || u.datum().is_real(i);
    if (!real_only || has_real) EXPECT_GT(r.checks, 0u) << name;
  }
}

INSTANTIATE_TEST_SUITE_P(Datums, UMinusSuites, ::testing::Values("D-iso", "D-im", "D-mix", "A1"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(UMinusSuites, StarIsometryIsotropicHeightThree) {
  UMinus u(LusztigForm(*canned_datum("D-iso"), NuAssignment()));
  EXPECT_TRUE(suite_star_isometry(u, 3).pass);
}

TEST(UMinusSuites, RealIndexNextToCommutingIsotropic) {
  UMinus u(LusztigForm(Datum({"i", "j"}, {{2, 0}, {0, 0}}, {1, 1}), NuAssignment()));
  for (auto& [name, run] : uminus_suites()) {
    SuiteResult r = run(u, 3);
    EXPECT_TRUE(r.pass) << name << ": " << r.counterexample;
  }
}

TEST(UMinusSuites, NonTrivialNuStillPasses) {
  NuAssignment nu;
  nu.set_default("1/(1-q^2)");
  UMinus u(LusztigForm(*canned_datum("D-mix"), nu));
  for (auto& [name, run] : uminus_suites()) {
    SuiteResult r = run(u, 3);
    EXPECT_TRUE(r.pass) << name << ": " << r.counterexample;
  }
}

TEST(UMinusSuites, RightAdjunctionDistinguishesDeltaFromEprime) {
  UMinus u(LusztigForm(*canned_datum("D-mix"), NuAssignment()));
  const Datum& d = u.datum();
  bool differs = false;
  for (auto& beta : weights_up_to(d, 2))
    for (std::size_t p = 0; p < u.dim(beta); ++p)
      for (std::size_t s = 0; s < u.dim(beta + d.simple(0)); ++s) {
        UElement P = u.basis(beta, p), Q = u.basis(beta + d.simple(0), s);
        differs = differs || !(u.pair(u.mul(P, u.b(0)), Q) == u.tau(0) * u.pair(P, u.eprime(0, 1, Q)));
      }
  EXPECT_TRUE(differs);
}
