#include <algorithm>

#include <gtest/gtest.h>

#include "harmtree/builtins.hpp"
#include "harmtree/identities.hpp"

using namespace harmtree;

namespace {

Rational Q(long n, long m = 1) { return Rational(n, m); }

HarmonicModel named(BuiltinFamily f, int depth, Representation repr = Representation::compressed) {
  ModelSpec s;
  s.family = f;
  return build_builtin(s, std::nullopt, depth, repr);
}

HarmonicModel random_model(int d, std::uint64_t seed, int depth) {
  ModelSpec s;
  s.family = BuiltinFamily::random;
  s.seed = seed;
  if (d >= 4) s.magnitude = s.denominator = 2;
  return build_builtin(s, d, depth, Representation::compressed);
}

bool has_check(const VerificationReport& r, const std::string& name) {
  return std::any_of(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
}

}  // namespace

TEST(Identities, NeedweightX1) {
  const HarmonicModel m = named(BuiltinFamily::needweight3, 3);
  const IdentityReport r = check_identity(m, Identity::X1, 2);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked.at(Identity::X1), 1u);
  const LevelAggregates<Rational> a1 = aggregates<Rational>(m, Q(2), 1);
  EXPECT_EQ(a1.N, Q(15, 4));
  EXPECT_EQ(a1.D + 2 * aggregates<Rational>(m, Q(2), 0).D, Q(15, 4));
}

TEST(Identities, AkHoldsExactlyUpToTen) {
  for (BuiltinFamily f : {BuiltinFamily::bounded3, BuiltinFamily::needweight3, BuiltinFamily::double_half3}) {
    const IdentityReport r = check_identity(named(f, 11), Identity::Ak, 10);
    EXPECT_TRUE(r.pass()) << to_string(f);
    EXPECT_EQ(r.checked.at(Identity::Ak), 10u);
  }
}

TEST(Identities, XkAkOnRandomDegreeFive) {
  const IdentityReport r = check_identity(random_model(5, 3, 9), Identity::XkAk, 8);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.checked.at(Identity::XkAk), 8u);
}

TEST(Identities, SuitePassesOnBuiltinsAndRandomModels) {
  for (BuiltinFamily f : {BuiltinFamily::bounded3, BuiltinFamily::needweight3, BuiltinFamily::double_half3}) {
    const IdentityReport r = identity_suite(named(f, 11), 10);
    EXPECT_TRUE(r.pass()) << to_string(f) << ": " << (r.failures.empty() ? "" : r.failures.front().witness);
    EXPECT_TRUE(r.not_applicable.empty());
  }
  for (int d = 2; d <= 6; ++d) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const int k_max = d <= 3 ? 8 : 5;
      const IdentityReport r = identity_suite(random_model(d, seed, k_max + 1), k_max);
      EXPECT_TRUE(r.pass()) << "d=" << d << " seed=" << seed;
    }
  }
}

TEST(Identities, TwoRegularTreeSkipsDegreeThreeIdentities) {
  const HarmonicModel m = linear_2reg(TreeConfig(2), Q(2), Q(1), 8);
  const IdentityReport r = identity_suite(m, 7);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.not_applicable.size(), 5u);
  for (Identity id : r.not_applicable) EXPECT_TRUE(needs_degree_three(id));
  try {
    check_identity(m, Identity::Ck, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::wrong_degree);
  }
}

TEST(Identities, ScalarChecksUseRequestedSampleCount) {
  const HarmonicModel m = named(BuiltinFamily::bounded3, 2);
  IdentitySuiteOptions opts;
  opts.scalar_samples = 250;
  EXPECT_EQ(check_identity(m, Identity::ineq, 1, opts).checked.at(Identity::ineq), 250u);
  EXPECT_EQ(check_identity(m, Identity::Jensen, 1, opts).checked.at(Identity::Jensen), 750u);
  EXPECT_EQ(check_identity(m, Identity::numberstuff, 1, opts).checked.at(Identity::numberstuff), 750u);
}

TEST(Identities, DepthIsRequired) {
  try {
    identity_suite(named(BuiltinFamily::bounded3, 5), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::depth_insufficient);
  }
}

TEST(Identities, NonHarmonicDataIsCaught) {
  const HarmonicModel m = named(BuiltinFamily::bounded3, 6, Representation::enumerated);
  const IdentityReport r = identity_suite(perturb(m, 3, 1, Q(1, 3)), 5);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.failures.front().witness.empty());
}

TEST(EdgeInequality, HoldsOnHarmonicModels) {
  for (int p = 1; p <= 3; ++p) {
    EXPECT_TRUE(check_edge_inequality(named(BuiltinFamily::double_half3, 6), Q(p)).pass);
    EXPECT_TRUE(check_edge_inequality(random_model(4, 2, 5), Q(p)).pass);
  }
  PrecisionScope scope(128);
  EXPECT_TRUE(check_edge_inequality(random_model(3, 2, 7), Q(3, 2), Mode::floating).pass);
}

TEST(EdgeInequality, FailsWhenChildrenDoNotSpread) {
  // The level-1 vertex with value 1 has children (3/2, 3/2); moving it to 3/2
  // leaves its edges to the children flat while its parent edge is not.
  const HarmonicModel m = named(BuiltinFamily::bounded3, 3, Representation::enumerated);
  const EdgeInequalityVerdict v = check_edge_inequality(perturb(m, 1, 0, Q(1, 2)), Q(2));
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.level, 1);
}

TEST(Verify, BuiltinsPass) {
  for (BuiltinFamily f : {BuiltinFamily::bounded3, BuiltinFamily::needweight3, BuiltinFamily::double_half3}) {
    for (int p = 1; p <= 3; ++p) {
      if (f == BuiltinFamily::double_half3 && p == 1) continue;  // see AlmgrenFirstStepCounterexample
      const VerificationReport r = verify_model(named(f, 9), Q(p), 8);
      EXPECT_TRUE(r.pass()) << to_string(f) << " p=" << p;
      EXPECT_TRUE(has_check(r, "monotone:W_d"));
    }
  }
}

TEST(Verify, AlmgrenFirstStepCounterexample) {
  // p = 1, levels by hand: H_0 = 1, H_1 = 2 + 1/2 + 1/2 = 3, H_2 = 4 + 1 + 4/4 = 6.
  // N(0) = 3/2 - 1 = 1/2 but N(1) = 6/2 - 3 = 0. The root has d children, so
  // the k = 0 step only gets N(1) >= N(0) - H_0/(d-1), which is tight here.
  const VerificationReport r = verify_model(named(BuiltinFamily::double_half3, 9), Q(1), 8);
  for (const CheckResult& c : r.checks) {
    if (c.name == "monotone:Almgren_N") {
      EXPECT_FALSE(c.pass);
      EXPECT_NE(c.detail.find("first violation at k=1, deficit 1/2"), std::string::npos) << c.detail;
    } else {
      EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
    }
  }
  const PowerSums<Rational> s = power_sums<Rational>(named(BuiltinFamily::double_half3, 4), Q(1));
  for (int k = 1; k < 3; ++k) EXPECT_GE(almgren_N(s, k + 1), almgren_N(s, k));
}

TEST(Verify, LinearFamilyIncludesLimitCheck) {
  const VerificationReport r = verify_model(linear_2reg(TreeConfig(2), Q(1), Q(1), 51), Q(2), 50);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(has_check(r, "W_2_limit"));
  EXPECT_TRUE(has_check(r, "monotone:W_2"));
}

TEST(Verify, PerturbationNamesHarmonicity) {
  const HarmonicModel m = named(BuiltinFamily::needweight3, 6, Representation::enumerated);
  const VerificationReport r = verify_model(perturb(m, 2, 1, Q(1)), Q(2), 5);
  EXPECT_FALSE(r.pass());
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks.front().name, "harmonicity(c1c2v)");
  EXPECT_FALSE(r.checks.front().pass);
}

TEST(Verify, FloatModeMarksVerdicts) {
  PrecisionScope scope(128);
  VerifyOptions opts;
  opts.mode = Mode::floating;
  const VerificationReport r = verify_model(named(BuiltinFamily::bounded3, 8), Q(5, 2), 7, opts);
  EXPECT_TRUE(r.pass());
  const auto it = std::find_if(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.name == "monotone:G"; });
  ASSERT_NE(it, r.checks.end());
  EXPECT_NE(it->detail.find("float-verified"), std::string::npos);
}
