#include <gtest/gtest.h>

#include "harmtree/builtins.hpp"
#include "harmtree/oracles.hpp"

using namespace harmtree;

namespace {

Rational Q(long n, long m = 1) { return Rational(n, m); }

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::invalid_config;
}

HarmonicModel named(BuiltinFamily f, int depth, Representation repr = Representation::compressed) {
  ModelSpec s;
  s.family = f;
  return build_builtin(s, std::nullopt, depth, repr);
}

std::string first_mismatch(const OracleDiffReport& r) {
  for (const auto& row : r.rows) {
    if (row.diff() != 0) return row.quantity + "(" + std::to_string(row.k) + ") off by " + to_string(row.diff());
  }
  return "";
}

}  // namespace

TEST(Bounded3, Examples) {
  for (int p = 1; p <= 3; ++p) EXPECT_EQ(*bounded3(3, p).G, Q(2));
  EXPECT_EQ(*bounded3(1, 2).W, Q(1));
  EXPECT_EQ(bounded3(0, 2).N, Q(1));
  EXPECT_EQ(bounded3(0, 2).H, Q(0));
  EXPECT_EQ(bounded3(1, 2).H, Q(2));
  EXPECT_EQ(bounded3(3, 1).a_k, Q(7, 4));
  EXPECT_FALSE(bounded3(0, 2).G);
}

TEST(Bounded3, ValuesStayBetweenMinusTwoAndTwo) {
  const HarmonicModel m = named(BuiltinFamily::bounded3, 60);
  for (int k = 0; k <= 60; ++k) {
    m.level(k).for_each_class([&](const Rational& u, const Rational&, const auto&) {
      EXPECT_LT(abs(u), 2);
    });
  }
}

TEST(Needweight3, Examples) {
  EXPECT_EQ(needweight3(0).D, Q(3, 2));
  EXPECT_EQ(needweight3(4).D, Q(3, 32));
  EXPECT_EQ(needweight3(10).partial_energy, Q(3) - Q(3, 1024));
}

TEST(DoubleHalf3, Examples) {
  const DoubleHalfValues v = double_half3(1, 2);
  EXPECT_EQ(*v.A, Q(1, 2));
  EXPECT_EQ(*v.B, Q(4));
  EXPECT_EQ(*v.H, Q(9, 2));
  EXPECT_EQ(*double_half3(1, 3).N_p3, Q(777, 32));
  EXPECT_EQ(*double_half3(0, 2).weighted_dirichlet_sum, Q(3, 2));
  EXPECT_EQ(*double_half3(1, 2).G, Q(3, 2));
  EXPECT_EQ(*double_half3(1, 2).W, Q(-3, 4));
  EXPECT_FALSE(double_half3(0, 3).N_p3);
  EXPECT_EQ(error_of([] { double_half3(1, 1); }), ErrorKind::unsupported_p);
}

TEST(DoubleHalf3, WeissIncrementIsPositive) {
  for (int k = 1; k <= 40; ++k) EXPECT_GT(*double_half3(k, 2).W_increment, 0) << k;
}

TEST(DoubleHalf3, ClosedFormAtZeroDiffersFromDirectValue) {
  // The p = 3 closed form gives 21/8 at l = 0; the engine's direct value is 25/8.
  const Rational formula_at_zero = Q(-105, 248) + Q(189, 62);
  EXPECT_EQ(formula_at_zero, Q(21, 8));
  const OracleDiffReport r = oracle_diff(named(BuiltinFamily::double_half3, 4), OracleFamily::double_half3, 3, 3);
  for (const auto& row : r.rows) EXPECT_GE(row.k, 1) << row.quantity;
}

TEST(Linear2, Examples) {
  const Linear2Values v = linear2(Q(1), Q(0), 5, 2);
  EXPECT_EQ(*v.G, Q(2));
  EXPECT_EQ(*v.W, Q(1));
  EXPECT_EQ(v.N, Q(22));
  const Linear2Values c = linear2(Q(0), Q(3), 4, 2);
  EXPECT_EQ(*c.G, 0);
  EXPECT_EQ(c.N, 0);
  EXPECT_EQ(*c.W, Q(-9, 16));
  EXPECT_EQ(linear2(Q(3), Q(2), 2, 1).N, Q(6));
  // N(0) compares the two-point sphere at radius 1 with the root alone.
  EXPECT_EQ(linear2(Q(0), Q(3), 0, 2).N, Q(9));
}

TEST(OracleDiff, BoundedMatchesToTwenty) {
  const HarmonicModel m = named(BuiltinFamily::bounded3, 21);
  for (int p = 1; p <= 3; ++p) {
    const OracleDiffReport r = oracle_diff(m, OracleFamily::bounded3, p, 20);
    EXPECT_TRUE(r.pass()) << "p=" << p << " " << first_mismatch(r);
  }
}

TEST(OracleDiff, NeedweightMatchesToTwenty) {
  const OracleDiffReport r = oracle_diff(named(BuiltinFamily::needweight3, 21), OracleFamily::needweight3, 2, 20);
  EXPECT_TRUE(r.pass()) << first_mismatch(r);
  EXPECT_EQ(error_of([] { oracle_diff(named(BuiltinFamily::needweight3, 3), OracleFamily::needweight3, 3, 2); }),
            ErrorKind::unsupported_p);
}

TEST(OracleDiff, DoubleHalfMatches) {
  const HarmonicModel m = named(BuiltinFamily::double_half3, 21);
  const OracleDiffReport r2 = oracle_diff(m, OracleFamily::double_half3, 2, 20);
  EXPECT_TRUE(r2.pass()) << first_mismatch(r2);
  const OracleDiffReport r3 = oracle_diff(m, OracleFamily::double_half3, 3, 12);
  EXPECT_TRUE(r3.pass()) << first_mismatch(r3);
}

TEST(OracleDiff, LinearGrid) {
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b) {
      const HarmonicModel m = linear_2reg(TreeConfig(2), Q(a), Q(b), 13, Representation::compressed);
      for (int p = 1; p <= 3; ++p) {
        const OracleDiffReport r = oracle_diff(m, OracleFamily::linear2, p, 12);
        EXPECT_TRUE(r.pass()) << "a=" << a << " b=" << b << " p=" << p << " " << first_mismatch(r);
      }
    }
  }
}

TEST(OracleDiff, DetectsWrongModel) {
  EXPECT_EQ(error_of([] { oracle_diff(named(BuiltinFamily::needweight3, 4), OracleFamily::bounded3, 2, 3); }),
            ErrorKind::family_model_mismatch);
  EXPECT_EQ(error_of([] { oracle_diff(named(BuiltinFamily::bounded3, 4), OracleFamily::double_half3, 2, 3); }),
            ErrorKind::family_model_mismatch);
  ModelSpec s;
  s.family = BuiltinFamily::constant;
  EXPECT_EQ(error_of([&] { oracle_diff(build_builtin(s, 4, 4), OracleFamily::bounded3, 2, 3); }),
            ErrorKind::family_model_mismatch);
  EXPECT_EQ(error_of([] { oracle_diff(named(BuiltinFamily::bounded3, 4), OracleFamily::linear2, 2, 3); }),
            ErrorKind::family_model_mismatch);
}

TEST(OracleDiff, ReportsNonZeroDifferences) {
  const HarmonicModel m = named(BuiltinFamily::bounded3, 6, Representation::enumerated);
  // A perturbation deep in the tree leaves the root data alone, so the family
  // check passes and the diff must catch it.
  const OracleDiffReport r = oracle_diff(perturb(m, 4, 0, Q(1, 8)), OracleFamily::bounded3, 2, 5);
  EXPECT_FALSE(r.pass());
}

TEST(OracleDiff, NeedsDepth) {
  EXPECT_EQ(error_of([] { oracle_diff(named(BuiltinFamily::bounded3, 5), OracleFamily::bounded3, 2, 5); }),
            ErrorKind::depth_insufficient);
}
