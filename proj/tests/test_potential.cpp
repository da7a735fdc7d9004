#include <gtest/gtest.h>

#include "support.hpp"

using namespace bps;
using namespace bps::testing;

TEST(BuiltinG, PowerTwoAndThree) {
  const GProfile g2 = builtin_g("power", {2});
  EXPECT_DOUBLE_EQ(g2.g(1.5), 1.125);
  EXPECT_DOUBLE_EQ(g2.gprime(1.5), 1.5);
  EXPECT_DOUBLE_EQ(g2.gsecond(1.5), 1.0);
  const GProfile g3 = parse_g("power:3");
  EXPECT_DOUBLE_EQ(g3.g(1.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(g3.gprime(1.0), 1.0);
  EXPECT_DOUBLE_EQ(g3.gsecond(1.0), 2.0);
  EXPECT_EQ(g3.family, "power:3");
}

TEST(BuiltinG, DerivativesMatchFiniteDifferences) {
  for (const char* spec : {"zero", "power:2", "power:2.5", "power:3", "power:4", "scaled:0.5:2", "scaled:-1.5:3"}) {
    const GProfile g = parse_g(spec);
    const double h = 1e-5;
    for (double u = 0.05; u < 1.96; u += 0.1) {
      EXPECT_NEAR(g.gprime(u), (g.g(u + h) - g.g(u - h)) / (2 * h), 1e-8) << spec << " u=" << u;
      EXPECT_NEAR(g.gsecond(u), (g.gprime(u + h) - g.gprime(u - h)) / (2 * h), 1e-8) << spec << " u=" << u;
    }
    EXPECT_EQ(g.g(0.0), 0.0);
    EXPECT_EQ(g.gprime(0.0), 0.0);
  }
}

TEST(BuiltinG, RejectsBadSpecs) {
  EXPECT_THROW(parse_g("sine:2"), UnknownFamily);
  EXPECT_THROW(parse_g("power:1.5"), std::invalid_argument);
  EXPECT_THROW(parse_g("power"), std::invalid_argument);
  EXPECT_THROW(parse_g("power:x"), std::invalid_argument);
  EXPECT_THROW(parse_g("zero:1"), std::invalid_argument);
  EXPECT_THROW(parse_g("scaled:2"), std::invalid_argument);
}

TEST(PotentialFromG, ClosedForms) {
  const GProfile g = parse_g("power:2");
  const PotentialSpec unit = potential_from_g(g, ModelParams(1, 1, 1, 1));
  const PotentialSpec ref = potential_from_g(g, ModelParams(1, 10, 1, 1));
  for (double u : u_samples(41)) {
    EXPECT_NEAR(unit.V(u), (u * u + u * u * u * u / 4) / 4, 1e-15);
    EXPECT_NEAR(ref.V(u), (u * u + u * u * u * u / 40) / 4, 1e-15);
  }
  const PotentialSpec z = potential_from_g(parse_g("zero"), ModelParams(2, 3, 1, 1));
  for (double u : u_samples(11)) EXPECT_EQ(z.V(u), 0.0);
  EXPECT_EQ(unit.origin, PotentialOrigin::FromG1);
}

TEST(PotentialFromG, NonNegativeVanishingAtVacuumAndAnalyticSlope) {
  for (const char* spec : {"power:2", "power:3", "scaled:-2:2.5"})
    for (const ModelParams& m : {ModelParams(1, 1, 1, 1), ModelParams(0.5, 10, -2, 1)}) {
      const GProfile g = parse_g(spec);
      const PotentialSpec pot = potential_from_g(g, m);
      EXPECT_EQ(pot.V(0.0), 0.0);
      const double h = 1e-5;
      for (double u = 0.05; u < 1.96; u += 0.05) {
        EXPECT_GE(pot.V(u), 0.0);
        EXPECT_NEAR(pot.Vprime(u), (pot.V(u + h) - pot.V(u - h)) / (2 * h), 1e-8 * std::max(1.0, pot.V(u)));
      }
      EXPECT_LE(check_condition(pot, g, m, 1001), 1e-14);
    }
}

TEST(CheckCondition, OffsetAndUserPotential) {
  const GProfile g = parse_g("power:2");
  const ModelParams m(1, 1, 1, 1);
  PotentialSpec off = potential_from_g(g, m);
  const ScalarFn base = off.V;
  off.V = [base](double u) { return base(u) + 0.01; };
  EXPECT_NEAR(check_condition(off, g, m, 201), 0.01, 1e-15);

  // V = u: brute-force oracle over a much finer scan.
  PotentialSpec lin;
  lin.V = [](double u) { return u; };
  lin.Vprime = [](double) { return 1.0; };
  double best = 0, at = 0;
  for (int k = 0; k <= 200000; ++k) {
    const double u = 2.0 * k / 200000.0;
    const double e = std::abs(u - (u * u + u * u * u * u / 4) / 4);
    if (e > best) {
      best = e;
      at = u;
    }
  }
  EXPECT_GT(at, 0.0);
  EXPECT_LT(at, 2.0);
  const double got = check_condition(lin, g, m, 201);
  EXPECT_NEAR(got, best, 1e-4);
  EXPECT_NEAR(got, 0.7108, 1e-3);
}

TEST(USamples, UniformWithEndpoints) {
  const auto u = u_samples(5);
  ASSERT_EQ(u.size(), 5u);
  EXPECT_EQ(u.front(), 0.0);
  EXPECT_EQ(u.back(), 2.0);
  EXPECT_DOUBLE_EQ(u[1], 0.5);
  EXPECT_THROW(u_samples(1), std::invalid_argument);
}
