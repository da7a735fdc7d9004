#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace bps;
using namespace bps::testing;

namespace {

// Directional derivative of the energy against the discrete gradient.
double fd_mismatch(const FieldState& s, const PotentialSpec& pot, const ModelParams& m, OmegaDifferencing scheme,
                   EnergyStencil stencil, std::uint64_t seed) {
  const GradientState g = discrete_gradient(s, pot, m, false, scheme, stencil);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  FieldState d(s.grid);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    d.omega[k] = cplx(N(rng), N(rng));
    d.a1[k] = N(rng);
    d.a2[k] = N(rng);
  }
  double lin = 0;
  for (std::size_t k = 0; k < s.grid.size(); ++k)
    lin += (g.omega[k] * std::conj(d.omega[k])).real() + g.a1[k] * d.a1[k] + g.a2[k] * d.a2[k];
  const double eps = 1e-6;
  auto shifted = [&](double t) {
    FieldState q = s;
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
      q.omega[k] += t * d.omega[k];
      q.a1[k] += t * d.a1[k];
      q.a2[k] += t * d.a2[k];
    }
    return total_energy(q, pot, m, scheme, stencil);
  };
  const double fd = (shifted(eps) - shifted(-eps)) / (2 * eps);
  return std::abs(fd - lin) / std::max(1.0, std::abs(lin));
}

}  // namespace

TEST(DiscreteGradient, VacuumIsStationary) {
  const auto& ref = reference();
  const FieldState s(square(20, 3.0));
  for (EnergyStencil st : {EnergyStencil::Central, EnergyStencil::Triangulated}) {
    const GradientState g = discrete_gradient(s, ref.pot, ref.m, false, OmegaDifferencing::Sphere, st);
    EXPECT_EQ(g.norm(), 0.0);
  }
  FlowConfig cfg;
  const FlowResult r = flow(s, ref.pot, ref.m, cfg);
  EXPECT_EQ(r.stop_reason, "gradient-tolerance");
  EXPECT_EQ(r.history.size(), 1u);
}

TEST(DiscreteGradient, MatchesFiniteDifferencesForEveryStencil) {
  const auto& ref = reference();
  const FieldState s = smooth_random_state(square(64, 3.0), 13);
  for (OmegaDifferencing scheme : {OmegaDifferencing::Sphere, OmegaDifferencing::Nodal})
    for (EnergyStencil st : {EnergyStencil::Central, EnergyStencil::Triangulated}) {
      if (st == EnergyStencil::Triangulated && scheme == OmegaDifferencing::Nodal) continue;
      double worst = 0;
      for (std::uint64_t d = 0; d < 20; ++d) worst = std::max(worst, fd_mismatch(s, ref.pot, ref.m, scheme, st, d));
      EXPECT_LE(worst, 1e-6) << to_string(scheme) << "/" << to_string(st);
    }
}

TEST(DiscreteGradient, SmallOnTheLiftedSolution) {
  // Measured away from the center, where w ~ 1 / r and the w-gradient degrades to O(h).
  const auto& ref = reference();
  auto interior_sup = [&](std::size_t n) {
    const FieldState s = lifted_reference(n);
    const GradientState g = discrete_gradient(s, ref.pot, ref.m);
    double e = 0;
    for (std::size_t j = 2; j + 2 < s.grid.ny; ++j)
      for (std::size_t i = 2; i + 2 < s.grid.nx; ++i) {
        if (std::hypot(s.grid.x(i), s.grid.y(j)) < 1.0) continue;
        const std::size_t k = s.grid.index(i, j);
        const double w = s.grid.weight(i, j);
        e = std::max({e, std::abs(g.omega[k]) / w, std::abs(g.a1[k]) / w, std::abs(g.a2[k]) / w});
      }
    return e;
  };
  const double e1 = interior_sup(64), e2 = interior_sup(128);
  EXPECT_GT(e1 / e2, 3.0);
}

TEST(Flow, LiftedSolutionIsNearlyStationary) {
  const auto& ref = reference();
  const FieldState s = lifted_reference(128);
  FlowConfig cfg;
  cfg.max_iterations = 100;
  const FlowResult r = flow(s, ref.pot, ref.m, cfg);
  const double E0 = r.history.front().energy, E1 = r.history.back().energy;
  EXPECT_LE(std::abs(E1 - E0) / E0, 1e-3);
  EXPECT_NEAR(E1 / (2 * kPi), 1.0, 3e-3);
  EXPECT_NEAR(degree(r.state), degree(s), 1e-2);
}

TEST(Flow, EnergyDecreasesMonotonicallyFromAStretchedSoliton) {
  const auto& ref = reference();
  const FieldState s = lift_radial(stretch_profile(ref.profile, 1.3), square(64, 10.0), 1);
  FlowConfig cfg;
  cfg.max_iterations = 60;
  const FlowResult r = flow(s, ref.pot, ref.m, cfg);
  ASSERT_GE(r.history.size(), 2u);
  for (std::size_t k = 1; k < r.history.size(); ++k) EXPECT_LE(r.history[k].energy, r.history[k - 1].energy);
  EXPECT_LT(r.history.back().energy, r.history.front().energy);
  for (std::size_t j = 0; j < s.grid.ny; ++j)
    for (std::size_t i = 0; i < s.grid.nx; ++i)
      if (s.grid.on_boundary(i, j)) {
        EXPECT_EQ(r.state.omega(i, j), s.omega(i, j));
      }
}

TEST(Flow, FixedStepWithoutSmoothing) {
  const auto& ref = reference();
  const FieldState s = smooth_random_state(square(32, 3.0), 2, 0.5);
  FlowConfig cfg;
  cfg.line_search = false;
  cfg.sobolev_length = 0;
  cfg.sphere_metric = false;
  cfg.initial_step = 1e-2;
  cfg.max_iterations = 30;
  const FlowResult r = flow(s, ref.pot, ref.m, cfg);
  for (std::size_t k = 1; k < r.history.size(); ++k) EXPECT_LT(r.history[k].energy, r.history[k - 1].energy);
}

TEST(Flow, PlateauStop) {
  const auto& ref = reference();
  FlowConfig cfg;
  cfg.max_iterations = 500;
  cfg.plateau_rtol = 1e-3;
  cfg.plateau_window = 5;
  const FlowResult r = flow(lifted_reference(48), ref.pot, ref.m, cfg);
  EXPECT_EQ(r.stop_reason, "energy-plateau");
  EXPECT_LT(r.history.size(), 500u);
}

TEST(Flow, ConfigValidationAndNonFiniteEnergy) {
  const auto& ref = reference();
  FlowConfig bad;
  bad.initial_step = 0;
  EXPECT_THROW(flow(lifted_reference(16), ref.pot, ref.m, bad), std::invalid_argument);
  bad = FlowConfig{};
  bad.max_iterations = 0;
  EXPECT_THROW(flow(lifted_reference(16), ref.pot, ref.m, bad), std::invalid_argument);
  PotentialSpec nan_pot;
  nan_pot.V = nan_pot.Vprime = [](double) { return std::nan(""); };
  EXPECT_THROW(flow(lifted_reference(16), nan_pot, ref.m, FlowConfig{}), FlowError);
}

TEST(Flow, SnapshotCadence) {
  const auto& ref = reference();
  FlowConfig cfg;
  cfg.max_iterations = 12;
  cfg.snapshot_every = 5;
  std::vector<int> seen;
  flow(lift_radial(stretch_profile(ref.profile, 1.2), square(32, 10.0), 1), ref.pot, ref.m, cfg,
       [&](int it, const FieldState& st) {
         seen.push_back(it);
         EXPECT_NO_THROW(st.validate());
       });
  EXPECT_EQ(seen, (std::vector<int>{0, 5, 10}));
}

TEST(SobolevSmoother, SolvesTheScreenedPoisson) {
  const Grid2D g = square(24, 2.0);
  const double ell = 0.7;
  const SobolevSmoother sm(g, ell);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0.0, 1.0);
  RealField f(g);
  for (std::size_t k = 0; k < g.size(); ++k) f[k] = N(rng);
  const RealField d = sm.apply(f);
  const double cx = ell * ell / (g.hx() * g.hx()), cy = ell * ell / (g.hy() * g.hy());
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      if (g.on_boundary(i, j)) {
        EXPECT_EQ(d(i, j), 0.0);
        continue;
      }
      const double lap = cx * (d(i + 1, j) - 2 * d(i, j) + d(i - 1, j)) + cy * (d(i, j + 1) - 2 * d(i, j) + d(i, j - 1));
      EXPECT_NEAR(d(i, j) - lap, f(i, j), 1e-10);
    }
}
