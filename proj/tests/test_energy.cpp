#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace bps;
using namespace bps::testing;

namespace {

double sup_rel_diff(const RealField& a, const RealField& b) {
  double num = 0, den = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num = std::max(num, std::abs(a[k] - b[k]));
    den = std::max(den, std::abs(a[k]));
  }
  return den > 0 ? num / den : num;
}

PointJet random_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  PointJet p;
  p.omega = {U(rng), U(rng)};
  p.omega_x = {U(rng), U(rng)};
  p.omega_y = {U(rng), U(rng)};
  p.a1 = U(rng);
  p.a2 = U(rng);
  p.b = U(rng);
  return p;
}

}  // namespace

TEST(Bracket, ConstantOmegaAndLinearOmega) {
  const Grid2D g(9, 9, -1, 1, -1, 1);
  FieldState s(g);
  for (auto& w : s.omega) w = cplx(0.3, -0.7);
  for (double x : x_density(s)) EXPECT_NEAR(x, 0.0, 1e-14);
  s.omega = sample<cplx>(g, [](double x, double y) { return cplx(x, y); });
  for (double x : x_density(s, OmegaDifferencing::Nodal)) EXPECT_NEAR(x, 2.0, 1e-13);
}

TEST(Bracket, ComplexFormIsReal) {
  const Grid2D g(32, 32, -3, 3, -3, 3);
  const FieldState s = smooth_random_state(g, 3);
  const Derivatives d = derivatives(s);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const PointJet p = jet_at(s, d, i, j);
      const cplx z = x_bracket_complex(p);
      EXPECT_LE(std::abs(z.imag()), 1e-13);
      EXPECT_NEAR(z.real(), x_bracket(p), 1e-13);
    }
}

TEST(Magnetic, LinearPotentials) {
  const Grid2D g(7, 7, 0, 1, 0, 1);
  FieldState s(g);
  for (double b : magnetic(s)) EXPECT_EQ(b, 0.0);
  s.a2 = sample<double>(g, [](double x, double) { return x; });
  for (double b : magnetic(s)) EXPECT_NEAR(b, 1.0, 1e-13);
  s.a1 = sample<double>(g, [](double, double y) { return -y / 2; });
  s.a2 = sample<double>(g, [](double x, double) { return x / 2; });
  for (double b : magnetic(s)) EXPECT_NEAR(b, 1.0, 1e-13);
}

TEST(EnergyDensity, VacuumAndPureCurvature) {
  const auto& ref = reference();
  const Grid2D g(11, 11, 0, 1, 0, 1);
  FieldState s(g);
  for (double h : energy_density(s, ref.pot, ref.m)) EXPECT_EQ(h, 0.0);
  for (double h : energy_density_svector(s, ref.pot, ref.m)) EXPECT_EQ(h, 0.0);
  EXPECT_EQ(total_energy(s, ref.pot, ref.m), 0.0);
  s.a2 = sample<double>(g, [](double x, double) { return x; });
  for (double h : energy_density(s, ref.pot, ref.m)) EXPECT_NEAR(h, ref.m.lambda2, 1e-12);
  for (double h : energy_density_svector(s, ref.pot, ref.m)) EXPECT_NEAR(h, ref.m.lambda2, 1e-12);
  EXPECT_NEAR(total_energy(s, ref.pot, ref.m), ref.m.lambda2 / 2, 1e-6);
}

TEST(EnergyDensity, AgreesWithSVectorForm) {
  const auto& ref = reference();
  const Grid2D g(64, 64, -4, 4, -4, 4);
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FieldState s = smooth_random_state(g, seed, 1.5);
    for (auto scheme : {OmegaDifferencing::Sphere, OmegaDifferencing::Nodal})
      worst = std::max(worst, sup_rel_diff(energy_density(s, ref.pot, ref.m, scheme),
                                           energy_density_svector(s, ref.pot, ref.m, scheme)));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(EnergyDensity, GaugeCovariancePointwise) {
  // w -> w e^{i chi}, A -> A - grad chi, with D w = dw + i A w.
  const auto& ref = reference();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    const PointJet p = random_jet(rng);
    const double chi = U(rng), cx = U(rng), cy = U(rng);
    const cplx ph = std::polar(1.0, chi), I(0, 1);
    PointJet q = p;
    q.omega = p.omega * ph;
    q.omega_x = (p.omega_x + I * cx * p.omega) * ph;
    q.omega_y = (p.omega_y + I * cy * p.omega) * ph;
    q.a1 = p.a1 - cx;
    q.a2 = p.a2 - cy;
    const double h0 = energy_density_at(p, ref.pot, ref.m), h1 = energy_density_at(q, ref.pot, ref.m);
    EXPECT_NEAR(h0, h1, 1e-11 * std::max(1.0, std::abs(h0)));
    EXPECT_NEAR(x_bracket(p), x_bracket(q), 1e-11 * std::max(1.0, std::abs(x_bracket(p))));
  }
}

TEST(EnergyDensity, GaugeCovarianceOnGridIsSecondOrder) {
  const auto& ref = reference();
  auto gap = [&](std::size_t n) {
    const Grid2D g(n, n, -3, 3, -3, 3);
    const FieldState s = smooth_random_state(g, 9);
    auto chi = [](double x, double y) { return 0.8 * std::exp(-(x * x + y * y)); };
    FieldState t = s;
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t i = 0; i < g.nx; ++i) {
        const double x = g.x(i), y = g.y(j), c = chi(x, y);
        t.omega(i, j) *= std::polar(1.0, c);
        t.a1(i, j) += 2.0 * x * c;  // -chi_x
        t.a2(i, j) += 2.0 * y * c;  // -chi_y
      }
    return sup_rel_diff(energy_density(s, ref.pot, ref.m), energy_density(t, ref.pot, ref.m));
  };
  const double e1 = gap(48), e2 = gap(96);
  EXPECT_LT(e2, 1e-2);
  EXPECT_NEAR(order(e1, e2, 95.0 / 47.0), 2.0, 0.4);
}

TEST(EnergyDensity, NonNegativeForNonNegativePotential) {
  const auto& ref = reference();
  const Grid2D g(40, 40, -3, 3, -3, 3);
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    for (double h : energy_density(smooth_random_state(g, seed, 2.0), ref.pot, ref.m)) EXPECT_GE(h, 0.0);
}

TEST(EnergyDensity, OnShellEqualsTwiceThePotential) {
  // Jets that satisfy both Bogomolny equations exactly.
  const auto& ref = reference();
  std::mt19937_64 rng(23);
  for (int k = 0; k < 500; ++k) {
    PointJet p = random_jet(rng);
    const double W = 1.0 + std::norm(p.omega), u = u_of(p.omega);
    const double target = -ref.m.lambda4 * W * W * ref.g.gprime(u) / (4.0 * ref.m.lambda1);
    // X is affine in omega_y; solve along one direction.
    PointJet z = p;
    z.omega_y = 0;
    const double x0 = x_bracket(z);
    z.omega_y = 1;
    const double slope = x_bracket(z) - x0;
    if (std::abs(slope) < 1e-3) continue;
    p.omega_y = (target - x0) / slope;
    p.b = -ref.m.lambda4 * ref.g.g(u) / (2.0 * ref.m.lambda2);
    const double h = energy_density_at(p, ref.pot, ref.m), v = ref.pot.V(u);
    EXPECT_NEAR(h, 2.0 * v, 1e-10 * std::max(1.0, v));
  }
}

TEST(TotalEnergy, LiftedSolutionNearBound) {
  const auto& ref = reference();
  const FieldState s = lifted_reference(128);
  EXPECT_NEAR(total_energy(s, ref.pot, ref.m) / (2 * kPi), 1.0, 1e-2);
  EXPECT_NEAR(total_energy(s, ref.pot, ref.m, OmegaDifferencing::Sphere, EnergyStencil::Triangulated) / (2 * kPi),
              1.0, 1e-3);
}

TEST(Triangulated, SolidAngle) {
  const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
  EXPECT_NEAR(detail::solid_angle(ex, ey, ez), kPi / 2, 1e-14);
  EXPECT_NEAR(detail::solid_angle(ey, ex, ez), -kPi / 2, 1e-14);
  EXPECT_NEAR(detail::solid_angle(ex, ex, ez), 0.0, 1e-14);
}

TEST(Triangulated, CellsTileTheDomainTwice) {
  const Grid2D g(6, 5, 0, 2, 0, 1);
  double measure = 0;
  for (const auto& t : detail::triangulate(g)) {
    measure += t.measure;
    // gradient of the linear interpolant is exact for linear data
    double gx = 0, gy = 0;
    for (int c = 0; c < 3; ++c) {
      const std::size_t k = t.v[std::size_t(c)];
      const double x = g.x(k % g.nx), y = g.y(k / g.nx);
      gx += t.gx[std::size_t(c)] * (2 * x - y);
      gy += t.gy[std::size_t(c)] * (2 * x - y);
    }
    EXPECT_NEAR(gx, 2.0, 1e-12);
    EXPECT_NEAR(gy, -1.0, 1e-12);
  }
  EXPECT_NEAR(measure, 2.0, 1e-12);  // half of each of the two splittings
}

TEST(Triangulated, VacuumAndPureCurvature) {
  const auto& ref = reference();
  const Grid2D g(11, 11, 0, 1, 0, 1);
  FieldState s(g);
  EXPECT_EQ(total_energy(s, ref.pot, ref.m, OmegaDifferencing::Sphere, EnergyStencil::Triangulated), 0.0);
  s.a2 = sample<double>(g, [](double x, double) { return x; });
  EXPECT_NEAR(total_energy(s, ref.pot, ref.m, OmegaDifferencing::Sphere, EnergyStencil::Triangulated),
              ref.m.lambda2 / 2, 1e-12);
}

TEST(Triangulated, ConvergesToTheCentralEnergy) {
  const auto& ref = reference();
  auto gap = [&](std::size_t n) {
    const FieldState s = smooth_random_state(square(n, 3.0), 4);
    return std::abs(total_energy(s, ref.pot, ref.m, OmegaDifferencing::Nodal) -
                    total_energy(s, ref.pot, ref.m, OmegaDifferencing::Nodal, EnergyStencil::Triangulated));
  };
  const double e1 = gap(48), e2 = gap(96);
  EXPECT_LT(e2, e1 / 3.0);
}

TEST(Triangulated, DensityIntegratesToTheEnergy) {
  const auto& ref = reference();
  const FieldState s = smooth_random_state(square(30, 3.0), 8);
  const double e = total_energy(s, ref.pot, ref.m, OmegaDifferencing::Sphere, EnergyStencil::Triangulated);
  EXPECT_NEAR(0.5 * integrate(triangulated_density(s, ref.pot, ref.m), s.grid), e, 1e-12 * e);
}

TEST(Triangulated, StencilNames) {
  EXPECT_EQ(energy_stencil_from_string("central"), EnergyStencil::Central);
  EXPECT_EQ(energy_stencil_from_string(to_string(EnergyStencil::Triangulated)), EnergyStencil::Triangulated);
  EXPECT_THROW(energy_stencil_from_string("upwind"), std::invalid_argument);
}
