#pragma once
// Gauged invariant density, topological degree, and Bogomolny bound diagnostics.

#include <algorithm>
#include <cmath>

#include "bps/energy.hpp"
#include "bps/fields.hpp"
#include "bps/potential.hpp"

namespace bps {

/// I1 = l4 { 2 G1'(u) X / (1+|w|^2)^2 + G1(u) B }.
inline double invariant_density_at(const PointJet& p, const GProfile& g, const ModelParams& m) {
  const double W = 1.0 + std::norm(p.omega);
  const double u = u_of(p.omega);
  return m.lambda4 * (2.0 * g.gprime(u) * x_bracket(p) / (W * W) + g.g(u) * p.b);
}

inline RealField invariant_density(const FieldState& s, const GProfile& g, const ModelParams& m,
                                   OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  return map_jets(s, scheme, [&](const PointJet& p) { return invariant_density_at(p, g, m); });
}

/// Q = -(1/4pi) \int S . (S_x x S_y) d^2x, evaluated as the signed solid
/// angles of the lattice triangles (both diagonal splittings, averaged). The
/// sign makes the w = f(r) e^{i n theta} hedgehog with u(0) = 2 give Q = n.
inline double degree(const FieldState& s) {
  const Grid2D& g = s.grid;
  NodeArray<Vec3> S(g);
  for (std::size_t k = 0; k < g.size(); ++k) S[k] = stereographic(s.omega[k]);
  CompensatedSum sum;
  for (const auto& t : detail::triangulate(g)) sum.add(detail::solid_angle(S[t.v[0]], S[t.v[1]], S[t.v[2]]));
  return -sum.value() / (8.0 * 3.14159265358979323846);
}

/// The same area form with S differenced on the grid and trapezoid quadrature.
inline double degree_differenced(const FieldState& s) {
  const Grid2D& g = s.grid;
  NodeArray<Vec3> S(g);
  for (std::size_t k = 0; k < g.size(); ++k) S[k] = stereographic(s.omega[k]);
  RealField comp(g);
  std::array<RealField, 3> sx, sy;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t k = 0; k < g.size(); ++k) comp[k] = S[k][std::size_t(c)];
    sx[std::size_t(c)] = diff_x(comp, g);
    sy[std::size_t(c)] = diff_y(comp, g);
  }
  RealField density(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec3 dx{sx[0][k], sx[1][k], sx[2][k]}, dy{sy[0][k], sy[1][k], sy[2][k]};
    density[k] = dot(S[k], cross(dx, dy));
  }
  return -integrate(density, g) / (4.0 * 3.14159265358979323846);
}

struct InvariantReport {
  double integral_I1 = 0;
  double degree_Q = 0;
  double max_density_plus_I1 = 0;  // max |H + I1| over nodes
  double min_density_plus_I1 = 0;  // most negative H + I1 (>= 0 up to discretization error)
  double energy = 0;               // 1/2 \int H
};

inline InvariantReport bound_report(const FieldState& s, const PotentialSpec& pot, const GProfile& g,
                                    const ModelParams& m, OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  const Derivatives d = derivatives(s, scheme);
  RealField H(s.grid), I1(s.grid);
  InvariantReport r;
  double mn = 0, mx = 0;
  for (std::size_t j = 0; j < s.grid.ny; ++j)
    for (std::size_t i = 0; i < s.grid.nx; ++i) {
      const PointJet p = jet_at(s, d, i, j);
      H(i, j) = energy_density_at(p, pot, m);
      I1(i, j) = invariant_density_at(p, g, m);
      const double v = H(i, j) + I1(i, j);
      mx = std::max(mx, std::abs(v));
      mn = std::min(mn, v);
    }
  r.integral_I1 = integrate(I1, s.grid);
  r.energy = 0.5 * integrate(H, s.grid);
  r.degree_Q = degree(s);
  r.max_density_plus_I1 = mx;
  r.min_density_plus_I1 = mn;
  return r;
}

}  // namespace bps
