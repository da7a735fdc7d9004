#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "bps/bps.hpp"

namespace bps::testing {

constexpr double kPi = 3.14159265358979323846;

/// Couplings and G1 of the reference configuration.
struct Reference {
  ModelParams m{1.0, 10.0, 1.0, 1};
  GProfile g = parse_g("power:2");
  PotentialSpec pot = potential_from_g(g, m);
  RadialProfile profile = solve_radial(g, m);
};

inline const Reference& reference() {
  static const Reference r;
  return r;
}

inline RadialProfile profile_for(const GProfile& g, const ModelParams& m) { return solve_radial(g, m); }

inline Grid2D square(std::size_t n, double half) { return Grid2D(n, n, -half, half, -half, half); }

/// Smooth random state: a few Gaussian bumps in omega and in A.
inline FieldState smooth_random_state(const Grid2D& g, std::uint64_t seed, double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double Lx = g.x_max - g.x_min, Ly = g.y_max - g.y_min;
  struct Bump {
    double x, y, s;
    cplx c;
    double a1, a2;
  };
  std::vector<Bump> bumps(4);
  for (auto& b : bumps) {
    b.x = g.x_min + Lx * (0.5 + 0.3 * U(rng));
    b.y = g.y_min + Ly * (0.5 + 0.3 * U(rng));
    b.s = 0.15 * std::min(Lx, Ly) * (1.2 + 0.5 * U(rng));
    b.c = amplitude * cplx(U(rng), U(rng));
    b.a1 = amplitude * U(rng);
    b.a2 = amplitude * U(rng);
  }
  FieldState s(g);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      for (const auto& b : bumps) {
        const double e = std::exp(-((x - b.x) * (x - b.x) + (y - b.y) * (y - b.y)) / (b.s * b.s));
        s.omega(i, j) += b.c * e;
        s.a1(i, j) += b.a1 * e;
        s.a2(i, j) += b.a2 * e;
      }
    }
  return s;
}

inline FieldState lifted_reference(std::size_t n, double half = 8.0) {
  return lift_radial(reference().profile, square(n, half), reference().m.n);
}

inline double order(double coarse, double fine, double ratio = 2.0) { return std::log(coarse / fine) / std::log(ratio); }

}  // namespace bps::testing
