#pragma once
// Static energy of the gauged restricted baby Skyrme model,
//   H = 1/2 \int [ 4 l1 X^2 / (1+|w|^2)^4 + l2 B^2 + V(u) ] d^2x,
// with the covariant bracket
//   X = i(w_x w*_y - w_y w*_x) - A1 (|w|^2)_y + A2 (|w|^2)_x
// and B = A2,x - A1,y.

#include <cmath>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bps/fields.hpp"
#include "bps/potential.hpp"

namespace bps {

/// Covariant bracket evaluated as complex arithmetic; the imaginary part is
/// pure rounding error.
inline cplx x_bracket_complex(const PointJet& p) {
  const cplx I(0, 1);
  const cplx w = p.omega, wc = std::conj(p.omega);
  const cplx wx = p.omega_x, wy = p.omega_y, wxc = std::conj(wx), wyc = std::conj(wy);
  return I * (wx * wyc - wy * wxc) - p.a1 * (wy * wc + w * wyc) + p.a2 * (wx * wc + w * wxc);
}

inline double x_bracket(const PointJet& p) {
  // i(z - conj z) = -2 Im z with z = w_x conj(w_y); (|w|^2)_k = 2 Re(w_k conj w).
  const cplx wc = std::conj(p.omega);
  return -2.0 * (p.omega_x * std::conj(p.omega_y)).imag() - p.a1 * 2.0 * (p.omega_y * wc).real() +
         p.a2 * 2.0 * (p.omega_x * wc).real();
}

inline double energy_density_at(const PointJet& p, const PotentialSpec& pot, const ModelParams& m) {
  const double W = 1.0 + std::norm(p.omega);
  const double X = x_bracket(p);
  const double W2 = W * W;
  return 4.0 * m.lambda1 * X * X / (W2 * W2) + m.lambda2 * p.b * p.b + pot.V(u_of(p.omega));
}

/// Same density through the unit vector S = stereo(w):
///   l1 |D1 S x D2 S|^2 + l2 B^2 + V(1 - S3),  D_i S = d_i S + A_i (n x S).
/// d_i S comes from the chain rule through the Jacobian of the stereographic map.
inline double energy_density_svector_at(const PointJet& p, const PotentialSpec& pot, const ModelParams& m) {
  const double re = p.omega.real(), im = p.omega.imag();
  const double d = 1.0 + re * re + im * im;
  const double d2 = d * d;
  // dS/d(re), dS/d(im) for S = (2 re, 2 im, 1 - re^2 - im^2) / d
  const Vec3 s_re{2.0 * (d - 2.0 * re * re) / d2, -4.0 * re * im / d2, -4.0 * re / d2};
  const Vec3 s_im{-4.0 * re * im / d2, 2.0 * (d - 2.0 * im * im) / d2, -4.0 * im / d2};
  const Vec3 S = stereographic(p.omega);
  const Vec3 nxS{-S[1], S[0], 0.0};
  Vec3 D1, D2;
  for (int c = 0; c < 3; ++c) {
    D1[c] = s_re[c] * p.omega_x.real() + s_im[c] * p.omega_x.imag() + p.a1 * nxS[c];
    D2[c] = s_re[c] * p.omega_y.real() + s_im[c] * p.omega_y.imag() + p.a2 * nxS[c];
  }
  const Vec3 c = cross(D1, D2);
  return m.lambda1 * dot(c, c) + m.lambda2 * p.b * p.b + pot.V(1.0 - S[2]);
}

/// Discretization of the derivative terms in the total energy. Central
/// evaluates the density on central-difference jets at each node. Triangulated
/// splits every cell along both diagonals and, on each triangle, takes the
/// pulled-back area form from the signed solid angle of the three target
/// points and B, grad S3 from the linear interpolant; the potential keeps the
/// trapezoid rule. A target region squeezed below one cell keeps its full
/// solid angle there, so its quartic energy grows like 1/h^2.
enum class EnergyStencil { Central, Triangulated };

inline std::string to_string(EnergyStencil e) { return e == EnergyStencil::Central ? "central" : "triangulated"; }

inline EnergyStencil energy_stencil_from_string(const std::string& s) {
  if (s == "central") return EnergyStencil::Central;
  if (s == "triangulated") return EnergyStencil::Triangulated;
  throw std::invalid_argument("unknown energy stencil '" + s + "' (expected central or triangulated)");
}

namespace detail {

/// A lattice triangle with the gradient coefficients of its linear interpolant,
/// grad f = sum_v (gx[v], gy[v]) f_v, and its quadrature measure.
struct Triangle {
  std::array<std::size_t, 3> v;
  std::array<double, 3> gx, gy;
  double measure;
};

inline std::vector<Triangle> triangulate(const Grid2D& g) {
  std::vector<Triangle> out;
  out.reserve((g.nx - 1) * (g.ny - 1) * 4);
  const double hx = g.hx(), hy = g.hy();
  // counter-clockwise corner offsets for the four triangles of a cell
  const std::array<std::array<std::array<int, 2>, 3>, 4> shapes{{{{{0, 0}, {1, 0}, {1, 1}}},
                                                                 {{{0, 0}, {1, 1}, {0, 1}}},
                                                                 {{{0, 0}, {1, 0}, {0, 1}}},
                                                                 {{{1, 0}, {1, 1}, {0, 1}}}}};
  for (std::size_t j = 0; j + 1 < g.ny; ++j)
    for (std::size_t i = 0; i + 1 < g.nx; ++i)
      for (const auto& sh : shapes) {
        Triangle t;
        std::array<double, 3> px, py;
        for (int c = 0; c < 3; ++c) {
          const std::size_t ii = i + std::size_t(sh[c][0]), jj = j + std::size_t(sh[c][1]);
          t.v[c] = g.index(ii, jj);
          px[c] = double(sh[c][0]) * hx;
          py[c] = double(sh[c][1]) * hy;
        }
        const double det = (px[1] - px[0]) * (py[2] - py[0]) - (px[2] - px[0]) * (py[1] - py[0]);
        for (int c = 0; c < 3; ++c) {
          const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
          t.gx[c] = (py[c1] - py[c2]) / det;
          t.gy[c] = (px[c2] - px[c1]) / det;
        }
        t.measure = 0.25 * std::abs(det);  // area / 2: two splittings share each cell
        out.push_back(t);
      }
  return out;
}

/// Signed solid angle of the geodesic triangle (a, b, c).
inline double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 2.0 * std::atan2(dot(a, cross(b, c)), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
}

struct TriangleTerms {
  double omega;  // S . (D1 S x D2 S)
  double b;
  double a1, a2;
  double s3x, s3y;
};

inline TriangleTerms triangle_terms(const Triangle& t, const NodeArray<Vec3>& S, const FieldState& s) {
  TriangleTerms r{0, 0, 0, 0, 0, 0};
  for (int c = 0; c < 3; ++c) {
    const std::size_t k = t.v[c];
    r.a1 += s.a1[k] / 3.0;
    r.a2 += s.a2[k] / 3.0;
    r.s3x += t.gx[c] * S[k][2];
    r.s3y += t.gy[c] * S[k][2];
    r.b += t.gx[c] * s.a2[k] - t.gy[c] * s.a1[k];
  }
  const double area = 2.0 * t.measure;
  r.omega = solid_angle(S[t.v[0]], S[t.v[1]], S[t.v[2]]) / area + r.a1 * r.s3y - r.a2 * r.s3x;
  return r;
}

}  // namespace detail

/// Per-node density whose trapezoid integral reproduces the triangulated
/// energy: each triangle's share is split evenly among its vertices.
inline RealField triangulated_density(const FieldState& s, const PotentialSpec& pot, const ModelParams& m) {
  const Grid2D& g = s.grid;
  NodeArray<Vec3> S(g);
  for (std::size_t k = 0; k < g.size(); ++k) S[k] = stereographic(s.omega[k]);
  RealField acc(g);
  for (const auto& t : detail::triangulate(g)) {
    const auto q = detail::triangle_terms(t, S, s);
    const double e = t.measure * (m.lambda1 * q.omega * q.omega + m.lambda2 * q.b * q.b);
    for (std::size_t k : t.v) acc[k] += e / 3.0;
  }
  RealField out(g);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      out[k] = acc[k] / g.weight(i, j) + pot.V(u_of(s.omega[k]));
    }
  return out;
}

template <class F>
RealField map_jets(const FieldState& s, OmegaDifferencing scheme, F&& f) {
  const Derivatives d = derivatives(s, scheme);
  RealField out(s.grid);
  for (std::size_t j = 0; j < s.grid.ny; ++j)
    for (std::size_t i = 0; i < s.grid.nx; ++i) out(i, j) = f(jet_at(s, d, i, j));
  return out;
}

inline RealField x_density(const FieldState& s, OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  return map_jets(s, scheme, [](const PointJet& p) { return x_bracket(p); });
}

inline RealField magnetic(const FieldState& s) { return derivatives(s, OmegaDifferencing::Nodal).b; }

inline RealField energy_density(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                                OmegaDifferencing scheme = OmegaDifferencing::Sphere,
                                EnergyStencil stencil = EnergyStencil::Central) {
  if (stencil == EnergyStencil::Triangulated) return triangulated_density(s, pot, m);
  return map_jets(s, scheme, [&](const PointJet& p) { return energy_density_at(p, pot, m); });
}

inline RealField energy_density_svector(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                                        OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  return map_jets(s, scheme, [&](const PointJet& p) { return energy_density_svector_at(p, pot, m); });
}

/// H = 1/2 \int density, trapezoid rule.
inline double total_energy(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                           OmegaDifferencing scheme = OmegaDifferencing::Sphere,
                           EnergyStencil stencil = EnergyStencil::Central) {
  return 0.5 * integrate(energy_density(s, pot, m, scheme, stencil), s.grid);
}

}  // namespace bps
