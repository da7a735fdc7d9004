#pragma once
// Euler-Lagrange residuals, Bogomolny residuals, and pointwise checks of the
// dual equations obtained from the gauge-transformed density.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bps/energy.hpp"
#include "bps/fields.hpp"
#include "bps/potential.hpp"

namespace bps {

struct ResidualReport {
  double sup_norm = 0;
  double l2_norm = 0;  // sqrt of the plain sum of squares over the evaluated nodes
  std::size_t nodes = 0;
  std::vector<std::pair<std::string, double>> breakdown;  // per-equation sup norms

  double component(const std::string& label) const {
    for (const auto& [k, v] : breakdown)
      if (k == label) return v;
    return std::nan("");
  }
};

namespace detail {

// Accumulates several residual fields into one report; every node contributes
// the largest magnitude among the equations to the global norms.
class ReportBuilder {
 public:
  explicit ReportBuilder(std::vector<std::string> labels) : labels_(std::move(labels)), sups_(labels_.size(), 0.0) {}

  void add_node(const std::vector<double>& magnitudes) {
    double m = 0;
    for (std::size_t e = 0; e < magnitudes.size(); ++e) {
      sups_[e] = std::max(sups_[e], magnitudes[e]);
      m = std::max(m, magnitudes[e]);
    }
    sq_.add(m * m);
    sup_ = std::max(sup_, m);
    ++nodes_;
  }

  ResidualReport finish() const {
    ResidualReport r;
    r.sup_norm = sup_;
    r.l2_norm = std::sqrt(sq_.value());
    r.nodes = nodes_;
    for (std::size_t e = 0; e < labels_.size(); ++e) r.breakdown.emplace_back(labels_[e], sups_[e]);
    return r;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<double> sups_;
  CompensatedSum sq_;
  double sup_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Nodal Euler-Lagrange residual fields.
struct ELFields {
  ComplexField omega_eq;  // the conjugate equation is its complex conjugate
  RealField a1_eq, a2_eq;
};

/// Evaluates
///   d/dx[N1 (i w*_y + A2 w*)] + d/dy[N1 (-i w*_x - A1 w*)] + N1^2 w* (1+|w|^2)^3 / (4 l1)
///     - N1 (-A1 w*_y + A2 w*_x) - V'(u) 2 w* / (1+|w|^2)^2
///   -2 l2 d/dy B + N1 (|w|^2)_y
///    2 l2 d/dx B - N1 (|w|^2)_x
/// with N1 = 8 l1 X / (1+|w|^2)^4, using the same difference operators as the
/// discrete energy. Valid at every node; boundary values use one-sided stencils.
inline ELFields el_fields(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                          OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  const Grid2D& g = s.grid;
  const Derivatives d = derivatives(s, scheme);
  const cplx I(0, 1);
  ComplexField px(g), py(g), local(g);
  RealField n1(g), mod_x(g), mod_y(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx w = s.omega[k], wc = std::conj(w);
    const cplx wxc = std::conj(d.wx[k]), wyc = std::conj(d.wy[k]);
    const double A1 = s.a1[k], A2 = s.a2[k];
    const double W = 1.0 + std::norm(w);
    const double W2 = W * W;
    const PointJet p{w, d.wx[k], d.wy[k], A1, A2, d.b[k]};
    const double N1 = 8.0 * m.lambda1 * x_bracket(p) / (W2 * W2);
    n1[k] = N1;
    px[k] = N1 * (I * wyc + A2 * wc);
    py[k] = N1 * (-I * wxc - A1 * wc);
    local[k] = N1 * N1 * wc * W2 * W / (4.0 * m.lambda1) - N1 * (-A1 * wyc + A2 * wxc) -
               pot.Vprime(u_of(w)) * 2.0 * wc / W2;
    mod_x[k] = 2.0 * (d.wx[k] * wc).real();
    mod_y[k] = 2.0 * (d.wy[k] * wc).real();
  }
  const ComplexField dpx = diff_x(px, g), dpy = diff_y(py, g);
  const RealField bx = diff_x(d.b, g), by = diff_y(d.b, g);
  ELFields out{ComplexField(g), RealField(g), RealField(g)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    out.omega_eq[k] = dpx[k] + dpy[k] + local[k];
    out.a1_eq[k] = -2.0 * m.lambda2 * by[k] + n1[k] * mod_y[k];
    out.a2_eq[k] = 2.0 * m.lambda2 * bx[k] - n1[k] * mod_x[k];
  }
  return out;
}

/// Euler-Lagrange residual norms over nodes at least `margin` away from the edges.
inline ResidualReport el_residual(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                                  OmegaDifferencing scheme = OmegaDifferencing::Sphere, std::size_t margin = 1) {
  const ELFields f = el_fields(s, pot, m, scheme);
  detail::ReportBuilder rb({"el.omega", "el.omega_conj", "el.a1", "el.a2"});
  const Grid2D& g = s.grid;
  for (std::size_t j = margin; j + margin < g.ny; ++j)
    for (std::size_t i = margin; i + margin < g.nx; ++i) {
      const double mw = std::abs(f.omega_eq(i, j));
      rb.add_node({mw, mw, std::abs(f.a1_eq(i, j)), std::abs(f.a2_eq(i, j))});
    }
  return rb.finish();
}

/// Bogomolny residuals at one point:
///   R1 = 4 l1 X / (l4 (1+|w|^2)^2) + G1'(u),   R2 = B + l4 G1(u) / (2 l2).
inline std::pair<double, double> bogomolny_at(const PointJet& p, const GProfile& g, const ModelParams& m) {
  const double W = 1.0 + std::norm(p.omega);
  const double u = u_of(p.omega);
  const double r1 = 4.0 * m.lambda1 * x_bracket(p) / (m.lambda4 * W * W) + g.gprime(u);
  const double r2 = p.b + m.lambda4 * g.g(u) / (2.0 * m.lambda2);
  return {r1, r2};
}

struct BogomolnyFields {
  RealField r1, r2;
};

inline BogomolnyFields bogomolny_fields(const FieldState& s, const GProfile& g, const ModelParams& m,
                                        OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  const Derivatives d = derivatives(s, scheme);
  BogomolnyFields out{RealField(s.grid), RealField(s.grid)};
  for (std::size_t j = 0; j < s.grid.ny; ++j)
    for (std::size_t i = 0; i < s.grid.nx; ++i) {
      const auto [r1, r2] = bogomolny_at(jet_at(s, d, i, j), g, m);
      out.r1(i, j) = r1;
      out.r2(i, j) = r2;
    }
  return out;
}

inline ResidualReport bogomolny_residual(const FieldState& s, const GProfile& g, const ModelParams& m,
                                         OmegaDifferencing scheme = OmegaDifferencing::Sphere) {
  const BogomolnyFields f = bogomolny_fields(s, g, m, scheme);
  detail::ReportBuilder rb({"bogomolny.r1", "bogomolny.r2"});
  for (std::size_t k = 0; k < s.grid.size(); ++k) rb.add_node({std::abs(f.r1[k]), std::abs(f.r2[k])});
  return rb.finish();
}

// ---------------------------------------------------------------------------
// Dual equations. The bracket X and the curvature b are fixed by the
// Bogomolny ansatz
//   X = -l4 (1+|w|^2)^2 G1'(u) / (4 l1),   b = -l4 G1(u) / (2 l2),
// and G2, G3 are constant so their derivative terms drop out.

/// Ansatz perturbation used by sensitivity studies.
struct DualOptions {
  double curvature_shift = 0.0;  // added to the substituted b
};

namespace detail {

struct DualPoint {
  cplx w, wc, wx, wy, wxc, wyc;
  double A1, A2, W, u, X, b, g0, g1, g2;
};

inline DualPoint substitute(const PointJet& jet, const GProfile& g, const ModelParams& m, const DualOptions& opt) {
  DualPoint d;
  d.w = jet.omega;
  d.wc = std::conj(jet.omega);
  d.wx = jet.omega_x;
  d.wy = jet.omega_y;
  d.wxc = std::conj(jet.omega_x);
  d.wyc = std::conj(jet.omega_y);
  d.A1 = jet.a1;
  d.A2 = jet.a2;
  d.W = 1.0 + std::norm(jet.omega);
  d.u = u_of(jet.omega);
  d.g0 = g.g(d.u);
  d.g1 = g.gprime(d.u);
  d.g2 = g.gsecond(d.u);
  d.X = -m.lambda4 * d.W * d.W * d.g1 / (4.0 * m.lambda1);
  d.b = -m.lambda4 * d.g0 / (2.0 * m.lambda2) + opt.curvature_shift;
  return d;
}

}  // namespace detail

/// Largest magnitude among the eight first-order dual equations (derivatives of
/// the transformed density with respect to w_x, w_y, w*_x, w*_y, A1, A2, A1,y,
/// A2,x) after substituting the Bogomolny ansatz. Each is an identity, so the
/// result is rounding error unless the ansatz is perturbed.
inline double dual_tautology_check(const PointJet& jet, const GProfile& g, const ModelParams& m,
                                   const DualOptions& opt = {}) {
  const auto d = detail::substitute(jet, g, m, opt);
  const cplx I(0, 1);
  const double l1 = m.lambda1, l2 = m.lambda2, l4 = m.lambda4;
  const double W2 = d.W * d.W, W4 = W2 * W2;
  const double G2w = 0, G3w = 0, G2wc = 0, G3wc = 0;  // G2, G3 constant

  const double K = 8.0 * l1 * d.X / W4;  // shared prefactor of the bracket terms
  const double L = 2.0 * l4 * d.g1 / W2;
  const cplx f_wx = K * (I * d.wyc + d.A2 * d.wc) + L * (I * d.wyc + d.A2 * d.wc) + G2w;
  const cplx f_wy = K * (-I * d.wxc - d.A1 * d.wc) + L * (-I * d.wxc - d.A1 * d.wc) + G3w;
  const cplx f_wxc = K * (-I * d.wy + d.A2 * d.w) + L * (-I * d.wy + d.A2 * d.w) + G2wc;
  const cplx f_wyc = K * (I * d.wx - d.A1 * d.w) + L * (I * d.wx - d.A1 * d.w) + G3wc;
  const double mod_x = 2.0 * (d.wx * d.wc).real(), mod_y = 2.0 * (d.wy * d.wc).real();
  const double f_a1 = K * (-mod_y) + L * (-mod_y);
  const double f_a2 = K * mod_x + L * mod_x;
  const double f_a1y = -2.0 * l2 * d.b - l4 * d.g0;
  const double f_a2x = 2.0 * l2 * d.b + l4 * d.g0;

  return std::max({std::abs(f_wx), std::abs(f_wy), std::abs(f_wxc), std::abs(f_wyc), std::abs(f_a1), std::abs(f_a2),
                   std::abs(f_a1y), std::abs(f_a2x)});
}

/// Largest magnitude of the two zeroth-order dual equations (derivatives of the
/// transformed density with respect to w and w*) after substituting the
/// Bogomolny ansatz. Vanishes for every jet exactly when V satisfies the
/// existence condition.
inline double dual_el_consistency(const PointJet& jet, const GProfile& g, const PotentialSpec& pot,
                                  const ModelParams& m, const DualOptions& opt = {}) {
  const auto d = detail::substitute(jet, g, m, opt);
  const double l1 = m.lambda1, l4 = m.lambda4;
  const double W = d.W, W2 = W * W, W3 = W2 * W, W4 = W2 * W2, W5 = W4 * W;
  const double Vp = pot.Vprime(d.u);

  auto eq = [&](cplx s, cplx kin) {
    // s: w* for the w-equation, w for the w*-equation. kin: the matching
    // (-A1 w*_y + A2 w*_x) or (-A1 w_y + A2 w_x).
    return -16.0 * l1 * d.X * d.X * s / W5 + 8.0 * l1 * d.X / W4 * kin + Vp * 2.0 * s / W2 +
           l4 * (d.g2 * 4.0 * s / W2 * d.X / W2 + 2.0 * d.g1 * kin / W2 - 4.0 * d.g1 * d.X * s / W3 +
                 d.g1 * 2.0 * s / W2 * d.b);
  };
  const cplx e_w = eq(d.wc, -d.A1 * d.wyc + d.A2 * d.wxc);
  const cplx e_wc = eq(d.w, -d.A1 * d.wy + d.A2 * d.wx);
  return std::max(std::abs(e_w), std::abs(e_wc));
}

/// Random jets with every real component uniform in [-range, range].
inline std::vector<PointJet> random_jets(std::size_t count, std::uint64_t seed, double range = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-range, range);
  std::vector<PointJet> out(count);
  for (auto& j : out) {
    j.omega = {U(rng), U(rng)};
    j.omega_x = {U(rng), U(rng)};
    j.omega_y = {U(rng), U(rng)};
    j.a1 = U(rng);
    j.a2 = U(rng);
    j.b = U(rng);
  }
  return out;
}

}  // namespace bps
