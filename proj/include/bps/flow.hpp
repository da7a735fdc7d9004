#pragma once
// Gradient descent on the discretized 2D energy.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "bps/energy.hpp"
#include "bps/fields.hpp"
#include "bps/potential.hpp"

namespace bps {

/// Gradient of the discrete energy with respect to every nodal unknown.
/// omega holds (dE/dRe w, dE/dIm w) packed as a complex number.
struct GradientState {
  ComplexField omega;
  RealField a1, a2;

  double norm() const {
    CompensatedSum s;
    for (std::size_t k = 0; k < omega.size(); ++k) s.add(std::norm(omega[k]) + a1[k] * a1[k] + a2[k] * a2[k]);
    return std::sqrt(s.value());
  }
};

namespace detail {

inline GradientState jet_gradient(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                                       OmegaDifferencing scheme, StencilPair st) {
  const Grid2D& g = s.grid;
  const Derivatives d = derivatives(s, scheme, st);
  const bool sphere = scheme == OmegaDifferencing::Sphere;
  const cplx I(0, 1);
  ComplexField local(g), fx(g), fy(g);
  RealField la1(g), la2(g), fb(g);
  std::array<RealField, 3> tx_s, ty_s;  // sphere scheme: sensitivities to the differenced S
  if (sphere)
    for (std::size_t c = 0; c < 3; ++c) {
      tx_s[c] = RealField(g);
      ty_s[c] = RealField(g);
    }
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      const double w8 = g.weight(i, j);
      const cplx w = s.omega[k], wc = std::conj(w);
      const cplx wxc = std::conj(d.wx[k]), wyc = std::conj(d.wy[k]);
      const double A1 = s.a1[k], A2 = s.a2[k];
      const double W = 1.0 + std::norm(w), W2 = W * W, W4 = W2 * W2;
      const PointJet p{w, d.wx[k], d.wy[k], A1, A2, d.b[k]};
      const double X = x_bracket(p);
      const double N1 = 8.0 * m.lambda1 * X / W4;
      // Wirtinger derivatives of the density; the real gradient of a real
      // function with respect to (Re z, Im z) is 2 conj(dH/dz).
      cplx dH_dw = N1 * (-A1 * wyc + A2 * wxc) - 16.0 * m.lambda1 * X * X * wc / (W4 * W) +
                   pot.Vprime(u_of(w)) * 2.0 * wc / W2;
      const cplx dH_dwx = N1 * (I * wyc + A2 * wc);
      const cplx dH_dwy = N1 * (-I * wxc - A1 * wc);
      la1[k] = 0.5 * w8 * N1 * (-2.0 * (d.wy[k] * wc).real());
      la2[k] = 0.5 * w8 * N1 * (2.0 * (d.wx[k] * wc).real());
      fb[k] = 0.5 * w8 * 2.0 * m.lambda2 * d.b[k];
      if (!sphere) {
        // E = 1/2 sum w8 H
        local[k] = w8 * std::conj(dH_dw);
        fx[k] = w8 * std::conj(dH_dwx);
        fy[k] = w8 * std::conj(dH_dwy);
        continue;
      }
      // w_k = (W/2)(dS1 + i dS2 - w dS3): explicit dependence on w at this
      // node plus linear dependence on the differenced S.
      auto explicit_part = [&](const cplx& P, const cplx& wk, double ds3) {
        const cplx alpha = wc * wk / W - 0.5 * W * ds3;
        const cplx beta = w * wk / W;
        return P * alpha + std::conj(P * beta);
      };
      dH_dw += explicit_part(dH_dwx, d.wx[k], d.sx[2][k]) + explicit_part(dH_dwy, d.wy[k], d.sy[2][k]);
      local[k] = w8 * std::conj(dH_dw);
      const cplx PWx = dH_dwx * W, PWy = dH_dwy * W;
      tx_s[0][k] = 0.5 * w8 * PWx.real();
      tx_s[1][k] = -0.5 * w8 * PWx.imag();
      tx_s[2][k] = -0.5 * w8 * (PWx * w).real();
      ty_s[0][k] = 0.5 * w8 * PWy.real();
      ty_s[1][k] = -0.5 * w8 * PWy.imag();
      ty_s[2][k] = -0.5 * w8 * (PWy * w).real();
    }
  ComplexField flux(g);
  if (!sphere) {
    const ComplexField tx = diff_x_transpose(fx, g, st.x), ty = diff_y_transpose(fy, g, st.y);
    for (std::size_t k = 0; k < g.size(); ++k) flux[k] = tx[k] + ty[k];
  } else {
    std::array<RealField, 3> gS;
    for (std::size_t c = 0; c < 3; ++c) {
      gS[c] = diff_x_transpose(tx_s[c], g, st.x);
      const RealField t = diff_y_transpose(ty_s[c], g, st.y);
      for (std::size_t k = 0; k < g.size(); ++k) gS[c][k] += t[k];
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double re = s.omega[k].real(), im = s.omega[k].imag();
      const double dd = 1.0 + re * re + im * im, dd2 = dd * dd;
      const Vec3 s_re{2.0 * (dd - 2.0 * re * re) / dd2, -4.0 * re * im / dd2, -4.0 * re / dd2};
      const Vec3 s_im{-4.0 * re * im / dd2, 2.0 * (dd - 2.0 * im * im) / dd2, -4.0 * im / dd2};
      double gp = 0, gq = 0;
      for (std::size_t c = 0; c < 3; ++c) {
        gp += gS[c][k] * s_re[c];
        gq += gS[c][k] * s_im[c];
      }
      flux[k] = {gp, gq};
    }
  }
  const RealField tb_x = diff_x_transpose(fb, g, st.x), tb_y = diff_y_transpose(fb, g, st.y);
  GradientState out{ComplexField(g), RealField(g), RealField(g)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    out.omega[k] = local[k] + flux[k];
    out.a1[k] = la1[k] - tb_y[k];
    out.a2[k] = la2[k] + tb_x[k];
  }
  return out;
}

inline GradientState triangulated_gradient(const FieldState& s, const PotentialSpec& pot, const ModelParams& m) {
  const Grid2D& g = s.grid;
  NodeArray<Vec3> S(g), gS(g);
  for (std::size_t k = 0; k < g.size(); ++k) S[k] = stereographic(s.omega[k]);
  GradientState out{ComplexField(g), RealField(g), RealField(g)};
  for (const auto& t : triangulate(g)) {
    const auto q = triangle_terms(t, S, s);
    const double cO = t.measure * m.lambda1 * q.omega, cB = t.measure * m.lambda2 * q.b;
    const Vec3 &a = S[t.v[0]], &b = S[t.v[1]], &c = S[t.v[2]];
    const double N = dot(a, cross(b, c)), D = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    const double f = cO * 2.0 / (2.0 * t.measure * (N * N + D * D));
    const std::array<Vec3, 3> dN{cross(b, c), cross(c, a), cross(a, b)};
    const std::array<const Vec3*, 3> v{&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
      const std::size_t k = t.v[std::size_t(i)];
      const Vec3& p1 = *v[std::size_t((i + 1) % 3)];
      const Vec3& p2 = *v[std::size_t((i + 2) % 3)];
      for (std::size_t r = 0; r < 3; ++r) gS[k][r] += f * (D * dN[std::size_t(i)][r] - N * (p1[r] + p2[r]));
      gS[k][2] += cO * (q.a1 * t.gy[i] - q.a2 * t.gx[i]);
      out.a1[k] += cO * q.s3y / 3.0 - cB * t.gy[i];
      out.a2[k] += -cO * q.s3x / 3.0 + cB * t.gx[i];
    }
  }
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      gS[k][2] -= 0.5 * g.weight(i, j) * pot.Vprime(u_of(s.omega[k]));
      const double re = s.omega[k].real(), im = s.omega[k].imag();
      const double dd = 1.0 + re * re + im * im, dd2 = dd * dd;
      const Vec3 s_re{2.0 * (dd - 2.0 * re * re) / dd2, -4.0 * re * im / dd2, -4.0 * re / dd2};
      const Vec3 s_im{-4.0 * re * im / dd2, 2.0 * (dd - 2.0 * im * im) / dd2, -4.0 * im / dd2};
      out.omega[k] = {dot(gS[k], s_re), dot(gS[k], s_im)};
    }
  return out;
}

}  // namespace detail

/// Exact gradient of total_energy (trapezoid weights, the chosen stencil and
/// omega differencing). Boundary entries are zeroed when freeze_boundary is set.
inline GradientState discrete_gradient(const FieldState& s, const PotentialSpec& pot, const ModelParams& m,
                                       bool freeze_boundary = true,
                                       OmegaDifferencing scheme = OmegaDifferencing::Sphere,
                                       EnergyStencil stencil = EnergyStencil::Central) {
  const Grid2D& g = s.grid;
  GradientState out = stencil == EnergyStencil::Triangulated ? detail::triangulated_gradient(s, pot, m)
                                                             : detail::jet_gradient(s, pot, m, scheme, {});
  if (freeze_boundary)
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t i = 0; i < g.nx; ++i)
        if (g.on_boundary(i, j)) {
          const std::size_t k = g.index(i, j);
          out.omega[k] = 0;
          out.a1[k] = 0;
          out.a2[k] = 0;
        }
  return out;
}

/// Solves (I - l^2 Lap) d = f on the interior nodes with d = 0 on the
/// boundary; 5-point Laplacian. Factorized once per grid.
class SobolevSmoother {
 public:
  SobolevSmoother(const Grid2D& g, double length) : g_(g) {
    const std::size_t ni = g.nx - 2, nj = g.ny - 2;
    const double cx = length * length / (g.hx() * g.hx()), cy = length * length / (g.hy() * g.hy());
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(ni * nj * 5);
    auto id = [&](std::size_t i, std::size_t j) { return int((j - 1) * ni + (i - 1)); };
    for (std::size_t j = 1; j + 1 < g.ny; ++j)
      for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        t.emplace_back(id(i, j), id(i, j), 1.0 + 2.0 * cx + 2.0 * cy);
        if (i > 1) t.emplace_back(id(i, j), id(i - 1, j), -cx);
        if (i + 2 < g.nx) t.emplace_back(id(i, j), id(i + 1, j), -cx);
        if (j > 1) t.emplace_back(id(i, j), id(i, j - 1), -cy);
        if (j + 2 < g.ny) t.emplace_back(id(i, j), id(i, j + 1), -cy);
      }
    Eigen::SparseMatrix<double> a(int(ni * nj), int(ni * nj));
    a.setFromTriplets(t.begin(), t.end());
    llt_.compute(a);
    if (llt_.info() != Eigen::Success) throw std::runtime_error("SobolevSmoother: factorization failed");
  }

  RealField apply(const RealField& f) const {
    const std::size_t ni = g_.nx - 2;
    Eigen::VectorXd b((g_.nx - 2) * (g_.ny - 2));
    for (std::size_t j = 1; j + 1 < g_.ny; ++j)
      for (std::size_t i = 1; i + 1 < g_.nx; ++i) b[Eigen::Index((j - 1) * ni + (i - 1))] = f(i, j);
    const Eigen::VectorXd x = llt_.solve(b);
    RealField out(g_);
    for (std::size_t j = 1; j + 1 < g_.ny; ++j)
      for (std::size_t i = 1; i + 1 < g_.nx; ++i) out(i, j) = x[Eigen::Index((j - 1) * ni + (i - 1))];
    return out;
  }

 private:
  Grid2D g_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
};

struct FlowConfig {
  double initial_step = 1.0;
  bool line_search = true;       // backtracking (Armijo); otherwise fixed step
  int max_iterations = 1000;
  double grad_tol = 1e-10;
  double plateau_rtol = 0;       // stop when the energy drop over plateau_window iterations is below this (relative)
  int plateau_window = 50;
  int snapshot_every = 0;        // 0 disables snapshot callbacks
  bool sphere_metric = true;     // scale the w-step by (1+|w|^2)^2/4, the inverse round metric of the target
  double gauge_metric = 1.0;     // scale of the A-step relative to the w-step
  double sobolev_length = 1.0;   // > 0: descend along the H1 gradient (I - l^2 Lap)^{-1}; 0 uses the nodal gradient
  OmegaDifferencing scheme = OmegaDifferencing::Sphere;
  EnergyStencil stencil = EnergyStencil::Triangulated;
  double armijo = 1e-4;
  double grow = 1.5;
  double min_step = 1e-14;

  void validate() const {
    if (!(initial_step > 0)) throw std::invalid_argument("FlowConfig: step must be positive");
    if (max_iterations < 1) throw std::invalid_argument("FlowConfig: max_iterations must be >= 1");
  }
};

struct FlowRecord {
  int iter;
  double energy;
  double grad_norm;
};

struct FlowResult {
  FieldState state;
  std::vector<FlowRecord> history;
  std::string stop_reason;
};

class FlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using SnapshotFn = std::function<void(int, const FieldState&)>;

/// Boundary nodes keep their initial values (vacuum w, pure-gauge A).
inline FlowResult flow(const FieldState& initial, const PotentialSpec& pot, const ModelParams& m,
                       const FlowConfig& cfg, const SnapshotFn& snapshot = {}) {
  cfg.validate();
  initial.validate();
  const Grid2D& g = initial.grid;
  FlowResult res{initial, {}, "max-iterations"};
  double E = total_energy(res.state, pot, m, cfg.scheme, cfg.stencil);
  if (!std::isfinite(E)) throw FlowError("flow: initial energy is not finite");
  double step = cfg.initial_step;
  std::optional<SobolevSmoother> smoother;
  if (cfg.sobolev_length > 0) smoother.emplace(g, cfg.sobolev_length);

  for (int it = 0;; ++it) {
    const GradientState grad = discrete_gradient(res.state, pot, m, true, cfg.scheme, cfg.stencil);
    const double gn = grad.norm();
    res.history.push_back({it, E, gn});
    if (snapshot && cfg.snapshot_every > 0 && it % cfg.snapshot_every == 0) snapshot(it, res.state);
    if (!std::isfinite(gn)) throw FlowError("flow: non-finite gradient at iteration " + std::to_string(it));
    if (gn <= cfg.grad_tol) {
      res.stop_reason = "gradient-tolerance";
      break;
    }
    if (cfg.plateau_rtol > 0 && it >= cfg.plateau_window) {
      const double before = res.history[res.history.size() - 1 - std::size_t(cfg.plateau_window)].energy;
      if (before - E <= cfg.plateau_rtol * std::abs(E)) {
        res.stop_reason = "energy-plateau";
        break;
      }
    }
    if (it >= cfg.max_iterations) break;

    // Descent direction: the gradient in the chosen metric.
    GradientState dir{ComplexField(g), RealField(g), RealField(g)};
    RealField pr(g), gre(g), gim(g), ga1(g), ga2(g);
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t i = 0; i < g.nx; ++i) {
        const std::size_t k = g.index(i, j);
        const double sc = smoother ? 1.0 / g.weight(i, j) : 1.0;
        pr[k] = cfg.sphere_metric ? 0.5 * (1.0 + std::norm(res.state.omega[k])) : 1.0;  // square root of the metric
        gre[k] = sc * pr[k] * grad.omega[k].real();
        gim[k] = sc * pr[k] * grad.omega[k].imag();
        ga1[k] = sc * grad.a1[k];
        ga2[k] = sc * grad.a2[k];
      }
    if (smoother) {
      gre = smoother->apply(gre);
      gim = smoother->apply(gim);
      ga1 = smoother->apply(ga1);
      ga2 = smoother->apply(ga2);
    }
    double slope = 0;  // <grad, dir>
    for (std::size_t k = 0; k < g.size(); ++k) {
      dir.omega[k] = pr[k] * cplx(gre[k], gim[k]);
      dir.a1[k] = cfg.gauge_metric * ga1[k];
      dir.a2[k] = cfg.gauge_metric * ga2[k];
      slope += (grad.omega[k] * std::conj(dir.omega[k])).real() + grad.a1[k] * dir.a1[k] + grad.a2[k] * dir.a2[k];
    }
    if (!(slope > 0)) {
      res.stop_reason = "no-descent";
      break;
    }

    bool accepted = false;
    while (step >= cfg.min_step) {
      FieldState trial = res.state;
      for (std::size_t k = 0; k < g.size(); ++k) {
        trial.omega[k] -= step * dir.omega[k];
        trial.a1[k] -= step * dir.a1[k];
        trial.a2[k] -= step * dir.a2[k];
      }
      const double Et = total_energy(trial, pot, m, cfg.scheme, cfg.stencil);
      const bool ok = std::isfinite(Et) && (cfg.line_search ? Et <= E - cfg.armijo * step * slope : Et < E);
      if (ok) {
        res.state = std::move(trial);
        E = Et;
        accepted = true;
        if (cfg.line_search) step *= cfg.grow;
        break;
      }
      if (!cfg.line_search) {
        if (!std::isfinite(Et)) throw FlowError("flow: non-finite energy at iteration " + std::to_string(it));
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.stop_reason = cfg.line_search ? "step-underflow" : "no-descent";
      break;
    }
  }
  return res;
}

}  // namespace bps
