#pragma once
// Hedgehog reduction of the Bogomolny system. With
//   w = f(r) e^{i n theta},  A1 = -n a(r) y / r^2,  A2 = n a(r) x / r^2,
// and u = 2 f^2 / (1 + f^2) the two Bogomolny equations become
//   u' = -l4 r G1'(u) / (2 l1 n (1 + a)),   a' = -l4 r G1(u) / (2 l2 n),
// an initial-value problem from u(0) = 2, a(0) = 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "bps/fields.hpp"
#include "bps/potential.hpp"

namespace bps {

enum class Termination { VacuumReached, CompactonBoundary, Singularity, MaxRadius };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::VacuumReached: return "vacuum-reached";
    case Termination::CompactonBoundary: return "compacton-boundary";
    case Termination::Singularity: return "singularity-1+a";
    case Termination::MaxRadius: return "max-radius";
  }
  return "unknown";
}

inline Termination termination_from_string(const std::string& s) {
  for (auto t : {Termination::VacuumReached, Termination::CompactonBoundary, Termination::Singularity,
                 Termination::MaxRadius})
    if (s == to_string(t)) return t;
  throw std::invalid_argument("unknown termination label '" + s + "'");
}

/// Samples of the radial solution. du, da hold the slopes at each sample.
struct RadialProfile {
  std::vector<double> r, u, a, du, da;
  Termination termination = Termination::MaxRadius;
  bool degenerate = false;  // G1 vanishes identically along the solution

  std::size_t size() const { return r.size(); }
  double last_radius() const { return r.empty() ? 0.0 : r.back(); }
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadialRhs {
  double du, da;
};

inline RadialRhs reduced_rhs(double r, double u, double a, const GProfile& g, const ModelParams& m) {
  if (!(1.0 + a > 0.0)) throw SingularityError("reduced_rhs: 1 + a <= 0");
  const double du = -m.lambda4 * r * g.gprime(u) / (2.0 * m.lambda1 * m.n * (1.0 + a));
  const double da = -m.lambda4 * r * g.g(u) / (2.0 * m.lambda2 * m.n);
  return {du, da};
}

struct RadialOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  double r_max = 50.0;
  double h_max = 0.01;    // cap on the step, keeps the stored samples dense
  double r_start = 1e-4;  // end of the series start
  double u_stop = 1e-10;
  double compacton_gap = 1e-3;  // at u_stop, a projected zero closer than this * max(r, 1) marks a compacton
  double a_stop = 1e-6;   // singularity when 1 + a <= a_stop
};

namespace detail {
using RadialState = std::array<double, 2>;

struct SafeRhs {
  const GProfile& g;
  const ModelParams& m;
  void operator()(const RadialState& y, RadialState& dy, double r) const {
    const double u = std::clamp(y[0], 0.0, 2.0);
    const double one_a = 1.0 + y[1];
    // Stages may probe past the singularity; a huge slope makes the error
    // estimate reject the step.
    const double denom = one_a > 1e-300 ? one_a : 1e-300;
    dy[0] = -m.lambda4 * r * g.gprime(u) / (2.0 * m.lambda1 * m.n * denom);
    dy[1] = -m.lambda4 * r * g.g(u) / (2.0 * m.lambda2 * m.n);
  }
};
}  // namespace detail

/// Integrates the reduced system with an adaptive Dormand-Prince 5(4) pair.
inline RadialProfile solve_radial(const GProfile& g, const ModelParams& m, const RadialOptions& opt = {}) {
  m.validate();
  if (!(opt.r_max > opt.r_start) || opt.r_start <= 0) throw std::invalid_argument("solve_radial: bad radius range");
  if (m.lambda4 * m.n * g.gprime(2.0) < 0)
    throw std::invalid_argument("solve_radial: lambda4 * n * G1'(2) < 0 has no branch decaying from u = 2");

  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_dopri5<detail::RadialState>;
  auto controlled = ode::make_controlled<Stepper>(opt.atol, opt.rtol);
  const detail::SafeRhs rhs{g, m};

  RadialProfile p;
  auto push = [&](double r, double u, double a) {
    p.r.push_back(r);
    p.u.push_back(u);
    p.a.push_back(a);
    if (r == 0.0) {
      p.du.push_back(0.0);
      p.da.push_back(0.0);
    } else {
      detail::RadialState d;
      rhs({u, a}, d, r);
      p.du.push_back(d[0]);
      p.da.push_back(d[1]);
    }
  };

  push(0.0, 2.0, 0.0);
  double r = opt.r_start;
  detail::RadialState y{2.0 - m.lambda4 * g.gprime(2.0) * r * r / (4.0 * m.lambda1 * m.n),
                        -m.lambda4 * g.g(2.0) * r * r / (4.0 * m.lambda2 * m.n)};
  push(r, y[0], y[1]);

  p.degenerate = g.g(2.0) == 0.0 && g.gprime(2.0) == 0.0;
  double dt = std::min(opt.h_max, 1e-3);
  const double dt_floor = 1e-14;

  while (true) {
    if (1.0 + y[1] <= opt.a_stop) {
      p.termination = Termination::Singularity;
      break;
    }
    if (y[0] <= opt.u_stop) {
      // u ~ (r0 - r)^2 near a compacton edge, so u / |u'| collapses; an exponential tail keeps it O(1).
      detail::RadialState d;
      rhs(y, d, r);
      const double reach = d[0] < 0 ? y[0] / -d[0] : std::numeric_limits<double>::infinity();
      if (reach <= opt.compacton_gap * std::max(r, 1.0)) {
        push(r + 2.0 * reach, 0.0, y[1]);
        p.termination = Termination::CompactonBoundary;
        return p;
      }
      p.termination = Termination::VacuumReached;
      break;
    }
    if (r >= opt.r_max) {
      p.termination = Termination::MaxRadius;
      break;
    }
    dt = std::min({dt, opt.h_max, opt.r_max - r});
    detail::RadialState trial = y;
    double r_trial = r;
    const auto res = controlled.try_step(rhs, trial, r_trial, dt);
    if (res == ode::fail) {
      if (dt < dt_floor * std::max(1.0, r)) {
        // The step size collapses only when the slope blows up, i.e. at 1 + a -> 0.
        p.termination = Termination::Singularity;
        break;
      }
      continue;
    }
    if (trial[0] < 0.0) {
      // u crossed zero inside the step: bisect the step length to land on it.
      const double h_full = r_trial - r;
      double lo = 0.0, hi = h_full;
      Stepper fixed;
      detail::RadialState at_lo = y;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, r); ++it) {
        const double mid = 0.5 * (lo + hi);
        detail::RadialState s = y;
        fixed.do_step(rhs, s, r, mid);
        if (s[0] < 0.0)
          hi = mid;
        else {
          lo = mid;
          at_lo = s;
        }
      }
      push(r + lo, 0.0, at_lo[1]);
      p.termination = Termination::CompactonBoundary;
      return p;
    }
    y = trial;
    r = r_trial;
    push(r, std::min(y[0], 2.0), y[1]);
  }
  return p;
}

namespace detail {

// Cubic Hermite value and slope on [r0, r1].
struct HermiteEval {
  double v, dv;
};
inline HermiteEval hermite(double r0, double r1, double v0, double v1, double m0, double m1, double r) {
  const double h = r1 - r0;
  const double t = (r - r0) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double v = (2 * t3 - 3 * t2 + 1) * v0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * v1 +
                   (t3 - t2) * h * m1;
  const double dv = ((6 * t2 - 6 * t) * v0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * v1 +
                     (3 * t2 - 2 * t) * h * m1) /
                    h;
  return {v, dv};
}

template <class F>
double gauss5(F&& f, double a, double b) {
  static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                           0.9061798459386640};
  static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                           0.2369268850561891, 0.2369268850561891};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0;
  for (int k = 0; k < 5; ++k) s += w[std::size_t(k)] * f(c + h * x[std::size_t(k)]);
  return s * h;
}

template <class F>
double adaptive_gauss(F&& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss5(f, a, mid), right = gauss5(f, mid, b);
  if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive_gauss(f, a, mid, left, 0.5 * tol, depth - 1) + adaptive_gauss(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

struct RadialEnergy {
  double energy = 0;      // 1/2 \int H 2 pi r dr with the on-shell density 2 V(u)
  double bound = 0;       // -1/2 \int I1 2 pi r dr from the sampled profile slopes
  double bound_closed_form = 0;  // pi l4 n (G1(u(0)) (1 + a(0)) - G1(u_end)(1 + a_end))
};

/// On-shell density (l4^2 / 2)(G1'^2 / l1 + G1^2 / l2) at potential argument u.
inline double on_shell_density(double u, const GProfile& g, const ModelParams& m) {
  const double g0 = g.g(u), g1 = g.gprime(u);
  return 0.5 * m.lambda4 * m.lambda4 * (g1 * g1 / m.lambda1 + g0 * g0 / m.lambda2);
}

/// Energy and topological bound of a profile. Both are integrated over the
/// cubic Hermite interpolant of the stored samples; the bound uses the
/// interpolant's slopes rather than the ODE right-hand side.
inline RadialEnergy radial_energy(const RadialProfile& p, const GProfile& g, const ModelParams& m,
                                  double tol = 1e-14) {
  RadialEnergy out;
  if (p.size() < 2) return out;
  const double pi = 3.14159265358979323846;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double r0 = p.r[k], r1 = p.r[k + 1];
    if (!(r1 > r0)) continue;
    auto ev = [&](double r) {
      const auto u = detail::hermite(r0, r1, p.u[k], p.u[k + 1], p.du[k], p.du[k + 1], r);
      const auto a = detail::hermite(r0, r1, p.a[k], p.a[k + 1], p.da[k], p.da[k + 1], r);
      return std::pair{u, a};
    };
    auto energy_integrand = [&](double r) {
      const auto [u, a] = ev(r);
      return pi * r * on_shell_density(std::clamp(u.v, 0.0, 2.0), g, m);
    };
    auto bound_integrand = [&](double r) {
      // r I1 = l4 n [G1'(u) (1 + a) u' + G1(u) a'] for the hedgehog fields.
      const auto [u, a] = ev(r);
      const double uc = std::clamp(u.v, 0.0, 2.0);
      return -pi * m.lambda4 * m.n * (g.gprime(uc) * (1.0 + a.v) * u.dv + g.g(uc) * a.dv);
    };
    out.energy += detail::adaptive_gauss(energy_integrand, r0, r1, detail::gauss5(energy_integrand, r0, r1), tol, 12);
    out.bound += detail::adaptive_gauss(bound_integrand, r0, r1, detail::gauss5(bound_integrand, r0, r1), tol, 12);
  }
  out.bound_closed_form =
      pi * m.lambda4 * m.n * (g.g(p.u.front()) * (1.0 + p.a.front()) - g.g(p.u.back()) * (1.0 + p.a.back()));
  return out;
}

}  // namespace bps
