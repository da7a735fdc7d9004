#pragma once
// Lifting a radial profile to a 2D hedgehog configuration.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bps/fields.hpp"
#include "bps/radial.hpp"

namespace bps {

/// Monotone piecewise cubic Hermite interpolant (Fritsch-Carlson limiter).
/// Given slopes are used as the initial tangents; missing slopes fall back to
/// the three-point estimate.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> slopes = {})
      : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need matching samples (>= 2)");
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (!(x_[k + 1] > x_[k])) throw std::invalid_argument("MonotoneCubic: abscissae must increase");
    std::vector<double> sec(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) sec[k] = (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]);
    if (m_.size() != n) {
      m_.assign(n, 0.0);
      m_[0] = sec[0];
      m_[n - 1] = sec[n - 2];
      for (std::size_t k = 1; k + 1 < n; ++k) m_[k] = sec[k - 1] * sec[k] <= 0 ? 0.0 : 0.5 * (sec[k - 1] + sec[k]);
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (sec[k] == 0.0) {
        m_[k] = m_[k + 1] = 0.0;
        continue;
      }
      double al = m_[k] / sec[k], be = m_[k + 1] / sec[k];
      if (al < 0) m_[k] = al = 0;
      if (be < 0) m_[k + 1] = be = 0;
      const double s = al * al + be * be;
      if (s > 9.0) {
        const double t = 3.0 / std::sqrt(s);
        m_[k] = t * al * sec[k];
        m_[k + 1] = t * be * sec[k];
      }
    }
  }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

  double operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t k = std::size_t(it - x_.begin()) - 1;
    return detail::hermite(x_[k], x_[k + 1], y_[k], y_[k + 1], m_[k], m_[k + 1], x).v;
  }

 private:
  std::vector<double> x_, y_, m_;
};

struct LiftOptions {
  double pole_clamp = 1e-14;  // minimum 2 - u used in f = sqrt(u / (2 - u))
  double extend_u_max = 1e-8; // beyond the last radius, extend with u = 0 only if the profile ended this close to vacuum
};

/// Radial rescaling u(r) -> u(r / c), a(r) -> a(r / c); slopes scale by 1 / c.
inline RadialProfile stretch_profile(const RadialProfile& p, double c) {
  if (!(c > 0) || !std::isfinite(c)) throw std::invalid_argument("stretch_profile: factor must be positive");
  RadialProfile q = p;
  for (std::size_t k = 0; k < q.size(); ++k) {
    q.r[k] *= c;
    if (k < q.du.size()) q.du[k] /= c;
    if (k < q.da.size()) q.da[k] /= c;
  }
  return q;
}

/// w = f(r) e^{i n theta} with f = sqrt(u / (2 - u)), A1 = -n a y / r^2, A2 = n a x / r^2.
inline FieldState lift_radial(const RadialProfile& p, const Grid2D& grid, int n, const LiftOptions& opt = {}) {
  grid.validate();
  if (p.size() < 2) throw std::invalid_argument("lift_radial: profile needs at least two samples");
  for (double u : p.u)
    if (!(u >= 0.0 && u <= 2.0)) throw std::domain_error("lift_radial: profile u outside [0, 2]");

  const double corner = std::max({std::hypot(grid.x_min, grid.y_min), std::hypot(grid.x_max, grid.y_min),
                                  std::hypot(grid.x_min, grid.y_max), std::hypot(grid.x_max, grid.y_max)});
  const bool extendable = p.u.back() <= opt.extend_u_max;
  if (corner > p.last_radius() && !extendable)
    throw std::domain_error("lift_radial: profile ends before the grid corner and is not at vacuum");

  const bool have_slopes = p.du.size() == p.size() && p.da.size() == p.size();
  const MonotoneCubic uf(p.r, p.u, have_slopes ? p.du : std::vector<double>{});
  const MonotoneCubic af(p.r, p.a, have_slopes ? p.da : std::vector<double>{});

  FieldState s(grid);
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i), y = grid.y(j);
      const double r = std::hypot(x, y);
      const bool outside = r > p.last_radius();
      const double u = outside ? 0.0 : std::clamp(uf(r), 0.0, 2.0);
      const double a = outside ? p.a.back() : af(r);
      const double f = std::sqrt(u / std::max(2.0 - u, opt.pole_clamp));
      const double theta = std::atan2(y, x);
      s.omega(i, j) = std::polar(f, double(n) * theta);
      if (r > 0) {
        s.a1(i, j) = -double(n) * a * y / (r * r);
        s.a2(i, j) = double(n) * a * x / (r * r);
      }
    }
  s.validate();
  return s;
}

}  // namespace bps
