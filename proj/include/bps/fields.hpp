#pragma once
// Grids, nodal field storage, finite differences and the stereographic map.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bps {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Uniform rectangular node lattice. nx, ny count nodes including both edges.
struct Grid2D {
  std::size_t nx = 0, ny = 0;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  Grid2D() = default;
  Grid2D(std::size_t nx_, std::size_t ny_, double x0, double x1, double y0, double y1)
      : nx(nx_), ny(ny_), x_min(x0), x_max(x1), y_min(y0), y_max(y1) {
    validate();
  }

  void validate() const {
    if (nx < 3 || ny < 3) throw std::invalid_argument("Grid2D: need at least 3 nodes per axis");
    if (!(x_max > x_min) || !(y_max > y_min))
      throw std::invalid_argument("Grid2D: extents must be increasing");
  }

  double hx() const { return (x_max - x_min) / double(nx - 1); }
  double hy() const { return (y_max - y_min) / double(ny - 1); }
  double x(std::size_t i) const { return x_min + double(i) * hx(); }
  double y(std::size_t j) const { return y_min + double(j) * hy(); }
  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  bool on_boundary(std::size_t i, std::size_t j) const {
    return i == 0 || j == 0 || i + 1 == nx || j + 1 == ny;
  }

  /// Trapezoid weight of node (i, j).
  double weight(std::size_t i, std::size_t j) const {
    double w = hx() * hy();
    if (i == 0 || i + 1 == nx) w *= 0.5;
    if (j == 0 || j + 1 == ny) w *= 0.5;
    return w;
  }

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.nx == b.nx && a.ny == b.ny && a.x_min == b.x_min && a.x_max == b.x_max &&
           a.y_min == b.y_min && a.y_max == b.y_max;
  }
};

/// Values of type T at every node of a grid, stored row-major in y then x.
template <class T>
class NodeArray {
 public:
  NodeArray() = default;
  explicit NodeArray(const Grid2D& g, T fill = T{}) : nx_(g.nx), ny_(g.ny), data_(g.size(), fill) {}

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[j * nx_ + i]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[j * nx_ + i]; }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool matches(const Grid2D& g) const { return nx_ == g.nx && ny_ == g.ny; }

 private:
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<T> data_;
};

using RealField = NodeArray<double>;
using ComplexField = NodeArray<cplx>;

/// Builds a field by evaluating f(x, y) at every node.
template <class T, class F>
NodeArray<T> sample(const Grid2D& g, F&& f) {
  NodeArray<T> out(g);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) out(i, j) = static_cast<T>(f(g.x(i), g.y(j)));
  return out;
}

namespace detail {
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
}  // namespace detail

/// Complex scalar omega and the two real gauge potential components at every node.
struct FieldState {
  Grid2D grid;
  ComplexField omega;
  RealField a1, a2;

  FieldState() = default;
  explicit FieldState(const Grid2D& g) : grid(g), omega(g), a1(g), a2(g) {}
  FieldState(const Grid2D& g, ComplexField w, RealField A1, RealField A2)
      : grid(g), omega(std::move(w)), a1(std::move(A1)), a2(std::move(A2)) {
    validate();
  }

  void validate() const {
    grid.validate();
    if (!omega.matches(grid) || !a1.matches(grid) || !a2.matches(grid))
      throw std::invalid_argument("FieldState: array shape does not match grid");
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (!detail::finite(omega[k]) || !detail::finite(a1[k]) || !detail::finite(a2[k]))
        throw std::domain_error("FieldState: non-finite value at node " + std::to_string(k));
  }
};

/// Coupling constants and winding number.
struct ModelParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda4 = 1.0;
  int n = 1;

  ModelParams() = default;
  ModelParams(double l1, double l2, double l4, int winding) : lambda1(l1), lambda2(l2), lambda4(l4), n(winding) {
    validate();
  }
  void validate() const {
    if (!(lambda1 > 0)) throw std::invalid_argument("ModelParams: lambda1 must be positive");
    if (!(lambda2 > 0)) throw std::invalid_argument("ModelParams: lambda2 must be positive");
    if (lambda4 == 0 || !std::isfinite(lambda4)) throw std::invalid_argument("ModelParams: lambda4 must be nonzero");
    if (n == 0) throw std::invalid_argument("ModelParams: winding number must be nonzero");
  }
};

/// Field data at a single point: omega, its first derivatives, the gauge potential
/// and the curvature b = A2,x - A1,y.
struct PointJet {
  cplx omega{}, omega_x{}, omega_y{};
  double a1 = 0, a2 = 0, b = 0;
};

/// Potential argument u = 1 - n.S = 2|w|^2 / (1 + |w|^2), in [0, 2).
inline double u_of(cplx w) {
  const double m = std::norm(w);
  return 2.0 * m / (1.0 + m);
}

inline Vec3 stereographic(cplx w) {
  const double m = std::norm(w);
  const double d = 1.0 + m;
  return {2.0 * w.real() / d, 2.0 * w.imag() / d, (1.0 - m) / d};
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// ---------------------------------------------------------------------------
// Finite differences. Second-order central differences in the interior and
// second-order one-sided three-point stencils on the edges. The transpose is
// exposed for adjoint (discrete-gradient) computations.

/// First-difference stencil along one axis.
enum class Difference { Central, Forward, Backward };

namespace detail {

// Stencil row k of the 1D first-derivative matrix on n nodes with spacing h:
// (column, coefficient) triples. Central rows fall back to second-order
// one-sided three-point stencils on the edges; forward/backward rows flip
// direction at the edge they cannot reach.
struct Tap {
  std::size_t col;
  double c;
};
inline std::array<Tap, 3> d1_row(std::size_t k, std::size_t n, double h, Difference kind = Difference::Central) {
  if (kind == Difference::Forward && k + 1 == n) kind = Difference::Backward;
  if (kind == Difference::Backward && k == 0) kind = Difference::Forward;
  if (kind == Difference::Forward) return {{{k, -1.0 / h}, {k + 1, 1.0 / h}, {k, 0.0}}};
  if (kind == Difference::Backward) return {{{k - 1, -1.0 / h}, {k, 1.0 / h}, {k, 0.0}}};
  const double s = 1.0 / (2.0 * h);
  if (k == 0) return {{{0, -3.0 * s}, {1, 4.0 * s}, {2, -1.0 * s}}};
  if (k + 1 == n) return {{{n - 1, 3.0 * s}, {n - 2, -4.0 * s}, {n - 3, 1.0 * s}}};
  return {{{k - 1, -s}, {k + 1, s}, {k, 0.0}}};
}

}  // namespace detail

template <class T>
NodeArray<T> diff_x(const NodeArray<T>& f, const Grid2D& g, Difference kind = Difference::Central) {
  if (!f.matches(g)) throw std::invalid_argument("diff_x: field shape does not match grid");
  NodeArray<T> out(g);
  const double h = g.hx();
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      T acc{};
      for (const auto& t : detail::d1_row(i, g.nx, h, kind)) acc += t.c * f(t.col, j);
      out(i, j) = acc;
    }
  return out;
}

template <class T>
NodeArray<T> diff_y(const NodeArray<T>& f, const Grid2D& g, Difference kind = Difference::Central) {
  if (!f.matches(g)) throw std::invalid_argument("diff_y: field shape does not match grid");
  NodeArray<T> out(g);
  const double h = g.hy();
  for (std::size_t j = 0; j < g.ny; ++j) {
    const auto row = detail::d1_row(j, g.ny, h, kind);
    for (std::size_t i = 0; i < g.nx; ++i) {
      T acc{};
      for (const auto& t : row) acc += t.c * f(i, t.col);
      out(i, j) = acc;
    }
  }
  return out;
}

/// Applies the transpose of the diff_x matrix.
template <class T>
NodeArray<T> diff_x_transpose(const NodeArray<T>& f, const Grid2D& g, Difference kind = Difference::Central) {
  if (!f.matches(g)) throw std::invalid_argument("diff_x_transpose: field shape does not match grid");
  NodeArray<T> out(g);
  const double h = g.hx();
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i)
      for (const auto& t : detail::d1_row(i, g.nx, h, kind)) out(t.col, j) += t.c * f(i, j);
  return out;
}

template <class T>
NodeArray<T> diff_y_transpose(const NodeArray<T>& f, const Grid2D& g, Difference kind = Difference::Central) {
  if (!f.matches(g)) throw std::invalid_argument("diff_y_transpose: field shape does not match grid");
  NodeArray<T> out(g);
  const double h = g.hy();
  for (std::size_t j = 0; j < g.ny; ++j) {
    const auto row = detail::d1_row(j, g.ny, h, kind);
    for (std::size_t i = 0; i < g.nx; ++i)
      for (const auto& t : row) out(i, t.col) += t.c * f(i, j);
  }
  return out;
}

/// A pair of per-axis difference stencils.
struct StencilPair {
  Difference x = Difference::Central, y = Difference::Central;
};

/// Neumaier-compensated sum over nodes in storage order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0, comp_ = 0;
};

/// Trapezoid-rule integral of a nodal field over the grid rectangle.
inline double integrate(const RealField& f, const Grid2D& g) {
  CompensatedSum s;
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) s.add(g.weight(i, j) * f(i, j));
  return s.value();
}

/// How first derivatives of omega are formed.
///  Sphere: difference the unit vector S = stereo(w) and map back,
///          w_k = (1 + |w|^2)/2 * ((d_k S1 + i d_k S2) - w d_k S3).
///          S stays smooth where w has a pole, so this keeps O(h^2) accuracy
///          at a soliton center with u = 2.
///  Nodal:  difference the stored w values directly.
enum class OmegaDifferencing { Sphere, Nodal };

inline const char* to_string(OmegaDifferencing d) { return d == OmegaDifferencing::Sphere ? "sphere" : "nodal"; }

inline OmegaDifferencing differencing_from_string(const std::string& s) {
  if (s == "sphere") return OmegaDifferencing::Sphere;
  if (s == "nodal") return OmegaDifferencing::Nodal;
  throw std::invalid_argument("unknown differencing scheme '" + s + "' (sphere|nodal)");
}

/// Components of S at every node.
inline std::array<RealField, 3> sphere_components(const FieldState& s) {
  std::array<RealField, 3> S{RealField(s.grid), RealField(s.grid), RealField(s.grid)};
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const Vec3 v = stereographic(s.omega[k]);
    for (std::size_t c = 0; c < 3; ++c) S[c][k] = v[c];
  }
  return S;
}

/// First derivatives of omega and the curvature, computed once per state.
struct Derivatives {
  ComplexField wx, wy;
  RealField b;  // A2,x - A1,y
  // Sphere scheme only: differenced S components.
  std::array<RealField, 3> sx, sy;
};

inline Derivatives derivatives(const FieldState& s, OmegaDifferencing scheme = OmegaDifferencing::Sphere,
                               StencilPair st = {}) {
  const Grid2D& g = s.grid;
  Derivatives d;
  d.b = diff_x(s.a2, g, st.x);
  const RealField a1y = diff_y(s.a1, g, st.y);
  for (std::size_t k = 0; k < d.b.size(); ++k) d.b[k] -= a1y[k];
  if (scheme == OmegaDifferencing::Nodal) {
    d.wx = diff_x(s.omega, g, st.x);
    d.wy = diff_y(s.omega, g, st.y);
    return d;
  }
  const auto S = sphere_components(s);
  for (std::size_t c = 0; c < 3; ++c) {
    d.sx[c] = diff_x(S[c], g, st.x);
    d.sy[c] = diff_y(S[c], g, st.y);
  }
  d.wx = ComplexField(g);
  d.wy = ComplexField(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx w = s.omega[k];
    const double half_w = 0.5 * (1.0 + std::norm(w));
    d.wx[k] = half_w * (cplx(d.sx[0][k], d.sx[1][k]) - w * d.sx[2][k]);
    d.wy[k] = half_w * (cplx(d.sy[0][k], d.sy[1][k]) - w * d.sy[2][k]);
  }
  return d;
}

inline PointJet jet_at(const FieldState& s, const Derivatives& d, std::size_t i, std::size_t j) {
  return {s.omega(i, j), d.wx(i, j), d.wy(i, j), s.a1(i, j), s.a2(i, j), d.b(i, j)};
}

}  // namespace bps
