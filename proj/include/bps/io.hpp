#pragma once
// Text file formats: field snapshots, radial profiles, flow histories and
// flat key-value reports. Floating-point values are written with 17
// significant digits.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bps/fields.hpp"
#include "bps/flow.hpp"
#include "bps/radial.hpp"
#include "bps/residual.hpp"

namespace bps::io {

using Header = std::vector<std::pair<std::string, std::string>>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_header(std::ostream& os, const Header& h) {
  for (const auto& [k, v] : h) os << "# " << k << " = " << v << '\n';
}

// ---------------------------------------------------------------------------
// Snapshot: "# grid nx ny x_min x_max y_min y_max" then x,y,re_omega,im_omega,a1,a2

inline void write_snapshot(std::ostream& os, const FieldState& s, const Header& config = {}) {
  const Grid2D& g = s.grid;
  os << "# grid " << g.nx << ' ' << g.ny << ' ' << num(g.x_min) << ' ' << num(g.x_max) << ' ' << num(g.y_min) << ' '
     << num(g.y_max) << '\n';
  write_header(os, config);
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i)
      os << num(g.x(i)) << ',' << num(g.y(j)) << ',' << num(s.omega(i, j).real()) << ',' << num(s.omega(i, j).imag())
         << ',' << num(s.a1(i, j)) << ',' << num(s.a2(i, j)) << '\n';
}

namespace detail {
inline std::vector<double> parse_row(const std::string& line, std::size_t expect, std::size_t lineno) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      v.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + tok + "'", lineno);
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size()) throw ParseError("malformed number '" + tok + "'", lineno);
  }
  if (v.size() != expect)
    throw ParseError("expected " + std::to_string(expect) + " columns, got " + std::to_string(v.size()), lineno);
  return v;
}
}  // namespace detail

inline FieldState read_snapshot(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  Grid2D g;
  bool have_grid = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# grid", 0) != 0) throw ParseError("expected '# grid nx ny x_min x_max y_min y_max' header", lineno);
    std::istringstream hs(line.substr(6));
    if (!(hs >> g.nx >> g.ny >> g.x_min >> g.x_max >> g.y_min >> g.y_max)) throw ParseError("bad grid header", lineno);
    try {
      g.validate();
    } catch (const std::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    have_grid = true;
    break;
  }
  if (!have_grid) throw ParseError("empty snapshot", lineno);
  FieldState s(g);
  std::size_t k = 0;
  const double tol_x = 1e-9 * (g.x_max - g.x_min), tol_y = 1e-9 * (g.y_max - g.y_min);
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (k >= g.size()) throw ParseError("more rows than grid nodes", lineno);
    const auto v = detail::parse_row(line, 6, lineno);
    const std::size_t i = k % g.nx, j = k / g.nx;
    if (std::abs(v[0] - g.x(i)) > tol_x || std::abs(v[1] - g.y(j)) > tol_y)
      throw ParseError("node coordinates do not match the grid header", lineno);
    s.omega[k] = {v[2], v[3]};
    s.a1[k] = v[4];
    s.a2[k] = v[5];
    ++k;
  }
  if (k != g.size())
    throw ParseError("expected " + std::to_string(g.size()) + " rows, got " + std::to_string(k), lineno);
  try {
    s.validate();
  } catch (const std::exception& e) {
    throw ParseError(e.what(), lineno);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Radial profile: "# radial n lambda1 lambda2 lambda4 family termination" then r,u,a

struct ProfileFile {
  RadialProfile profile;
  ModelParams params;
  std::string family;
};

inline void write_profile(std::ostream& os, const RadialProfile& p, const ModelParams& m, const std::string& family,
                          const Header& config = {}) {
  os << "# radial " << m.n << ' ' << num(m.lambda1) << ' ' << num(m.lambda2) << ' ' << num(m.lambda4) << ' ' << family
     << ' ' << to_string(p.termination) << '\n';
  write_header(os, config);
  for (std::size_t k = 0; k < p.size(); ++k) os << num(p.r[k]) << ',' << num(p.u[k]) << ',' << num(p.a[k]) << '\n';
}

/// Reads a profile; slopes are recomputed from the reduced equations named in the header.
inline ProfileFile read_profile(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  ProfileFile f;
  bool have = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# radial", 0) != 0) throw ParseError("expected '# radial ...' header", lineno);
    std::istringstream hs(line.substr(8));
    std::string term;
    if (!(hs >> f.params.n >> f.params.lambda1 >> f.params.lambda2 >> f.params.lambda4 >> f.family >> term))
      throw ParseError("bad radial header", lineno);
    try {
      f.params.validate();
      f.profile.termination = termination_from_string(term);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    have = true;
    break;
  }
  if (!have) throw ParseError("empty profile", lineno);
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto v = detail::parse_row(line, 3, lineno);
    if (!f.profile.r.empty() && !(v[0] > f.profile.r.back())) throw ParseError("radii must increase", lineno);
    f.profile.r.push_back(v[0]);
    f.profile.u.push_back(v[1]);
    f.profile.a.push_back(v[2]);
  }
  if (f.profile.size() < 2) throw ParseError("profile needs at least two rows", lineno);
  GProfile g;
  try {
    g = parse_g(f.family);
  } catch (const std::exception& e) {
    throw ParseError(e.what(), 1);
  }
  for (std::size_t k = 0; k < f.profile.size(); ++k) {
    const double r = f.profile.r[k], u = f.profile.u[k], a = f.profile.a[k];
    if (r == 0.0 || !(1.0 + a > 0.0) || u < 0.0 || u > 2.0) {
      f.profile.du.push_back(0.0);
      f.profile.da.push_back(0.0);
    } else {
      const auto d = reduced_rhs(r, u, a, g, f.params);
      f.profile.du.push_back(d.du);
      f.profile.da.push_back(d.da);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------

inline void write_history(std::ostream& os, const std::vector<FlowRecord>& h, const Header& config = {}) {
  write_header(os, config);
  os << "iter,energy,grad_norm\n";
  for (const auto& r : h) os << r.iter << ',' << num(r.energy) << ',' << num(r.grad_norm) << '\n';
}

/// Flat "prefix.key = value" lines.
inline void write_report(std::ostream& os, const std::string& prefix, const ResidualReport& r) {
  os << prefix << ".sup_norm = " << num(r.sup_norm) << '\n';
  os << prefix << ".l2_norm = " << num(r.l2_norm) << '\n';
  os << prefix << ".nodes = " << r.nodes << '\n';
  for (const auto& [k, v] : r.breakdown) os << prefix << '.' << k << " = " << num(v) << '\n';
}

template <class Stream>
Stream open_or_throw(const std::string& path) {
  Stream s(path);
  if (!s) throw std::runtime_error("cannot open '" + path + "'");
  return s;
}

}  // namespace bps::io
