#pragma once
// Command-line workbench: solve-radial, lift, verify, flow, potential, check-tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bps/bps.hpp"

namespace bps::cli {

enum Exit : int { Ok = 0, Usage = 2, Numerical = 3, Verification = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  double lambda1 = 1, lambda2 = 1, lambda4 = 1;
  int n = 1;
  std::string g1, grid, out;
  std::uint64_t seed = 0;
  std::string config;

  ModelParams params() const {
    ModelParams m;
    m.lambda1 = lambda1;
    m.lambda2 = lambda2;
    m.lambda4 = lambda4;
    m.n = n;
    try {
      m.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    return m;
  }

  GProfile profile() const {
    if (g1.empty()) throw UsageError("--g1 is required");
    try {
      return parse_g(g1);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }

  Grid2D grid2d() const {
    if (grid.empty()) throw UsageError("--grid is required");
    std::vector<double> v;
    std::stringstream ss(grid);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      double x = 0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || tok.empty()) throw UsageError("bad --grid entry '" + tok + "'");
      v.push_back(x);
    }
    if (v.size() != 6) throw UsageError("--grid expects NX,NY,XMIN,XMAX,YMIN,YMAX");
    if (v[0] < 3 || v[1] < 3 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
      throw UsageError("--grid node counts must be integers >= 3");
    Grid2D g(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), v[2], v[3], v[4], v[5]);
    try {
      g.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    return g;
  }
};

struct RadialArgs {
  double rtol = 1e-10, atol = 1e-13, r_max = 50, h_max = 0.01;
};
struct LiftArgs {
  std::string profile;
  double stretch = 1.0;
  bool offset_center = true;
};
struct VerifyArgs {
  std::string snapshot, differencing = "sphere";
  double el_tol = 5e-2, bogomolny_tol = 1e-2, tautology_tol = 1e-10, bound_tol = 5e-3;
  int margin = 1;
};
struct FlowArgs {
  std::string snapshot, stencil = "triangulated", differencing = "sphere";
  int max_iter = 2000, plateau_window = 50, snapshot_every = 0;
  double step = 1e-3, grad_tol = 1e-8, plateau_rtol = 1e-9, sobolev_length = 1.0;
  bool line_search = true, sphere_metric = true;
};
struct PotentialArgs {
  int samples = 201;
  double tol = 1e-12, scale = 1.0;
};
struct TautologyArgs {
  int count = 1000;
  double range = 2.0, curvature_shift = 0.0, potential_scale = 1.0, tol = 1e-12;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// key = value lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open config '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

inline std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config needs a path");
      return args[k + 1];
    }
    if (args[k].rfind("--config=", 0) == 0) return args[k].substr(9);
  }
  return "";
}

inline io::Header resolved(const CLI::App& sub) {
  io::Header h{{"command", sub.get_name()}};
  for (const CLI::Option* o : sub.get_options()) {
    if (o->get_lnames().empty()) continue;
    const std::string key = o->get_lnames().front();
    if (key == "help" || key == "config") continue;
    std::string v = o->count() > 0 ? o->results().back() : o->get_default_str();
    h.emplace_back(key, v);
  }
  return h;
}

template <class T>
T parse_enum(const std::string& s, T (*fn)(const std::string&)) {
  try {
    return fn(s);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write '" + path + "'");
  return os;
}

inline FieldState load_snapshot(const std::string& path) {
  if (path.empty()) throw UsageError("--snapshot is required");
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open snapshot '" + path + "'");
  return io::read_snapshot(is);
}

inline void kv(std::ostream& os, const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; }
inline void kv(std::ostream& os, const std::string& k, double v) { kv(os, k, io::num(v)); }

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_solve_radial(const Common& c, const RadialArgs& a, const io::Header& h, std::ostream& out) {
  const GProfile g = c.profile();
  const ModelParams m = c.params();
  RadialOptions opt;
  opt.rtol = a.rtol;
  opt.atol = a.atol;
  opt.r_max = a.r_max;
  opt.h_max = a.h_max;
  RadialProfile p;
  try {
    p = solve_radial(g, m, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const RadialEnergy e = radial_energy(p, g, m);
  const std::string path = c.out.empty() ? "profile.csv" : c.out;
  {
    auto os = detail::open_out(path);
    io::write_profile(os, p, m, g.family, h);
  }
  std::ostringstream sum;
  detail::kv(sum, "solve.termination", to_string(p.termination));
  detail::kv(sum, "solve.energy", e.energy);
  detail::kv(sum, "solve.bound", e.bound);
  detail::kv(sum, "solve.bound_closed_form", e.bound_closed_form);
  detail::kv(sum, "solve.relative_gap", e.energy != 0 ? std::abs(e.energy - e.bound) / std::abs(e.energy) : 0.0);
  detail::kv(sum, "solve.samples", std::to_string(p.size()));
  detail::kv(sum, "solve.last_radius", p.last_radius());
  detail::kv(sum, "solve.u_end", p.u.back());
  detail::kv(sum, "solve.a_end", p.a.back());
  {
    auto os = detail::open_out(path + ".summary");
    io::write_header(os, h);
    os << sum.str();
  }
  out << sum.str();
  return p.termination == Termination::Singularity ? Numerical : Ok;
}

inline int cmd_lift(const Common& c, const LiftArgs& a, io::Header h, std::ostream& out) {
  if (a.profile.empty()) throw UsageError("--profile is required");
  Grid2D grid = c.grid2d();
  bool shifted = false;
  if (a.offset_center) {
    // Keep nodes off the soliton center, where f = sqrt(u / (2 - u)) diverges.
    const double ix = -grid.x_min / grid.hx(), iy = -grid.y_min / grid.hy();
    const bool hit = std::abs(ix - std::round(ix)) < 1e-9 && std::abs(iy - std::round(iy)) < 1e-9 && ix >= 0 &&
                     ix <= double(grid.nx - 1) && iy >= 0 && iy <= double(grid.ny - 1);
    if (hit) {
      const double dx = 0.5 * grid.hx(), dy = 0.5 * grid.hy();
      grid = Grid2D(grid.nx, grid.ny, grid.x_min + dx, grid.x_max + dx, grid.y_min + dy, grid.y_max + dy);
      shifted = true;
    }
  }
  std::ifstream is(a.profile);
  if (!is) throw UsageError("cannot open profile '" + a.profile + "'");
  const io::ProfileFile pf = io::read_profile(is);
  const RadialProfile p = stretch_profile(pf.profile, a.stretch);
  FieldState s;
  try {
    s = lift_radial(p, grid, pf.params.n);
  } catch (const std::domain_error& e) {
    out << "lift.error = " << e.what() << '\n';
    return Numerical;
  }
  h.emplace_back("lift.center_offset", shifted ? "half-spacing" : "none");
  h.emplace_back("profile.n", std::to_string(pf.params.n));
  h.emplace_back("profile.lambda1", io::num(pf.params.lambda1));
  h.emplace_back("profile.lambda2", io::num(pf.params.lambda2));
  h.emplace_back("profile.lambda4", io::num(pf.params.lambda4));
  h.emplace_back("profile.g1", pf.family);
  const std::string path = c.out.empty() ? "snapshot.csv" : c.out;
  auto os = detail::open_out(path);
  io::write_snapshot(os, s, h);
  detail::kv(out, "lift.nodes", std::to_string(grid.size()));
  detail::kv(out, "lift.degree", degree(s));
  return Ok;
}

inline int cmd_verify(const Common& c, const VerifyArgs& a, const io::Header& h, std::ostream& out) {
  const GProfile g = c.profile();
  const ModelParams m = c.params();
  const auto scheme = detail::parse_enum(a.differencing, differencing_from_string);
  const FieldState s = detail::load_snapshot(a.snapshot);
  const PotentialSpec pot = potential_from_g(g, m);

  const ResidualReport el = el_residual(s, pot, m, scheme, std::size_t(std::max(a.margin, 0)));
  const ResidualReport bog = bogomolny_residual(s, g, m, scheme);
  const Derivatives d = derivatives(s, scheme);
  double taut = 0, r1_scale = 0, r2_scale = 0;
  for (std::size_t j = 0; j < s.grid.ny; ++j)
    for (std::size_t i = 0; i < s.grid.nx; ++i) {
      const PointJet p = jet_at(s, d, i, j);
      taut = std::max(taut, dual_tautology_check(p, g, m));
      const double u = u_of(p.omega);
      r1_scale = std::max(r1_scale, std::abs(g.gprime(u)));
      r2_scale = std::max(r2_scale, std::abs(m.lambda4 * g.g(u) / (2.0 * m.lambda2)));
    }
  const InvariantReport inv = bound_report(s, pot, g, m, scheme);
  const double gap = std::abs(inv.energy + 0.5 * inv.integral_I1);
  const double bound_rel = std::abs(inv.energy) > 1e-300 ? gap / std::abs(inv.energy) : gap;
  const double r1_rel = r1_scale > 0 ? bog.component("bogomolny.r1") / r1_scale : bog.component("bogomolny.r1");
  const double r2_rel = r2_scale > 0 ? bog.component("bogomolny.r2") / r2_scale : bog.component("bogomolny.r2");

  std::vector<std::string> flagged;
  if (!(el.sup_norm <= a.el_tol)) flagged.push_back("el");
  if (!(r1_rel <= a.bogomolny_tol)) flagged.push_back("bogomolny.r1");
  if (!(r2_rel <= a.bogomolny_tol)) flagged.push_back("bogomolny.r2");
  if (!(taut <= a.tautology_tol)) flagged.push_back("tautology");
  if (!(bound_rel <= a.bound_tol)) flagged.push_back("bound");

  std::ostringstream rep;
  io::write_report(rep, "verify", el);
  io::write_report(rep, "verify", bog);
  detail::kv(rep, "verify.bogomolny.r1_relative", r1_rel);
  detail::kv(rep, "verify.bogomolny.r2_relative", r2_rel);
  detail::kv(rep, "verify.tautology.max", taut);
  detail::kv(rep, "verify.bound.energy", inv.energy);
  detail::kv(rep, "verify.bound.half_integral_I1", 0.5 * inv.integral_I1);
  detail::kv(rep, "verify.bound.relative_gap", bound_rel);
  detail::kv(rep, "verify.bound.min_density_plus_I1", inv.min_density_plus_I1);
  detail::kv(rep, "verify.degree", inv.degree_Q);
  std::string fl;
  for (const auto& f : flagged) fl += (fl.empty() ? "" : ",") + f;
  detail::kv(rep, "verify.flagged", fl.empty() ? "none" : fl);
  detail::kv(rep, "verify.status", flagged.empty() ? "pass" : "fail");
  if (!c.out.empty()) {
    auto os = detail::open_out(c.out);
    io::write_header(os, h);
    os << rep.str();
  }
  out << rep.str();
  return flagged.empty() ? Ok : Verification;
}

inline int cmd_flow(const Common& c, const FlowArgs& a, const io::Header& h, std::ostream& out) {
  const GProfile g = c.profile();
  const ModelParams m = c.params();
  FlowConfig cfg;
  cfg.initial_step = a.step;
  cfg.line_search = a.line_search;
  cfg.max_iterations = a.max_iter;
  cfg.grad_tol = a.grad_tol;
  cfg.plateau_rtol = a.plateau_rtol;
  cfg.plateau_window = a.plateau_window;
  cfg.snapshot_every = a.snapshot_every;
  cfg.sphere_metric = a.sphere_metric;
  cfg.sobolev_length = a.sobolev_length;
  cfg.stencil = detail::parse_enum(a.stencil, energy_stencil_from_string);
  cfg.scheme = detail::parse_enum(a.differencing, differencing_from_string);
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const FieldState s0 = detail::load_snapshot(a.snapshot);
  const PotentialSpec pot = potential_from_g(g, m);
  const std::string prefix = c.out.empty() ? "flow" : c.out;
  SnapshotFn snap = [&](int it, const FieldState& st) {
    char name[32];
    std::snprintf(name, sizeof name, "_snap_%06d.csv", it);
    auto os = detail::open_out(prefix + name);
    io::write_snapshot(os, st, h);
  };
  FlowResult r;
  try {
    r = flow(s0, pot, m, cfg, snap);
  } catch (const FlowError& e) {
    out << "flow.error = " << e.what() << '\n';
    return Numerical;
  }
  {
    auto os = detail::open_out(prefix + "_history.csv");
    io::write_history(os, r.history, h);
  }
  {
    auto os = detail::open_out(prefix + "_final.csv");
    io::write_snapshot(os, r.state, h);
  }
  detail::kv(out, "flow.stop_reason", r.stop_reason);
  detail::kv(out, "flow.iterations", std::to_string(r.history.back().iter));
  detail::kv(out, "flow.energy_initial", r.history.front().energy);
  detail::kv(out, "flow.energy_final", r.history.back().energy);
  detail::kv(out, "flow.grad_norm_final", r.history.back().grad_norm);
  detail::kv(out, "flow.degree_initial", degree(s0));
  detail::kv(out, "flow.degree_final", degree(r.state));
  return Ok;
}

inline int cmd_potential(const Common& c, const PotentialArgs& a, const io::Header& h, std::ostream& out) {
  const GProfile g = c.profile();
  const ModelParams m = c.params();
  if (a.samples < 2) throw UsageError("--samples must be >= 2");
  PotentialSpec pot = potential_from_g(g, m);
  if (a.scale != 1.0) {
    const ScalarFn V = pot.V, dV = pot.Vprime;
    const double k = a.scale;
    pot.V = [V, k](double u) { return k * V(u); };
    pot.Vprime = [dV, k](double u) { return k * dV(u); };
    pot.origin = PotentialOrigin::UserSupplied;
  }
  const std::string path = c.out.empty() ? "potential.csv" : c.out;
  {
    auto os = detail::open_out(path);
    io::write_header(os, h);
    os << "u,V,dV,G1,dG1\n";
    for (double u : u_samples(a.samples))
      os << io::num(u) << ',' << io::num(pot.V(u)) << ',' << io::num(pot.Vprime(u)) << ',' << io::num(g.g(u)) << ','
         << io::num(g.gprime(u)) << '\n';
  }
  const double res = check_condition(pot, g, m, a.samples);
  detail::kv(out, "potential.condition_residual", res);
  detail::kv(out, "potential.status", res <= a.tol ? "pass" : "fail");
  return res <= a.tol ? Ok : Verification;
}

inline int cmd_check_tautology(const Common& c, const TautologyArgs& a, const io::Header& h, std::ostream& out) {
  const GProfile g = c.profile();
  const ModelParams m = c.params();
  if (a.count < 1) throw UsageError("--count must be >= 1");
  PotentialSpec pot = potential_from_g(g, m);
  if (a.potential_scale != 1.0) {
    const ScalarFn V = pot.V, dV = pot.Vprime;
    const double k = a.potential_scale;
    pot.V = [V, k](double u) { return k * V(u); };
    pot.Vprime = [dV, k](double u) { return k * dV(u); };
  }
  DualOptions opt;
  opt.curvature_shift = a.curvature_shift;
  double taut = 0, cons = 0;
  for (const PointJet& j : random_jets(std::size_t(a.count), c.seed, a.range)) {
    taut = std::max(taut, dual_tautology_check(j, g, m, opt));
    cons = std::max(cons, dual_el_consistency(j, g, pot, m, opt));
  }
  const bool ok = taut <= a.tol && cons <= a.tol;
  std::ostringstream rep;
  detail::kv(rep, "tautology.jets", std::to_string(a.count));
  detail::kv(rep, "tautology.first_order_max", taut);
  detail::kv(rep, "tautology.zeroth_order_max", cons);
  detail::kv(rep, "tautology.status", ok ? "pass" : "fail");
  if (!c.out.empty()) {
    auto os = detail::open_out(c.out);
    io::write_header(os, h);
    os << rep.str();
  }
  out << rep.str();
  return ok ? Ok : Verification;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bogomolny-sector workbench for the gauged restricted baby Skyrme model", "bps"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();

  Common common;
  RadialArgs ra;
  LiftArgs la;
  VerifyArgs va;
  FlowArgs fa;
  PotentialArgs pa;
  TautologyArgs ta;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--lambda1", common.lambda1, "quartic coupling");
    s->add_option("--lambda2", common.lambda2, "Maxwell coupling");
    s->add_option("--lambda4", common.lambda4, "G1 coupling");
    s->add_option("--n", common.n, "winding number");
    s->add_option("--g1", common.g1, "G1 profile, family:param (zero, power:p, scaled:c:p)");
    s->add_option("--grid", common.grid, "NX,NY,XMIN,XMAX,YMIN,YMAX");
    s->add_option("--seed", common.seed, "random seed");
    s->add_option("--out", common.out, "output path");
    s->add_option("--config", common.config, "key = value file; flags take precedence");
  };

  auto* solve = app.add_subcommand("solve-radial", "integrate the reduced radial equations");
  add_common(solve);
  solve->add_option("--rtol", ra.rtol);
  solve->add_option("--atol", ra.atol);
  solve->add_option("--r-max", ra.r_max);
  solve->add_option("--h-max", ra.h_max);

  auto* lift = app.add_subcommand("lift", "lift a radial profile onto a 2D grid");
  add_common(lift);
  lift->add_option("--profile", la.profile, "radial profile CSV");
  lift->add_option("--stretch", la.stretch, "radial stretch factor");
  lift->add_option("--offset-center", la.offset_center, "shift the grid by half a spacing if a node sits at the origin");

  auto* verify = app.add_subcommand("verify", "residual, tautology and bound reports for a snapshot");
  add_common(verify);
  verify->add_option("--snapshot", va.snapshot);
  verify->add_option("--differencing", va.differencing, "sphere | nodal");
  verify->add_option("--el-tol", va.el_tol, "sup-norm threshold for the Euler-Lagrange residual");
  verify->add_option("--bogomolny-tol", va.bogomolny_tol, "threshold for R1, R2 relative to their source terms");
  verify->add_option("--tautology-tol", va.tautology_tol);
  verify->add_option("--bound-tol", va.bound_tol, "relative |E + (1/2) int I1| / E threshold");
  verify->add_option("--margin", va.margin, "edge nodes excluded from the EL residual");

  auto* fl = app.add_subcommand("flow", "gradient descent on the discrete energy");
  add_common(fl);
  fl->add_option("--snapshot", fa.snapshot, "initial state");
  fl->add_option("--max-iter", fa.max_iter);
  fl->add_option("--step", fa.step, "initial step");
  fl->add_option("--line-search", fa.line_search);
  fl->add_option("--grad-tol", fa.grad_tol);
  fl->add_option("--plateau-rtol", fa.plateau_rtol);
  fl->add_option("--plateau-window", fa.plateau_window);
  fl->add_option("--snapshot-every", fa.snapshot_every);
  fl->add_option("--stencil", fa.stencil, "central | triangulated");
  fl->add_option("--differencing", fa.differencing, "sphere | nodal (central stencil)");
  fl->add_option("--sobolev-length", fa.sobolev_length);
  fl->add_option("--sphere-metric", fa.sphere_metric);

  auto* potc = app.add_subcommand("potential", "tabulate V(u) and check the existence condition");
  add_common(potc);
  potc->add_option("--samples", pa.samples);
  potc->add_option("--tol", pa.tol);
  potc->add_option("--scale", pa.scale, "multiply V before checking");

  auto* taut = app.add_subcommand("check-tautology", "dual equations on random jets");
  add_common(taut);
  taut->add_option("--count", ta.count);
  taut->add_option("--range", ta.range);
  taut->add_option("--curvature-shift", ta.curvature_shift);
  taut->add_option("--potential-scale", ta.potential_scale);
  taut->add_option("--tol", ta.tol);

  try {
    std::vector<std::string> args(argv_in.begin() + (argv_in.empty() ? 0 : 1), argv_in.end());
    const std::string cfg = detail::config_path(args);
    if (!cfg.empty() && !args.empty()) {
      CLI::App* target = nullptr;
      for (CLI::App* s : app.get_subcommands({}))
        if (s->get_name() == args.front()) target = s;
      if (target) {
        std::vector<std::string> injected;
        for (const auto& [k, v] : detail::read_config(cfg)) {
          if (k == "config" || k == "command" || v.empty()) continue;
          if (target->get_option_no_throw("--" + k)) {
            injected.push_back("--" + k);
            injected.push_back(v);
            continue;
          }
          bool known = false;
          for (CLI::App* s : app.get_subcommands({})) known = known || s->get_option_no_throw("--" + k);
          if (!known) throw UsageError("unknown config key '" + k + "'");
        }
        args.insert(args.begin() + 1, injected.begin(), injected.end());
      }
    }
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const io::Header h = detail::resolved(*sub);
    if (sub == solve) return cmd_solve_radial(common, ra, h, out);
    if (sub == lift) return cmd_lift(common, la, h, out);
    if (sub == verify) return cmd_verify(common, va, h, out);
    if (sub == fl) return cmd_flow(common, fa, h, out);
    if (sub == potc) return cmd_potential(common, pa, h, out);
    return cmd_check_tautology(common, ta, h, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return Usage;
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return Usage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return Numerical;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace bps::cli
