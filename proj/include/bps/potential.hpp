#pragma once
// G1 profiles and the potentials they generate through the existence condition
//   V = (lambda4^2 / 4) (G1'^2 / lambda1 + G1^2 / lambda2).

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bps/fields.hpp"

namespace bps {

using ScalarFn = std::function<double(double)>;

/// G1(u) on u in [0, 2] together with its first two derivatives.
struct GProfile {
  ScalarFn g, gprime, gsecond;
  std::string family;             // canonical "family:params" label
  std::vector<double> parameters;

  double operator()(double u) const { return g(u); }
};

enum class PotentialOrigin { FromG1, UserSupplied };

struct PotentialSpec {
  ScalarFn V, Vprime;
  PotentialOrigin origin = PotentialOrigin::UserSupplied;

  double operator()(double u) const { return V(u); }
};

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<double> split_numbers(const std::string& s, const std::string& label) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw std::invalid_argument("bad parameter '" + tok + "' in G1 spec '" + label + "'");
    out.push_back(v);
  }
  return out;
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// c * u^p / p, p >= 2.
inline GProfile scaled_power(double c, double p, std::string label) {
  if (!(p >= 2.0)) throw std::invalid_argument("power family requires p >= 2, got " + format_number(p));
  if (!std::isfinite(c)) throw std::invalid_argument("scale must be finite");
  GProfile gp;
  gp.g = [c, p](double u) { return c * std::pow(u, p) / p; };
  gp.gprime = [c, p](double u) { return c * std::pow(u, p - 1.0); };
  gp.gsecond = [c, p](double u) { return p == 2.0 ? c : c * (p - 1.0) * std::pow(u, p - 2.0); };
  gp.family = std::move(label);
  gp.parameters = {c, p};
  return gp;
}

}  // namespace detail

/// Built-in G1 families:
///   zero         G1 = 0
///   power:p      G1 = u^p / p          (p >= 2)
///   scaled:c:p   G1 = c u^p / p        (p >= 2)
inline GProfile builtin_g(const std::string& family, const std::vector<double>& params) {
  if (family == "zero") {
    if (!params.empty()) throw std::invalid_argument("zero family takes no parameters");
    GProfile gp;
    gp.g = gp.gprime = gp.gsecond = [](double) { return 0.0; };
    gp.family = "zero";
    return gp;
  }
  if (family == "power") {
    if (params.size() != 1) throw std::invalid_argument("power family takes one parameter: power:p");
    return detail::scaled_power(1.0, params[0], "power:" + detail::format_number(params[0]));
  }
  if (family == "scaled") {
    if (params.size() != 2) throw std::invalid_argument("scaled family takes two parameters: scaled:c:p");
    return detail::scaled_power(params[0], params[1],
                                "scaled:" + detail::format_number(params[0]) + ":" +
                                    detail::format_number(params[1]));
  }
  throw UnknownFamily("unknown G1 family '" + family + "'");
}

/// Parses a "family:param[:param]" string, e.g. "power:2".
inline GProfile parse_g(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::vector<double> params =
      colon == std::string::npos ? std::vector<double>{} : detail::split_numbers(spec.substr(colon + 1), spec);
  return builtin_g(family, params);
}

inline PotentialSpec potential_from_g(const GProfile& g, const ModelParams& p) {
  const double k = p.lambda4 * p.lambda4 / 4.0;
  const double l1 = p.lambda1, l2 = p.lambda2;
  PotentialSpec pot;
  pot.V = [g, k, l1, l2](double u) {
    const double g0 = g.g(u), g1 = g.gprime(u);
    return k * (g1 * g1 / l1 + g0 * g0 / l2);
  };
  pot.Vprime = [g, k, l1, l2](double u) {
    const double g0 = g.g(u), g1 = g.gprime(u), g2 = g.gsecond(u);
    return k * (2.0 * g1 * g2 / l1 + 2.0 * g0 * g1 / l2);
  };
  pot.origin = PotentialOrigin::FromG1;
  return pot;
}

/// Uniform samples of [0, 2] including both endpoints.
inline std::vector<double> u_samples(int nsamples) {
  if (nsamples < 2) throw std::invalid_argument("need at least 2 samples");
  std::vector<double> u(static_cast<std::size_t>(nsamples));
  for (int k = 0; k < nsamples; ++k) u[std::size_t(k)] = 2.0 * double(k) / double(nsamples - 1);
  return u;
}

/// Max over uniform samples of |V(u) - (lambda4^2/4)(G1'^2/lambda1 + G1^2/lambda2)|.
inline double check_condition(const PotentialSpec& pot, const GProfile& g, const ModelParams& p, int nsamples) {
  const double k = p.lambda4 * p.lambda4 / 4.0;
  double worst = 0;
  for (double u : u_samples(nsamples)) {
    const double g0 = g.g(u), g1 = g.gprime(u);
    worst = std::max(worst, std::abs(pot.V(u) - k * (g1 * g1 / p.lambda1 + g0 * g0 / p.lambda2)));
  }
  return worst;
}

}  // namespace bps
