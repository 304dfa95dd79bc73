// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "tcfem/errors.hpp"

namespace tcfem {

using ScalarFunction = std::function<double(double)>;

// Description of one initial-value problem u'' + mu*u = f on (0, T) with
// u(0) = u'(0) = 0. A problem may carry a pointwise source f, an exact
// solution pair (u, u'), or both; which right-hand-side assembly strategies
// apply depends on what is present.
struct ProblemSpec {
  double mu = 0.0;
  double horizon = 1.0;
  ScalarFunction f;         // pointwise source, empty if not square-integrable
  ScalarFunction exact_u;   // known solution, empty if unavailable
  ScalarFunction exact_du;  // its derivative
  bool singular_at_end = false;  // derivative blows up algebraically at t = T
  std::string name = "custom";

  bool has_manufactured() const { return static_cast<bool>(exact_u) && static_cast<bool>(exact_du); }
  bool has_pointwise_f() const { return static_cast<bool>(f); }
};

inline void validate(const ProblemSpec& spec) {
  if (!std::isfinite(spec.mu) || spec.mu < 0.0)
    throw std::invalid_argument("problem: mu must be finite and >= 0");
  if (!(spec.horizon > 0.0) || !std::isfinite(spec.horizon))
    throw std::invalid_argument("problem: horizon must be positive and finite");
  if (!spec.has_manufactured() && !spec.has_pointwise_f())
    throw std::invalid_argument("problem: need an exact solution or a pointwise source");
  if (spec.has_manufactured()) {
    if (std::abs(spec.exact_u(0.0)) > 1e-12 || std::abs(spec.exact_du(0.0)) > 1e-12)
      throw constraint_error("problem: exact solution must satisfy u(0) = u'(0) = 0");
  }
}

// u(t) = t^2 (T-t)^{3/4}; u' has a (T-t)^{-1/4} singularity and the source
// is not square-integrable, so only the manufactured assembly path applies.
inline ProblemSpec make_singular_problem(double mu, double horizon = 1.0) {
  ProblemSpec spec;
  spec.mu = mu;
  spec.horizon = horizon;
  spec.exact_u = [horizon](double t) {
    return t * t * std::pow(horizon - t, 0.75);
  };
  spec.exact_du = [horizon](double t) {
    return 2.0 * t * std::pow(horizon - t, 0.75) -
           0.75 * t * t * std::pow(horizon - t, -0.25);
  };
  spec.singular_at_end = true;
  spec.name = "singular";
  return spec;
}

// u(t) = t^2 with f = 2 + mu t^2; smooth benchmark with known rates.
inline ProblemSpec make_quadratic_problem(double mu, double horizon = 1.0) {
  ProblemSpec spec;
  spec.mu = mu;
  spec.horizon = horizon;
  spec.f = [mu](double t) { return 2.0 + mu * t * t; };
  spec.exact_u = [](double t) { return t * t; };
  spec.exact_du = [](double t) { return 2.0 * t; };
  spec.name = "quadratic";
  return spec;
}

// f = 1 with exact solution (1 - cos(sqrt(mu) t))/mu for mu > 0. For mu = 0
// only the source is provided.
inline ProblemSpec make_constant_f_problem(double mu, double horizon = 1.0) {
  ProblemSpec spec;
  spec.mu = mu;
  spec.horizon = horizon;
  spec.f = [](double) { return 1.0; };
  if (mu > 0.0) {
    const double omega = std::sqrt(mu);
    spec.exact_u = [mu, omega](double t) { return (1.0 - std::cos(omega * t)) / mu; };
    spec.exact_du = [omega](double t) { return std::sin(omega * t) / omega; };
  }
  spec.name = "constant-f";
  return spec;
}

}  // namespace tcfem
