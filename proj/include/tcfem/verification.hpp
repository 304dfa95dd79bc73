// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tcfem/assembly.hpp"
#include "tcfem/mesh.hpp"
#include "tcfem/problem.hpp"
#include "tcfem/quadrature.hpp"
#include "tcfem/study.hpp"
#include "tcfem/transform.hpp"

namespace tcfem {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace verify {

using Rng = std::mt19937_64;

namespace detail {

inline FemFunction random_fem_function(Rng& rng, int max_elements = 10,
                                       double horizon = 1.0) {
  std::uniform_int_distribution<int> pick_n(2, max_elements);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const int n = pick_n(rng);
  std::vector<double> c(n);
  for (double& v : c) v = coeff(rng);
  return FemFunction(Mesh1D(horizon, n), std::move(c));
}

inline double log_uniform(Rng& rng, double lo_exp, double hi_exp) {
  std::uniform_real_distribution<double> u(lo_exp, hi_exp);
  return std::pow(10.0, u(rng));
}

// Piecewise-constant function on (0, horizon) with interior breakpoints.
struct StepFunction {
  std::vector<double> breaks;  // ascending, strictly inside (0, horizon)
  std::vector<double> values;  // breaks.size() + 1 pieces
  double horizon = 1.0;

  double operator()(double t) const {
    std::size_t i = 0;
    while (i < breaks.size() && t >= breaks[i]) ++i;
    return values[i];
  }

  std::vector<double> grid() const {
    std::vector<double> g;
    g.push_back(0.0);
    g.insert(g.end(), breaks.begin(), breaks.end());
    g.push_back(horizon);
    return g;
  }
};

inline StepFunction random_step_function(Rng& rng, double horizon = 1.0) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> pos(0.05 * horizon, 0.95 * horizon);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  StepFunction f;
  f.horizon = horizon;
  const int nb = pick(rng);
  for (int i = 0; i < nb; ++i) f.breaks.push_back(pos(rng));
  std::sort(f.breaks.begin(), f.breaks.end());
  f.values.resize(nb + 1);
  for (double& v : f.values) v = val(rng);
  return f;
}

// Exact int_t^T w(s) ds for a piecewise-linear w.
inline double integral_to_horizon(const FemFunction& w, double t) {
  const Mesh1D& mesh = w.mesh();
  double sum = 0.0;
  for (int k = mesh.element_of(t); k < mesh.elements(); ++k) {
    const double lo = std::max(mesh.node(k), t);
    const double hi = mesh.node(k + 1);
    if (!(lo < hi)) continue;
    const double beta = w.slope(k);
    const double alpha = w.node_value(k) - beta * mesh.node(k);
    sum += alpha * (hi - lo) + 0.5 * beta * (hi * hi - lo * lo);
  }
  return sum;
}

// int_a^b g with panels fine enough for frequency omega.
inline double integrate_resolving(const Integrand& g, double a, double b,
                                  double omega) {
  return integrate_panels(g, a, b, oscillation_panels(omega, b - a), 8);
}

// int_t^T (T_mu w)(s) ds, split at the element boundaries where the
// transformed function has kinks.
inline double integral_of_transform_to_horizon(const FemFunction& w, double mu,
                                               double t) {
  const Mesh1D& mesh = w.mesh();
  const double omega = std::sqrt(mu);
  double sum = 0.0;
  for (int k = mesh.element_of(t); k < mesh.elements(); ++k) {
    const double lo = std::max(mesh.node(k), t);
    const double hi = mesh.node(k + 1);
    if (!(lo < hi)) continue;
    sum += integrate_resolving(
        [&](double s) { return transform_value(w, mu, s); }, lo, hi, omega);
  }
  return sum;
}

// b_mu(u, T_mu w) evaluated by quadrature (no closed-form shortcuts), the
// oracle side of the coercivity and symmetry identities.
inline double bmu_against_transform(const FemFunction& u, const FemFunction& w,
                                    double mu) {
  const Mesh1D& mesh = u.mesh();
  const double omega = std::sqrt(mu);
  double sum = 0.0;
  for (int k = 0; k < mesh.elements(); ++k) {
    auto g = [&](double t) {
      return -u.slope(k) * transform_derivative(w, mu, t) +
             mu * u.value(t) * transform_value(w, mu, t);
    };
    sum += integrate_resolving(g, mesh.node(k), mesh.node(k + 1), omega);
  }
  return sum;
}

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

struct MaxTracker {
  double worst = 0.0;
  void update(double v) { worst = std::max(worst, v); }
};

}  // namespace detail

inline CheckResult check_gauss_weights() {
  detail::MaxTracker worst;
  bool ok = true;
  for (int order = 1; order <= kMaxGaussOrder; ++order) {
    const auto& rule = gauss_nodes(order);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const auto& [x, w] = rule[i];
      sum += w;
      ok = ok && w > 0.0 && x > -1.0 && x < 1.0;
      ok = ok && std::abs(x + rule[rule.size() - 1 - i].node) < 1e-14;
    }
    worst.update(std::abs(sum - 2.0));
  }
  ok = ok && worst.worst < 1e-13;
  return {"gauss-weights", ok,
          "max |sum(w) - 2| = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_gauss_exactness() {
  detail::MaxTracker worst;
  for (int order : {1, 2, 3, 5, 8, 13, 21, 32}) {
    const QuadratureScheme scheme{order, 0, 0.5};
    for (int k = 0; k <= 2 * order - 1; ++k) {
      const double got =
          integrate([k](double t) { return std::pow(t, k); }, 0.0, 1.0, scheme);
      worst.update(std::abs(got - 1.0 / (k + 1)) * (k + 1));
    }
  }
  return {"gauss-polynomial-exactness", worst.worst < 1e-13,
          "max relative defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_quadrature_additivity(Rng& rng) {
  std::uniform_real_distribution<double> split(0.1, 0.9);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const double a2 = coeff(rng), a1 = coeff(rng), a0 = coeff(rng), s = coeff(rng);
    auto g = [=](double t) { return a2 * t * t + a1 * t + a0 + s * std::sin(3.0 * t); };
    const double c = split(rng);
    const double whole = integrate(g, 0.0, 1.0);
    const double left = integrate(g, 0.0, c);
    const double right = integrate(g, c, 1.0);
    // scale by the pieces: the sum itself may cancel to zero
    worst.update(std::abs(whole - (left + right)) /
                 (std::abs(left) + std::abs(right) + 1e-6));
  }
  return {"quadrature-additivity", worst.worst < 1e-13,
          "max relative defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_quadrature_linearity(Rng& rng) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const double al = coeff(rng), be = coeff(rng);
    auto g = [](double t) { return std::sin(2.0 * t) + t; };
    auto p = [](double t) { return std::cos(t) - t * t; };
    auto combo = [&](double t) { return al * g(t) + be * p(t); };
    const double lhs = integrate(combo, 0.0, 1.0);
    const double ig = integrate(g, 0.0, 1.0);
    const double ip = integrate(p, 0.0, 1.0);
    const double scale = std::abs(al * ig) + std::abs(be * ip) + 1e-6;
    worst.update(std::abs(lhs - (al * ig + be * ip)) / scale);
  }
  return {"quadrature-linearity", worst.worst < 1e-13,
          "max relative defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_graded_accuracy() {
  const QuadratureScheme scheme{};  // order 8, depth 50, ratio 1/2
  const double e1 = std::abs(
      integrate_graded([](double t) { return std::pow(1.0 - t, -0.5); }, 0.0, 1.0,
                       SingularEnd::right, scheme) -
      2.0);
  const double e2 = std::abs(
      integrate_graded([](double t) { return std::pow(1.0 - t, -0.25); }, 0.0, 1.0,
                       SingularEnd::right, scheme) -
      4.0 / 3.0);
  const double e3 = std::abs(
      integrate_graded([](double t) { return t * t; }, 0.0, 1.0,
                       SingularEnd::right, scheme) -
      1.0 / 3.0);
  const double e4 = std::abs(
      integrate_graded([](double t) { return std::pow(t, -0.5); }, 0.0, 1.0,
                       SingularEnd::left, scheme) -
      2.0);
  const bool ok = e1 < 1e-10 && e2 < 1e-10 && e3 < 1e-12 && e4 < 1e-10;
  return {"graded-endpoint-accuracy", ok,
          "errors " + detail::fmt_double(e1) + ", " + detail::fmt_double(e2) +
              ", " + detail::fmt_double(e3) + ", " + detail::fmt_double(e4)};
}

inline CheckResult check_graded_depth_stability() {
  auto g = [](double t) { return std::pow(1.0 - t, -0.25); };
  const double v50 =
      integrate_graded(g, 0.0, 1.0, SingularEnd::right, QuadratureScheme{8, 50, 0.5});
  const double v100 =
      integrate_graded(g, 0.0, 1.0, SingularEnd::right, QuadratureScheme{8, 100, 0.5});
  const double diff = std::abs(v100 - v50);
  return {"graded-depth-stability", diff < 1e-10,
          "|depth 100 - depth 50| = " + detail::fmt_double(diff)};
}

inline CheckResult check_partition_of_unity(Rng& rng) {
  std::uniform_int_distribution<int> pick_n(1, 16);
  std::uniform_real_distribution<double> pick_t(0.0, 1.0);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = pick_n(rng);
    const Mesh1D mesh(1.0, n);
    const FemFunction ones(mesh, std::vector<double>(n, 1.0));
    const double t = pick_t(rng);
    const double phi0 = std::max(0.0, 1.0 - t / mesh.h());
    worst.update(std::abs(ones.value(t) + phi0 - 1.0));
  }
  return {"partition-of-unity", worst.worst < 1e-14,
          "max defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_interpolation_projection(Rng& rng) {
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const FemFunction w = detail::random_fem_function(rng);
    const FemFunction v =
        interpolate(w.mesh(), [&](double t) { return w.value(t); });
    for (int j = 0; j < w.mesh().elements(); ++j)
      ok = ok && v.coefficients()[j] == w.coefficients()[j];
  }
  return {"interpolation-projection", ok, "nodal values reproduced exactly"};
}

inline CheckResult check_moment_zero_frequency(Rng& rng) {
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = pick(rng);
    const double b = a + pick(rng);
    const double t = pick(rng);
    const TrigMoments m = trig_moments(a, b, t, 0.0);
    worst.update(std::abs(m.c0 - (b - a)));
    worst.update(std::abs(m.s0));
    worst.update(std::abs(m.c1 - 0.5 * (b * b - a * a)));
    worst.update(std::abs(m.s1));
  }
  return {"moment-zero-frequency", worst.worst < 1e-14,
          "max defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_moment_derivative(Rng& rng) {
  std::uniform_real_distribution<double> pick(0.1, 0.9);
  detail::MaxTracker worst;
  const double step = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = pick(rng);
    const double b = a + pick(rng);
    const double t = pick(rng);
    const double omega = detail::log_uniform(rng, -2.0, 1.5);
    const TrigMoments at = trig_moments(a, b, t, omega);
    const TrigMoments up = trig_moments(a, b, t + step, omega);
    const TrigMoments dn = trig_moments(a, b, t - step, omega);
    const double d_c0 = (up.c0 - dn.c0) / (2.0 * step);
    const double d_s0 = (up.s0 - dn.s0) / (2.0 * step);
    worst.update(std::abs(d_c0 + omega * at.s0) / (1.0 + std::abs(omega * at.s0)));
    worst.update(std::abs(d_s0 - omega * at.c0) / (1.0 + std::abs(omega * at.c0)));
  }
  return {"moment-derivative-vs-fd", worst.worst < 1e-6,
          "max defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_moment_branch_seam(Rng& rng) {
  std::uniform_real_distribution<double> pick(0.1, 0.9);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const double a = pick(rng);
    const double width = pick(rng);
    const double b = a + width;
    const double t = pick(rng);
    const double omega = tcfem::detail::kSmallPhase / width;  // seam phase
    const TrigMoments ms = tcfem::detail::trig_moments_impl(a, b, t, omega, true);
    const TrigMoments ma = tcfem::detail::trig_moments_impl(a, b, t, omega, false);
    const double scale = std::abs(ma.c0) + std::abs(ma.s0) + std::abs(ma.c1) +
                         std::abs(ma.s1) + 1e-30;
    worst.update(std::abs(ms.c0 - ma.c0) / scale);
    worst.update(std::abs(ms.s0 - ma.s0) / scale);
    worst.update(std::abs(ms.c1 - ma.c1) / scale);
    worst.update(std::abs(ms.s1 - ma.s1) / scale);
  }
  return {"moment-branch-seam", worst.worst < 1e-13,
          "max relative gap = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_transform_terminal_zero(Rng& rng) {
  bool ok = true;
  for (int trial = 0; trial < 30; ++trial) {
    const FemFunction w = detail::random_fem_function(rng);
    const double mu = detail::log_uniform(rng, -3.0, 5.0);
    ok = ok && transform_value(w, mu, w.mesh().horizon()) == 0.0;
  }
  return {"transform-terminal-zero", ok, "(T_mu w)(T) = 0 exactly"};
}

inline CheckResult check_transform_zero_frequency(Rng& rng) {
  std::uniform_real_distribution<double> pick_t(0.0, 1.0);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const FemFunction w = detail::random_fem_function(rng);
    const double t = pick_t(rng);
    const double wT = w.node_value(w.mesh().elements());
    worst.update(std::abs(transform_value(w, 0.0, t) - (wT - w.value(t))));
    worst.update(std::abs(transform_derivative(w, 0.0, t) + w.derivative(t)));
  }
  return {"transform-zero-frequency", worst.worst < 1e-13,
          "max |T_0 w - (w(T) - w)| = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_transform_linearity(Rng& rng) {
  std::uniform_real_distribution<double> pick_t(0.0, 1.0);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<int> pick_n(2, 10);
  detail::MaxTracker worst;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = pick_n(rng);
    const Mesh1D mesh(1.0, n);
    std::vector<double> cu(n), cv(n);
    for (int i = 0; i < n; ++i) {
      cu[i] = coeff(rng);
      cv[i] = coeff(rng);
    }
    const double al = coeff(rng), be = coeff(rng);
    std::vector<double> cc(n);
    for (int i = 0; i < n; ++i) cc[i] = al * cu[i] + be * cv[i];
    const FemFunction u(mesh, cu), v(mesh, cv), combo(mesh, cc);
    const double mu = detail::log_uniform(rng, -2.0, 3.0);
    const double t = pick_t(rng);
    const double lhs = transform_value(combo, mu, t);
    const double rhs = al * transform_value(u, mu, t) + be * transform_value(v, mu, t);
    worst.update(std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
  }
  return {"transform-linearity", worst.worst < 1e-12,
          "max relative defect = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_transform_derivative_fd(Rng& rng) {
  detail::MaxTracker worst;
  const double step = 1e-6;
  std::uniform_real_distribution<double> inner(0.2, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const FemFunction w = detail::random_fem_function(rng);
    const double mu = detail::log_uniform(rng, -2.0, 2.0);
    // keep the stencil strictly inside one element
    const int k = std::uniform_int_distribution<int>(0, w.mesh().elements() - 1)(rng);
    const double t = w.mesh().node(k) + inner(rng) * w.mesh().h();
    const double fd =
        (transform_value(w, mu, t + step) - transform_value(w, mu, t - step)) /
        (2.0 * step);
    const double exact = transform_derivative(w, mu, t);
    worst.update(std::abs(fd - exact) / (1.0 + std::abs(exact)));
  }
  return {"transform-derivative-vs-fd", worst.worst < 1e-6,
          "max defect = " + detail::fmt_double(worst.worst)};
}

// Acceptance: Re(C_mu w) must equal the real transformation pointwise.
inline CheckResult check_complex_real_match(Rng& rng, int samples = 100) {
  std::uniform_real_distribution<double> pick_t(0.0, 1.0);
  detail::MaxTracker worst;
  for (int trial = 0; trial < samples; ++trial) {
    const FemFunction w = detail::random_fem_function(rng);
    const double mu = detail::log_uniform(rng, -2.0, 6.0);
    const double t = pick_t(rng);
    const double re = complex_transform(w, mu, t).real();
    worst.update(std::abs(re - transform_value(w, mu, t)));
  }
  return {"complex-real-consistency", worst.worst < 1e-12,
          "max |Re(C_mu w) - T_mu w| = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_complex_edge_cases(Rng& rng) {
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const FemFunction w = detail::random_fem_function(rng);
    const double mu = detail::log_uniform(rng, -2.0, 4.0);
    const auto at_end = complex_transform(w, mu, w.mesh().horizon());
    ok = ok && at_end.real() == 0.0 && at_end.imag() == 0.0;
    const FemFunction zero(w.mesh(),
                           std::vector<double>(w.mesh().elements(), 0.0));
    const auto z = complex_transform(zero, mu, 0.3);
    ok = ok && z.real() == 0.0 && z.imag() == 0.0;
  }
  return {"complex-edge-cases", ok, "terminal and zero-input values vanish"};
}

// Acceptance: the defining identity of the transformation against test
// densities q, integrated over (0, T).
inline CheckResult check_transform_identity(Rng& rng, int samples = 100) {
  detail::MaxTracker worst;
  for (int trial = 0; trial < samples; ++trial) {
    const FemFunction u = detail::random_fem_function(rng, 6);
    const detail::StepFunction q = detail::random_step_function(rng);
    const double mu = detail::log_uniform(rng, -2.0, 3.0);
    const double omega = std::sqrt(mu);
    const Mesh1D& mesh = u.mesh();

    std::vector<double> grid = q.grid();
    for (double node : mesh.nodes()) grid.push_back(node);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double qa = grid[i], qb = grid[i + 1];
      if (!(qa < qb)) continue;
      const double qv = q(0.5 * (qa + qb));
      auto lhs_integrand = [&](double t) {
        const double inner = detail::integral_of_transform_to_horizon(u, mu, t);
        return (-transform_derivative(u, mu, t) + mu * inner) * qv;
      };
      auto rhs_integrand = [&](double t) {
        return (u.derivative(t) + mu * detail::integral_to_horizon(u, t)) * qv;
      };
      lhs += detail::integrate_resolving(lhs_integrand, qa, qb, omega);
      rhs += integrate_panels(rhs_integrand, qa, qb, 2, 8);
    }
    worst.update(std::abs(lhs - rhs) / (std::max(std::abs(lhs), std::abs(rhs)) + 1e-12));
  }
  return {"transform-identity-vs-densities", worst.worst < 1e-9,
          "max relative gap = " + detail::fmt_double(worst.worst)};
}

// Acceptance: swapping the order of the nested integrals is exact.
inline CheckResult check_ibp_swap(Rng& rng, int samples = 100) {
  detail::MaxTracker worst;
  for (int trial = 0; trial < samples; ++trial) {
    const detail::StepFunction p = detail::random_step_function(rng);
    const detail::StepFunction q = detail::random_step_function(rng);
    std::vector<double> grid = p.grid();
    for (double b : q.breaks) grid.push_back(b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const std::size_t m = grid.size() - 1;

    // cumulative Q(t) = int_0^t q and P(t) = int_t^T p on the joint grid
    std::vector<double> bigq(m + 1, 0.0), bigp(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double w = grid[i + 1] - grid[i];
      bigq[i + 1] = bigq[i] + w * q(grid[i] + 0.5 * w);
    }
    for (std::size_t i = m; i-- > 0;) {
      const double w = grid[i + 1] - grid[i];
      bigp[i] = bigp[i + 1] + w * p(grid[i] + 0.5 * w);
    }
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = grid[i + 1] - grid[i];
      const double mid = grid[i] + 0.5 * w;
      lhs += p(mid) * 0.5 * (bigq[i] + bigq[i + 1]) * w;
      rhs += q(mid) * 0.5 * (bigp[i] + bigp[i + 1]) * w;
    }
    worst.update(std::abs(lhs - rhs) / (std::max(std::abs(lhs), std::abs(rhs)) + 1e-12));
  }
  return {"nested-integral-swap", worst.worst < 1e-12,
          "max relative gap = " + detail::fmt_double(worst.worst)};
}

// ||(T_mu u)'|| <= (1 + T sqrt(mu/2)) ||u||_{H^1_mu}, the seminorm form of
// the operator bound.
inline CheckResult check_derivative_bound(Rng& rng) {
  detail::MaxTracker worst_ratio;
  for (int trial = 0; trial < 60; ++trial) {
    const FemFunction u = detail::random_fem_function(rng, 8);
    const double mu = detail::log_uniform(rng, -3.0, 4.0);
    const double omega = std::sqrt(mu);
    const Mesh1D& mesh = u.mesh();
    double norm_sq = 0.0;
    for (int k = 0; k < mesh.elements(); ++k) {
      auto g = [&](double t) {
        const double d = transform_derivative(u, mu, t);
        return d * d;
      };
      norm_sq += detail::integrate_resolving(g, mesh.node(k), mesh.node(k + 1), omega);
    }
    const double lhs = std::sqrt(norm_sq);
    const double rhs =
        (1.0 + mesh.horizon() * std::sqrt(mu / 2.0)) * norm_H1mu(u, mu);
    worst_ratio.update(lhs / rhs);
  }
  return {"transform-derivative-bound", worst_ratio.worst <= 1.0 + 1e-10,
          "max ratio = " + detail::fmt_double(worst_ratio.worst)};
}

// Acceptance: b_mu(u, T_mu u) computed by quadrature equals the energy norm
// squared, u^T (K + mu M) u.
inline CheckResult check_coercivity_identity(Rng& rng, int functions = 200) {
  detail::MaxTracker worst;
  const std::vector<double> mus = {1e-3, 1.0, 1e3, 1e6};
  for (int trial = 0; trial < functions; ++trial) {
    const FemFunction u = detail::random_fem_function(rng, 8);
    const double mu = mus[trial % mus.size()];
    const double quadratured = detail::bmu_against_transform(u, u, mu);
    const double energy = norm_H1mu(u, mu);
    const double exact = energy * energy;
    worst.update(std::abs(quadratured - exact) / exact);
  }
  return {"coercivity-identity", worst.worst < 1e-8,
          "max relative gap = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_bmu_symmetry(Rng& rng) {
  detail::MaxTracker worst;
  const std::vector<double> mus = {1e-3, 1.0, 1e3};
  for (int trial = 0; trial < 45; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const Mesh1D mesh(1.0, n);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> cu(n), cw(n);
    for (int i = 0; i < n; ++i) {
      cu[i] = coeff(rng);
      cw[i] = coeff(rng);
    }
    const FemFunction u(mesh, cu), w(mesh, cw);
    const double mu = mus[trial % mus.size()];
    const double ab = detail::bmu_against_transform(u, w, mu);
    const double ba = detail::bmu_against_transform(w, u, mu);
    worst.update(std::abs(ab - ba) / (std::max(std::abs(ab), std::abs(ba)) + 1e-12));
  }
  return {"bilinear-symmetry-after-transform", worst.worst < 1e-8,
          "max relative gap = " + detail::fmt_double(worst.worst)};
}

// Acceptance: the three load-vector strategies agree for smooth sources.
inline CheckResult check_rhs_equivalence() {
  detail::MaxTracker worst;
  const QuadratureScheme scheme{};
  for (double mu : {1.0, 100.0}) {
    for (const ProblemSpec& spec :
         {make_quadratic_problem(mu), make_constant_f_problem(mu)}) {
      const Mesh1D mesh(spec.horizon, 64);
      const LoadVector a = assemble_rhs_manufactured(spec, mesh, scheme);
      const LoadVector b = assemble_rhs_kernel(spec, mesh, scheme);
      const LoadVector c = assemble_rhs_direct(spec, mesh, scheme);
      double scale = 0.0;
      for (double v : a.values) scale = std::max(scale, std::abs(v));
      for (int i = 0; i < mesh.elements(); ++i) {
        worst.update(std::abs(a.values[i] - b.values[i]) / scale);
        worst.update(std::abs(a.values[i] - c.values[i]) / scale);
        worst.update(std::abs(b.values[i] - c.values[i]) / scale);
      }
    }
  }
  return {"rhs-three-path-equivalence", worst.worst < 1e-8,
          "max relative gap = " + detail::fmt_double(worst.worst)};
}

inline CheckResult check_spd(Rng& rng) {
  bool ok = true;
  for (double mu : {0.0, 1e-3, 1.0, 1e3, 1e6, 1e9}) {
    const int n = std::uniform_int_distribution<int>(1, 40)(rng);
    ok = ok && is_positive_definite(system_matrix(Mesh1D(1.0, n), mu));
  }
  return {"system-matrix-spd", ok, "Cholesky pivots positive for all mu"};
}

inline CheckResult check_solver_residual(Rng& rng) {
  detail::MaxTracker worst;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 50)(rng);
    const double mu = detail::log_uniform(rng, -3.0, 6.0);
    const Mesh1D mesh(1.0, n);
    const TridiagonalMatrix a = system_matrix(mesh, mu);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<double> f(n);
    for (double& v : f) v = val(rng);
    const std::vector<double> x = solve_tridiagonal(a, f);
    const std::vector<double> ax = a.multiply(x);
    double rnorm = 0.0, fnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      rnorm = std::max(rnorm, std::abs(ax[i] - f[i]));
      fnorm = std::max(fnorm, std::abs(f[i]));
    }
    worst.update(rnorm / (fnorm + 1e-300));
  }
  return {"solver-residual", worst.worst < 1e-10,
          "max ||Ax - f||/||f|| = " + detail::fmt_double(worst.worst)};
}

// Galerkin optimality: the discrete solution beats the nodal interpolant in
// the energy norm (it is the energy projection).
inline CheckResult check_galerkin_optimality() {
  const QuadratureScheme scheme{};
  detail::MaxTracker worst_ratio;
  for (double mu : {1.0, 100.0}) {
    for (const ProblemSpec& spec :
         {make_quadratic_problem(mu), make_constant_f_problem(mu)}) {
      const Mesh1D mesh(spec.horizon, 32);
      const FemFunction u_h =
          solve_problem(spec, mesh, RhsMode::manufactured, scheme);
      const FemFunction i_h = interpolate(mesh, spec.exact_u);
      auto energy_error = [&](const FemFunction& v) {
        const double l2 = error_L2(v, spec, scheme);
        const double h1 = error_H1_semi(v, spec, scheme);
        return std::sqrt(h1 * h1 + mu * l2 * l2);
      };
      worst_ratio.update(energy_error(u_h) / energy_error(i_h));
    }
  }
  return {"galerkin-optimality", worst_ratio.worst <= 1.0 + 1e-8,
          "max error ratio vs interpolant = " + detail::fmt_double(worst_ratio.worst)};
}

// Acceptance: discrete solutions obey the mu-independent stability bound.
inline CheckResult check_stability_bound() {
  const std::vector<double> mus = {1.0, 1e3, 1e6};
  bool ok = true;
  double worst_margin = 0.0;
  for (const auto& [name, f] :
       std::vector<std::pair<std::string, ScalarFunction>>{
           {"one", [](double) { return 1.0; }},
           {"two-plus-t2", [](double t) { return 2.0 + t * t; }}}) {
    const auto rows = stability_check(f, 1.0, mus, 256);
    for (const auto& row : rows) {
      ok = ok && row.pass && row.norm < row.bound;
      worst_margin = std::max(worst_margin, row.norm / row.bound);
    }
  }
  return {"stability-bound", ok,
          "max ||u_h||/bound = " + detail::fmt_double(worst_margin)};
}

// Acceptance: against the variation-of-constants solution for f = 1, mu = 4.
inline CheckResult check_duhamel_consistency() {
  ProblemSpec spec = make_constant_f_problem(4.0);
  const QuadratureScheme scheme{};
  double prev = 0.0;
  bool monotone = true;
  double final_err = 0.0;
  for (int n : {128, 512}) {
    const Mesh1D mesh(spec.horizon, n);
    const FemFunction u_h = solve_problem(spec, mesh, RhsMode::kernel, scheme);
    ProblemSpec against_duhamel = spec;
    against_duhamel.exact_u = [&](double t) {
      return duhamel_reference(spec.f, spec.mu, t, scheme);
    };
    const double err = error_L2(u_h, against_duhamel, scheme);
    if (prev > 0.0) monotone = monotone && err < prev;
    prev = err;
    final_err = err;
  }
  const bool ok = monotone && final_err < 1e-3;
  return {"duhamel-oracle-consistency", ok,
          "L2 gap at N=512: " + detail::fmt_double(final_err)};
}

inline CheckResult check_smooth_rates() {
  const auto report = run_study(
      "quadratic", [](double mu) { return make_quadratic_problem(mu); }, {1.0},
      {8, 16, 32, 64, 128, 256}, RhsMode::manufactured, QuadratureScheme{},
      QuadratureScheme{8, 0, 0.5});
  const auto& rows = report.blocks.front().rows;
  const auto& last = rows.back();
  const bool ok =
      std::abs(last.eoc_L2 - 2.0) <= 0.05 && std::abs(last.eoc_H1 - 1.0) <= 0.05;
  std::ostringstream os;
  os << "final EOCs " << last.eoc_L2 << " (L2), " << last.eoc_H1 << " (H1)";
  return {"smooth-problem-rates", ok, os.str()};
}

inline std::vector<CheckResult> run_verification(std::uint64_t seed,
                                                 bool inject_failure = false) {
  Rng rng(seed);
  std::vector<CheckResult> results;
  results.push_back(check_gauss_weights());
  results.push_back(check_gauss_exactness());
  results.push_back(check_quadrature_additivity(rng));
  results.push_back(check_quadrature_linearity(rng));
  results.push_back(check_graded_accuracy());
  results.push_back(check_graded_depth_stability());
  results.push_back(check_partition_of_unity(rng));
  results.push_back(check_interpolation_projection(rng));
  results.push_back(check_moment_zero_frequency(rng));
  results.push_back(check_moment_derivative(rng));
  results.push_back(check_moment_branch_seam(rng));
  results.push_back(check_transform_terminal_zero(rng));
  results.push_back(check_transform_zero_frequency(rng));
  results.push_back(check_transform_linearity(rng));
  results.push_back(check_transform_derivative_fd(rng));
  results.push_back(check_complex_real_match(rng));
  results.push_back(check_complex_edge_cases(rng));
  results.push_back(check_transform_identity(rng));
  results.push_back(check_ibp_swap(rng));
  results.push_back(check_derivative_bound(rng));
  results.push_back(check_coercivity_identity(rng));
  results.push_back(check_bmu_symmetry(rng));
  results.push_back(check_rhs_equivalence());
  results.push_back(check_spd(rng));
  results.push_back(check_solver_residual(rng));
  results.push_back(check_galerkin_optimality());
  results.push_back(check_stability_bound());
  results.push_back(check_duhamel_consistency());
  results.push_back(check_smooth_rates());
  if (inject_failure)
    results.push_back({"injected-failure", false, "deliberate failure hook"});
  return results;
}

}  // namespace verify
}  // namespace tcfem
