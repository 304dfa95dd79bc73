// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcfem/assembly.hpp"
#include "tcfem/mesh.hpp"
#include "tcfem/problem.hpp"
#include "tcfem/quadrature.hpp"

namespace tcfem {

// Thomas algorithm. The system matrices here are symmetric positive
// definite, so elimination without pivoting is stable.
inline std::vector<double> solve_tridiagonal(const TridiagonalMatrix& a,
                                             const std::vector<double>& rhs) {
  const int n = a.size();
  if (static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("solve_tridiagonal: size mismatch");
  std::vector<double> d(a.diag), r(rhs);
  for (int i = 1; i < n; ++i) {
    if (!(d[i - 1] > 0.0))
      throw singular_matrix_error("solve_tridiagonal: non-positive pivot");
    const double m = a.sub[i - 1] / d[i - 1];
    d[i] -= m * a.super[i - 1];
    r[i] -= m * r[i - 1];
  }
  if (!(d[n - 1] > 0.0))
    throw singular_matrix_error("solve_tridiagonal: non-positive pivot");
  std::vector<double> x(n);
  x[n - 1] = r[n - 1] / d[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (r[i] - a.super[i] * x[i + 1]) / d[i];
  return x;
}

inline FemFunction solve_problem(const ProblemSpec& spec, const Mesh1D& mesh,
                                 RhsMode mode, const QuadratureScheme& scheme = {}) {
  const TridiagonalMatrix a = system_matrix(mesh, spec.mu);
  const LoadVector f = assemble_rhs(spec, mesh, mode, scheme);
  return FemFunction(mesh, solve_tridiagonal(a, f.values));
}

namespace detail {

template <typename LocalError>
double element_error_sq(const Mesh1D& mesh, const ProblemSpec& spec,
                        const QuadratureScheme& scheme, LocalError&& local) {
  double sum = 0.0;
  for (int k = 0; k < mesh.elements(); ++k) {
    const double a = mesh.node(k);
    const double b = mesh.node(k + 1);
    auto g = [&](double t) { return local(k, t); };
    const bool graded = spec.singular_at_end && k == mesh.elements() - 1 &&
                        scheme.grading_depth > 0;
    sum += graded ? integrate_graded(g, a, b, SingularEnd::right, scheme)
                  : integrate(g, a, b, scheme);
  }
  return sum;
}

}  // namespace detail

// || u - u_h ||_{L^2(0,T)} against the problem's known solution. One Gauss
// panel per element; the terminal element switches to the graded rule when
// the problem is flagged singular and the scheme grades.
inline double error_L2(const FemFunction& u_h, const ProblemSpec& spec,
                       const QuadratureScheme& scheme = {}) {
  if (!spec.exact_u)
    throw std::invalid_argument("error_L2: problem has no known solution");
  const double s = detail::element_error_sq(
      u_h.mesh(), spec, scheme, [&](int /*element*/, double t) {
        const double d = spec.exact_u(t) - u_h.value(t);
        return d * d;
      });
  return std::sqrt(s);
}

// | u - u_h |_{H^1(0,T)} (seminorm of the derivative difference).
inline double error_H1_semi(const FemFunction& u_h, const ProblemSpec& spec,
                            const QuadratureScheme& scheme = {}) {
  if (!spec.exact_du)
    throw std::invalid_argument("error_H1_semi: problem has no known derivative");
  const double s = detail::element_error_sq(
      u_h.mesh(), spec, scheme, [&](int k, double t) {
        const double d = spec.exact_du(t) - u_h.slope(k);
        return d * d;
      });
  return std::sqrt(s);
}

// Energy norm sqrt(||w'||^2 + mu ||w||^2) through the exact P1 matrices.
inline double norm_H1mu(const FemFunction& w, double mu) {
  const TridiagonalMatrix k = assemble_stiffness(w.mesh());
  const TridiagonalMatrix m = assemble_mass(w.mesh());
  return std::sqrt(k.quadratic_form(w.coefficients()) +
                   mu * m.quadratic_form(w.coefficients()));
}

// Experimental order of convergence under mesh halving; empty when a value
// is non-positive and the logarithm is undefined.
inline std::optional<double> eoc(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nullopt;
  return std::log2(e_coarse / e_fine);
}

struct ConvergenceRow {
  int elements = 0;
  double h = 0.0;
  double err_L2 = 0.0;
  double eoc_L2 = 0.0;  // 0.00 on the first refinement level
  double err_H1 = 0.0;
  double eoc_H1 = 0.0;
  double seconds = 0.0;
};

struct MuBlock {
  double mu = 0.0;
  std::vector<ConvergenceRow> rows;
  std::vector<std::string> failures;
};

struct StudyReport {
  std::string problem;
  RhsMode mode = RhsMode::manufactured;
  QuadratureScheme assembly_scheme;
  QuadratureScheme error_scheme;
  std::vector<MuBlock> blocks;
};

using ProblemFactory = std::function<ProblemSpec(double mu)>;

// Assemble/solve/measure over the (mu, N) grid. Row failures are collected
// per block instead of aborting the remaining rows.
inline StudyReport run_study(const std::string& problem_name,
                             const ProblemFactory& factory,
                             const std::vector<double>& mu_list,
                             const std::vector<int>& n_list, RhsMode mode,
                             const QuadratureScheme& assembly_scheme = {},
                             const QuadratureScheme& error_scheme = {5, 0, 0.5}) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      throw std::invalid_argument("run_study: element counts must increase");
  StudyReport report;
  report.problem = problem_name;
  report.mode = mode;
  report.assembly_scheme = assembly_scheme;
  report.error_scheme = error_scheme;
  for (double mu : mu_list) {
    MuBlock block;
    block.mu = mu;
    double prev_l2 = 0.0, prev_h1 = 0.0;
    bool have_prev = false;
    for (int n : n_list) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const ProblemSpec spec = factory(mu);
        const Mesh1D mesh(spec.horizon, n);
        const FemFunction u_h = solve_problem(spec, mesh, mode, assembly_scheme);
        ConvergenceRow row;
        row.elements = n;
        row.h = mesh.h();
        row.err_L2 = error_L2(u_h, spec, error_scheme);
        row.err_H1 = error_H1_semi(u_h, spec, error_scheme);
        if (have_prev) {
          row.eoc_L2 = eoc(prev_l2, row.err_L2).value_or(0.0);
          row.eoc_H1 = eoc(prev_h1, row.err_H1).value_or(0.0);
        }
        prev_l2 = row.err_L2;
        prev_h1 = row.err_H1;
        have_prev = true;
        row.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        block.rows.push_back(row);
      } catch (const std::exception& e) {
        block.failures.push_back("mu=" + std::to_string(mu) +
                                 " N=" + std::to_string(n) + ": " + e.what());
      }
    }
    report.blocks.push_back(std::move(block));
  }
  return report;
}

struct StabilityRow {
  double mu = 0.0;
  double norm = 0.0;   // ||u_h||_{H^1_mu}
  double bound = 0.0;  // T ||f||_{L^2} / sqrt(2)
  bool pass = false;
};

// Checks the mu-independent energy bound ||u_h||_{H^1_mu} <= T ||f|| / sqrt(2)
// on discrete solutions driven by a square-integrable source.
inline std::vector<StabilityRow> stability_check(
    const ScalarFunction& f, double horizon, const std::vector<double>& mu_list,
    int elements, const QuadratureScheme& scheme = {}) {
  const double norm_f = std::sqrt(integrate_panels(
      [&](double t) { return f(t) * f(t); }, 0.0, horizon,
      std::max(64, elements), scheme.gauss_order));
  const double bound = horizon * norm_f / std::sqrt(2.0);
  std::vector<StabilityRow> rows;
  for (double mu : mu_list) {
    ProblemSpec spec;
    spec.mu = mu;
    spec.horizon = horizon;
    spec.f = f;
    spec.name = "stability";
    const Mesh1D mesh(horizon, elements);
    const FemFunction u_h = solve_problem(spec, mesh, RhsMode::kernel, scheme);
    StabilityRow row;
    row.mu = mu;
    row.norm = norm_H1mu(u_h, mu);
    row.bound = bound;
    row.pass = row.norm <= bound * (1.0 + 1e-8);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tcfem
