// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "tcfem/mesh.hpp"
#include "tcfem/problem.hpp"
#include "tcfem/quadrature.hpp"
#include "tcfem/transform.hpp"

namespace tcfem {

// Symmetric tridiagonal matrix on the N free dofs (nodes 1..N).
struct TridiagonalMatrix {
  std::vector<double> sub;    // length N-1
  std::vector<double> diag;   // length N
  std::vector<double> super;  // length N-1

  int size() const { return static_cast<int>(diag.size()); }

  std::vector<double> multiply(const std::vector<double>& x) const {
    const int n = size();
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
      y[i] = diag[i] * x[i];
      if (i > 0) y[i] += sub[i - 1] * x[i - 1];
      if (i < n - 1) y[i] += super[i] * x[i + 1];
    }
    return y;
  }

  double quadratic_form(const std::vector<double>& x) const {
    const int n = size();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += diag[i] * x[i] * x[i];
      if (i < n - 1) s += 2.0 * super[i] * x[i] * x[i + 1];
    }
    return s;
  }
};

// K_ij = int phi_i' phi_j'; closed form for hat functions on a uniform mesh.
inline TridiagonalMatrix assemble_stiffness(const Mesh1D& mesh) {
  const int n = mesh.elements();
  const double h = mesh.h();
  TridiagonalMatrix k;
  k.diag.assign(n, 2.0 / h);
  k.diag[n - 1] = 1.0 / h;  // terminal node sees one element only
  k.sub.assign(n - 1, -1.0 / h);
  k.super = k.sub;
  return k;
}

// M_ij = int phi_i phi_j.
inline TridiagonalMatrix assemble_mass(const Mesh1D& mesh) {
  const int n = mesh.elements();
  const double h = mesh.h();
  TridiagonalMatrix m;
  m.diag.assign(n, 2.0 * h / 3.0);
  m.diag[n - 1] = h / 3.0;
  m.sub.assign(n - 1, h / 6.0);
  m.super = m.sub;
  return m;
}

// K + mu*M, the Galerkin-Bubnov system matrix of the transformed formulation.
inline TridiagonalMatrix system_matrix(const Mesh1D& mesh, double mu) {
  TridiagonalMatrix a = assemble_stiffness(mesh);
  const TridiagonalMatrix m = assemble_mass(mesh);
  for (int i = 0; i < a.size(); ++i) a.diag[i] += mu * m.diag[i];
  for (int i = 0; i + 1 < a.size(); ++i) {
    a.sub[i] += mu * m.sub[i];
    a.super[i] += mu * m.super[i];
  }
  return a;
}

// All pivots of the LDL^T factorization positive?
inline bool is_positive_definite(const TridiagonalMatrix& a) {
  const int n = a.size();
  double pivot = a.diag[0];
  if (!(pivot > 0.0)) return false;
  for (int i = 1; i < n; ++i) {
    pivot = a.diag[i] - a.sub[i - 1] * a.super[i - 1] / pivot;
    if (!(pivot > 0.0)) return false;
  }
  return true;
}

enum class RhsMode { manufactured, kernel, direct };

inline std::string to_string(RhsMode mode) {
  switch (mode) {
    case RhsMode::manufactured: return "manufactured";
    case RhsMode::kernel: return "kernel";
    case RhsMode::direct: return "direct";
  }
  return "?";
}

struct LoadVector {
  std::vector<double> values;
  RhsMode provenance;
};

// F_j = <u', phi_j'> + mu <u, phi_j> evaluated with the known solution.
// This equals <f, T_mu phi_j> for the exact data and stays valid when f is
// only a distribution, which is why it is the default for the singular
// benchmark. The element touching a flagged singular endpoint is integrated
// with the graded rule.
inline LoadVector assemble_rhs_manufactured(const ProblemSpec& spec,
                                            const Mesh1D& mesh,
                                            const QuadratureScheme& scheme = {}) {
  validate(spec);
  if (!spec.has_manufactured())
    throw std::invalid_argument(
        "assemble_rhs_manufactured: problem has no exact solution pair");
  const int n = mesh.elements();
  const double h = mesh.h();
  const double mu = spec.mu;
  const int osc = oscillation_panels(std::sqrt(mu), h);
  std::vector<double> f(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double a = mesh.node(k);
    const double b = mesh.node(k + 1);
    const bool graded =
        spec.singular_at_end && k == n - 1 && scheme.grading_depth > 0;
    auto right = [&](double t) {
      return spec.exact_du(t) / h + mu * spec.exact_u(t) * (t - a) / h;
    };
    auto left = [&](double t) {
      return -spec.exact_du(t) / h + mu * spec.exact_u(t) * (b - t) / h;
    };
    if (graded) {
      f[k] += integrate_graded(right, a, b, SingularEnd::right, scheme);
      if (k >= 1)
        f[k - 1] += integrate_graded(left, a, b, SingularEnd::right, scheme);
    } else {
      f[k] += integrate_panels(right, a, b, osc, scheme.gauss_order);
      if (k >= 1) f[k - 1] += integrate_panels(left, a, b, osc, scheme.gauss_order);
    }
  }
  return {std::move(f), RhsMode::manufactured};
}

// F_j = int_0^T [phi_j'(t) C(t,f) + sqrt(mu) phi_j(t) S(t,f)] dt with the
// convolution kernels evaluated by nested quadrature. Requires f in L^2.
inline LoadVector assemble_rhs_kernel(const ProblemSpec& spec, const Mesh1D& mesh,
                                      const QuadratureScheme& scheme = {}) {
  validate(spec);
  if (!spec.has_pointwise_f())
    throw std::invalid_argument("assemble_rhs_kernel: problem has no pointwise source");
  if (spec.singular_at_end)
    std::cerr << "tcfem: warning: kernel assembly on a problem flagged singular; "
                 "the source may not be square-integrable\n";
  const int n = mesh.elements();
  const double h = mesh.h();
  const double mu = spec.mu;
  const double omega = std::sqrt(mu);
  const int panels = std::max(2, oscillation_panels(omega, h));
  const auto& rule = gauss_nodes(scheme.gauss_order);
  std::vector<double> f(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double a = mesh.node(k);
    const double b = mesh.node(k + 1);
    const double pw = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * pw;
      for (const auto& [x, wq] : rule) {
        const double t = mid + 0.5 * pw * x;
        const double weight = 0.5 * pw * wq;
        const double cv = cos_kernel(spec.f, mu, t, scheme);
        const double sv = sin_kernel(spec.f, mu, t, scheme);
        f[k] += weight * (cv / h + omega * ((t - a) / h) * sv);
        if (k >= 1) f[k - 1] += weight * (-cv / h + omega * ((b - t) / h) * sv);
      }
    }
  }
  return {std::move(f), RhsMode::kernel};
}

// F_j = int_0^T f(t) (T_mu phi_j)(t) dt with the transformed hat evaluated
// in closed form. Requires f in L^2.
inline LoadVector assemble_rhs_direct(const ProblemSpec& spec, const Mesh1D& mesh,
                                      const QuadratureScheme& scheme = {}) {
  validate(spec);
  if (!spec.has_pointwise_f())
    throw std::invalid_argument("assemble_rhs_direct: problem has no pointwise source");
  if (spec.singular_at_end)
    std::cerr << "tcfem: warning: direct assembly on a problem flagged singular; "
                 "the source may not be square-integrable\n";
  const int n = mesh.elements();
  const double mu = spec.mu;
  const int osc = oscillation_panels(std::sqrt(mu), mesh.h());
  std::vector<double> f(n, 0.0);
  for (int j = 1; j <= n; ++j) {
    // T_mu phi_j vanishes for t >= t_{j+1}.
    const int last = std::min(j, n - 1);
    double sum = 0.0;
    for (int k = 0; k <= last; ++k) {
      auto g = [&](double t) {
        return spec.f(t) * transform_hat_value(mesh, j, mu, t);
      };
      sum += integrate_panels(g, mesh.node(k), mesh.node(k + 1), osc,
                              scheme.gauss_order);
    }
    f[j - 1] = sum;
  }
  return {std::move(f), RhsMode::direct};
}

inline LoadVector assemble_rhs(const ProblemSpec& spec, const Mesh1D& mesh,
                               RhsMode mode, const QuadratureScheme& scheme = {}) {
  switch (mode) {
    case RhsMode::manufactured: return assemble_rhs_manufactured(spec, mesh, scheme);
    case RhsMode::kernel: return assemble_rhs_kernel(spec, mesh, scheme);
    case RhsMode::direct: return assemble_rhs_direct(spec, mesh, scheme);
  }
  throw std::invalid_argument("assemble_rhs: unknown mode");
}

}  // namespace tcfem
