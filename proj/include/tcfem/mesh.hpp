// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "tcfem/errors.hpp"

namespace tcfem {

// Uniform partition of (0, T) into N elements of size h = T/N.
class Mesh1D {
public:
  Mesh1D(double horizon, int elements) : horizon_(horizon), elements_(elements) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
      throw std::invalid_argument("Mesh1D: horizon must be positive and finite");
    if (elements < 1)
      throw std::invalid_argument("Mesh1D: need at least one element");
    h_ = horizon / elements;
    nodes_.resize(elements + 1);
    for (int j = 0; j <= elements; ++j) nodes_[j] = j * h_;
    nodes_.back() = horizon;
  }

  double horizon() const { return horizon_; }
  int elements() const { return elements_; }
  double h() const { return h_; }
  double node(int j) const { return nodes_[j]; }
  const std::vector<double>& nodes() const { return nodes_; }

  // Element index k with t in [node(k), node(k+1)); rightmost element for t = T.
  int element_of(double t) const {
    if (t < 0.0 || t > horizon_)
      throw std::domain_error("Mesh1D: t outside [0, T]");
    int k = static_cast<int>(std::floor(t / h_));
    if (k < 0) k = 0;
    if (k > elements_ - 1) k = elements_ - 1;
    if (k > 0 && t < nodes_[k]) --k;
    if (k < elements_ - 1 && t >= nodes_[k + 1]) ++k;
    return k;
  }

private:
  double horizon_;
  int elements_;
  double h_;
  std::vector<double> nodes_;
};

inline Mesh1D make_mesh(double horizon, int elements) { return Mesh1D(horizon, elements); }

// Piecewise-linear function on a Mesh1D with w(0) = 0. Coefficients are the
// nodal values at t_1..t_N; the value at t_0 = 0 is fixed at zero.
class FemFunction {
public:
  FemFunction(Mesh1D mesh, std::vector<double> coefficients)
      : mesh_(std::move(mesh)), coeffs_(std::move(coefficients)) {
    if (static_cast<int>(coeffs_.size()) != mesh_.elements())
      throw std::invalid_argument("FemFunction: need one coefficient per element");
  }

  const Mesh1D& mesh() const { return mesh_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  // Nodal value, j in [0, N]; node 0 is the constrained zero.
  double node_value(int j) const { return j == 0 ? 0.0 : coeffs_[j - 1]; }

  double slope(int element) const {
    return (node_value(element + 1) - node_value(element)) / mesh_.h();
  }

  double value(double t) const {
    const int k = mesh_.element_of(t);
    if (t == mesh_.node(k + 1)) return node_value(k + 1);  // exact at t = T
    const double lambda = (t - mesh_.node(k)) / mesh_.h();
    return node_value(k) + lambda * (node_value(k + 1) - node_value(k));
  }

  // Element slope; right-continuous at interior nodes, left element at t = T.
  double derivative(double t) const { return slope(mesh_.element_of(t)); }

private:
  Mesh1D mesh_;
  std::vector<double> coeffs_;
};

// Nodal interpolant of g; requires g(0) = 0 to land in the trial space.
inline FemFunction interpolate(const Mesh1D& mesh,
                               const std::function<double(double)>& g) {
  if (std::abs(g(0.0)) > 1e-12)
    throw constraint_error("interpolate: g(0) must vanish (trial space has w(0) = 0)");
  std::vector<double> coeffs(mesh.elements());
  for (int j = 1; j <= mesh.elements(); ++j) coeffs[j - 1] = g(mesh.node(j));
  return FemFunction(mesh, std::move(coeffs));
}

}  // namespace tcfem
