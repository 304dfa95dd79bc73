// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "tcfem/mesh.hpp"
#include "tcfem/quadrature.hpp"

namespace tcfem {

// Exact integrals over one interval [a, b] against the kernel frequency
// omega and target time t:
//   c0 = int_a^b cos(omega (t-s)) ds        s0 = int_a^b sin(omega (t-s)) ds
//   c1 = int_a^b s cos(omega (t-s)) ds      s1 = int_a^b s sin(omega (t-s)) ds
struct TrigMoments {
  double c0, s0, c1, s1;
};

namespace detail {

// Switch to series evaluation when |omega * (b - a)| falls below this; the
// direct formulas lose digits to cancellation as the phase across the
// interval shrinks.
constexpr double kSmallPhase = 1e-4;

// sin(x)/x with a degree-6 series branch. The direct quotient is itself
// used only once |x| is large enough for full accuracy.
inline double sinc(double x, bool series) {
  if (series || std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
  }
  return std::sin(x) / x;
}

// (sin x - x cos x)/x^2. The forced branch is the degree-5 series; the
// unforced path extends the series until the direct difference, which
// cancels like x^3 out of O(x) terms, carries full precision again.
inline double half_width_moment(double x, bool series) {
  const double x2 = x * x;
  if (series) return x * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0);
  if (std::abs(x) < 0.0625)
    return x * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0 +
                x2 * x2 * x2 * x2 / 3991680.0);
  return (std::sin(x) - x * std::cos(x)) / x2;
}

// Centered evaluation: with m = (a+b)/2, c = (b-a)/2, x = omega*c and
// A = omega*(t-m),
//   c0 = (b-a) cos(A) sinc(x)          s0 = (b-a) sin(A) sinc(x)
//   c1 = m c0 + 2 c^2 q(x) sin(A)      s1 = m s0 - 2 c^2 q(x) cos(A)
// which is stable for any omega, including omega -> 0.
inline TrigMoments trig_moments_impl(double a, double b, double t, double omega,
                                     bool series) {
  const double width = b - a;
  const double m = 0.5 * (a + b);
  const double c = 0.5 * width;
  const double x = omega * c;
  const double A = omega * (t - m);
  const double cosA = std::cos(A);
  const double sinA = std::sin(A);
  const double sc = sinc(x, series);
  const double q2c2 = 2.0 * c * c * half_width_moment(x, series);
  TrigMoments mom;
  mom.c0 = width * cosA * sc;
  mom.s0 = width * sinA * sc;
  mom.c1 = m * mom.c0 + q2c2 * sinA;
  mom.s1 = m * mom.s0 - q2c2 * cosA;
  return mom;
}

}  // namespace detail

inline TrigMoments trig_moments(double a, double b, double t, double omega) {
  if (!(a <= b)) throw std::invalid_argument("trig_moments: requires a <= b");
  const bool series = std::abs(omega * (b - a)) < detail::kSmallPhase;
  return detail::trig_moments_impl(a, b, t, omega, series);
}

namespace detail {

// One linear piece w(s) = alpha + beta*s on [lo, hi], contributing
//   int_lo^hi [cos(omega (t-s)) w'(s) - omega sin(omega (t-s)) w(s)] ds.
inline double transform_piece(double alpha, double beta, double lo, double hi,
                              double t, double omega) {
  const TrigMoments m = trig_moments(lo, hi, t, omega);
  return beta * m.c0 - omega * (alpha * m.s0 + beta * m.s1);
}

// The integral part of the derivative formula:
//   int_lo^hi [sin(omega (t-s)) w'(s) + omega cos(omega (t-s)) w(s)] ds.
inline double derivative_piece(double alpha, double beta, double lo, double hi,
                               double t, double omega) {
  const TrigMoments m = trig_moments(lo, hi, t, omega);
  return beta * m.s0 + omega * (alpha * m.c0 + beta * m.c1);
}

template <typename PieceFn>
double accumulate_pieces(const FemFunction& w, double t, PieceFn&& piece) {
  const Mesh1D& mesh = w.mesh();
  double total = 0.0;
  for (int k = mesh.element_of(t); k < mesh.elements(); ++k) {
    const double lo = std::max(mesh.node(k), t);
    const double hi = mesh.node(k + 1);
    if (!(lo < hi)) continue;
    const double beta = w.slope(k);
    const double alpha = w.node_value(k) - beta * mesh.node(k);
    total += piece(alpha, beta, lo, hi);
  }
  return total;
}

}  // namespace detail

// The transformed test function at time t,
//   (T_mu w)(t) = int_t^T [cos(sqrt(mu)(t-s)) w'(s)
//                          - sqrt(mu) sin(sqrt(mu)(t-s)) w(s)] ds,
// evaluated in closed form per element. (T_mu w)(T) = 0 by construction,
// and T_0 w = w(T) - w(t).
inline double transform_value(const FemFunction& w, double mu, double t) {
  if (mu < 0.0) throw std::invalid_argument("transform_value: mu must be >= 0");
  const double omega = std::sqrt(mu);
  return detail::accumulate_pieces(w, t, [&](double a, double b, double lo, double hi) {
    return detail::transform_piece(a, b, lo, hi, t, omega);
  });
}

// d/dt of the transformed function:
//   (T_mu w)'(t) = -w'(t) - sqrt(mu) int_t^T [sin(sqrt(mu)(t-s)) w'(s)
//                  + sqrt(mu) cos(sqrt(mu)(t-s)) w(s)] ds.
// At interior nodes the right-hand element slope is used; at t = T the
// left-hand one, so (T_mu w)'(T) = -w'(T).
inline double transform_derivative(const FemFunction& w, double mu, double t) {
  if (mu < 0.0) throw std::invalid_argument("transform_derivative: mu must be >= 0");
  const double omega = std::sqrt(mu);
  const double tail =
      detail::accumulate_pieces(w, t, [&](double a, double b, double lo, double hi) {
        return detail::derivative_piece(a, b, lo, hi, t, omega);
      });
  return -w.derivative(t) - omega * tail;
}

// The complex-valued transformation
//   (C_mu w)(t) = i int_t^T e^{i sqrt(mu)(t-s)} (-i w'(s) + sqrt(mu) w(s)) ds,
// whose real part coincides with transform_value. Requires mu > 0; the
// mu = 0 limit is served by the real operator.
inline std::complex<double> complex_transform(const FemFunction& w, double mu,
                                              double t) {
  if (!(mu > 0.0))
    throw std::invalid_argument("complex_transform: mu must be > 0");
  const double omega = std::sqrt(mu);
  const Mesh1D& mesh = w.mesh();
  std::complex<double> total(0.0, 0.0);
  for (int k = mesh.element_of(t); k < mesh.elements(); ++k) {
    const double lo = std::max(mesh.node(k), t);
    const double hi = mesh.node(k + 1);
    if (!(lo < hi)) continue;
    const double beta = w.slope(k);
    const double alpha = w.node_value(k) - beta * mesh.node(k);
    const double width = hi - lo;
    const double m = 0.5 * (lo + hi);
    const double c = 0.5 * width;
    const double x = omega * c;
    const bool series = std::abs(omega * width) < detail::kSmallPhase;
    const std::complex<double> phase = std::polar(1.0, omega * (t - m));
    const std::complex<double> e0 = width * detail::sinc(x, series) * phase;
    const std::complex<double> e1 =
        m * e0 - std::complex<double>(0.0, 2.0 * c * c) *
                     detail::half_width_moment(x, series) * phase;
    total += (std::complex<double>(0.0, -beta) + omega * alpha) * e0 +
             omega * beta * e1;
  }
  return std::complex<double>(0.0, 1.0) * total;
}

// T_mu applied to the hat function of node j, evaluated at t. Only the (at
// most two) support elements contribute, so this is O(1) per call.
inline double transform_hat_value(const Mesh1D& mesh, int j, double mu, double t) {
  if (j < 1 || j > mesh.elements())
    throw std::invalid_argument("transform_hat_value: node index out of range");
  const double omega = std::sqrt(mu);
  const double h = mesh.h();
  double total = 0.0;
  {  // rising segment [t_{j-1}, t_j]
    const double lo = std::max(mesh.node(j - 1), t);
    const double hi = mesh.node(j);
    if (lo < hi)
      total += detail::transform_piece(-mesh.node(j - 1) / h, 1.0 / h, lo, hi, t, omega);
  }
  if (j < mesh.elements()) {  // falling segment [t_j, t_{j+1}]
    const double lo = std::max(mesh.node(j), t);
    const double hi = mesh.node(j + 1);
    if (lo < hi)
      total += detail::transform_piece(mesh.node(j + 1) / h, -1.0 / h, lo, hi, t, omega);
  }
  return total;
}

// Convolution kernels C(t,f) = int_0^t cos(sqrt(mu)(t-s)) f(s) ds and
// S(t,f) = int_0^t sin(sqrt(mu)(t-s)) f(s) ds by composite quadrature.
inline double cos_kernel(const std::function<double(double)>& f, double mu,
                         double t, const QuadratureScheme& scheme = {}) {
  if (t == 0.0) return 0.0;
  const double omega = std::sqrt(mu);
  const int panels = std::max(4, oscillation_panels(omega, t));
  return integrate_panels([&](double s) { return f(s) * std::cos(omega * (t - s)); },
                          0.0, t, panels, scheme.gauss_order);
}

inline double sin_kernel(const std::function<double(double)>& f, double mu,
                         double t, const QuadratureScheme& scheme = {}) {
  if (t == 0.0) return 0.0;
  const double omega = std::sqrt(mu);
  const int panels = std::max(4, oscillation_panels(omega, t));
  return integrate_panels([&](double s) { return f(s) * std::sin(omega * (t - s)); },
                          0.0, t, panels, scheme.gauss_order);
}

// Variation-of-constants solution u(t) = S(t,f)/sqrt(mu) of the model
// problem; the independent reference for finite element solutions.
inline double duhamel_reference(const std::function<double(double)>& f, double mu,
                                double t, const QuadratureScheme& scheme = {}) {
  if (!(mu > 0.0))
    throw std::invalid_argument("duhamel_reference: mu must be > 0");
  return sin_kernel(f, mu, t, scheme) / std::sqrt(mu);
}

}  // namespace tcfem
