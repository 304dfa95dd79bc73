// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tcfem/mesh.hpp"
#include "tcfem/problem.hpp"
#include "tcfem/transform.hpp"
#include "tcfem/verification.hpp"

using namespace tcfem;

TEST_CASE("trig moments degenerate at zero frequency") {
  const TrigMoments m = trig_moments(0.0, 1.0, 0.37, 0.0);
  CHECK(m.c0 == Catch::Approx(1.0).margin(1e-15));
  CHECK(m.s0 == Catch::Approx(0.0).margin(1e-15));
  CHECK(m.c1 == Catch::Approx(0.5).margin(1e-15));
  CHECK(m.s1 == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("cos moment over [t, 1] at frequency pi has the hand antiderivative") {
  for (double t : {0.0, 0.2, 0.5, 0.9}) {
    const TrigMoments m = trig_moments(t, 1.0, t, M_PI);
    CHECK(m.c0 == Catch::Approx(std::sin(M_PI * (1.0 - t)) / M_PI).margin(1e-14));
  }
}

TEST_CASE("series and direct moment branches agree at the switch point") {
  // Phase omega*(b-a) exactly at the dispatch threshold.
  for (double width : {0.3, 0.55, 0.8}) {
    const double omega = 1e-4 / width;
    const TrigMoments ms = detail::trig_moments_impl(0.1, 0.1 + width, 0.4, omega, true);
    const TrigMoments ma = detail::trig_moments_impl(0.1, 0.1 + width, 0.4, omega, false);
    const double scale = std::abs(ma.c0) + std::abs(ma.s0) + std::abs(ma.c1) +
                         std::abs(ma.s1);
    CHECK(std::abs(ms.c0 - ma.c0) <= 1e-13 * scale);
    CHECK(std::abs(ms.s0 - ma.s0) <= 1e-13 * scale);
    CHECK(std::abs(ms.c1 - ma.c1) <= 1e-13 * scale);
    CHECK(std::abs(ms.s1 - ma.s1) <= 1e-13 * scale);
  }
}

TEST_CASE("moment time-derivatives reproduce the companion moments") {
  const double step = 1e-6;
  for (double omega : {0.5, 3.0, 20.0}) {
    const TrigMoments at = trig_moments(0.2, 0.7, 0.4, omega);
    const TrigMoments up = trig_moments(0.2, 0.7, 0.4 + step, omega);
    const TrigMoments dn = trig_moments(0.2, 0.7, 0.4 - step, omega);
    CHECK((up.c0 - dn.c0) / (2.0 * step) ==
          Catch::Approx(-omega * at.s0).margin(1e-6));
    CHECK((up.s0 - dn.s0) / (2.0 * step) ==
          Catch::Approx(omega * at.c0).margin(1e-6));
  }
}

TEST_CASE("zero-frequency transformation is the reflection w(T) - w(t)") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const Mesh1D mesh(1.0, 6);
  std::vector<double> c(6);
  for (double& v : c) v = coeff(rng);
  const FemFunction w(mesh, c);
  const double wT = w.node_value(6);
  for (double t : {0.0, 0.21, 0.5, 0.83, 1.0}) {
    CHECK(transform_value(w, 0.0, t) ==
          Catch::Approx(wT - w.value(t)).margin(1e-14));
  }
  CHECK(transform_derivative(w, 0.0, 0.3) ==
        Catch::Approx(-w.derivative(0.3)).margin(1e-14));
}

TEST_CASE("transformation of the identity has the closed form") {
  const Mesh1D mesh(1.0, 8);
  const FemFunction id = interpolate(mesh, [](double t) { return t; });
  const double omega = M_PI;  // mu = pi^2
  // (2/w) sin(w (1-t)) - cos(w (1-t)) + t for the interpolant of t on (0,1)
  auto closed = [&](double t) {
    return (2.0 / omega) * std::sin(omega * (1.0 - t)) -
           std::cos(omega * (1.0 - t)) + t;
  };
  CHECK(transform_value(id, omega * omega, 0.0) == Catch::Approx(1.0).margin(1e-13));
  for (double t : {0.125, 0.3, 0.625, 0.99})
    CHECK(transform_value(id, omega * omega, t) ==
          Catch::Approx(closed(t)).margin(1e-13));
}

TEST_CASE("transformed functions vanish at the horizon") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    const FemFunction w = verify::detail::random_fem_function(rng);
    CHECK(transform_value(w, 3.7, w.mesh().horizon()) == 0.0);
  }
}

TEST_CASE("derivative formula matches finite differences of the value") {
  const Mesh1D mesh(1.0, 8);  // 0.3 lies inside an element
  const FemFunction w = interpolate(mesh, [](double t) { return t * (1.0 - 0.4 * t); });
  const double step = 1e-6;
  const double fd = (transform_value(w, 7.0, 0.3 + step) -
                     transform_value(w, 7.0, 0.3 - step)) /
                    (2.0 * step);
  CHECK(fd == Catch::Approx(transform_derivative(w, 7.0, 0.3)).margin(1e-6));
}

TEST_CASE("derivative at the horizon is minus the last slope") {
  std::mt19937_64 rng(777);
  const FemFunction w = verify::detail::random_fem_function(rng);
  const double T = w.mesh().horizon();
  for (double mu : {0.0, 2.0, 90.0}) {
    CHECK(transform_derivative(w, mu, T) ==
          Catch::Approx(-w.derivative(T)).margin(1e-13));
  }
}

TEST_CASE("complex transformation: real part, terminal value, zero input") {
  std::mt19937_64 rng(1234);
  const CheckResult match = verify::check_complex_real_match(rng);
  INFO(match.detail);
  CHECK(match.pass);

  const FemFunction w = verify::detail::random_fem_function(rng);
  const auto end = complex_transform(w, 5.0, w.mesh().horizon());
  CHECK(end == std::complex<double>(0.0, 0.0));
  const FemFunction zero(w.mesh(), std::vector<double>(w.mesh().elements(), 0.0));
  CHECK(complex_transform(zero, 5.0, 0.4) == std::complex<double>(0.0, 0.0));

  CHECK_THROWS_AS(complex_transform(w, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(complex_transform(w, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("transformed hat functions match the generic evaluation") {
  const Mesh1D mesh(1.0, 5);
  for (int j = 1; j <= 5; ++j) {
    std::vector<double> c(5, 0.0);
    c[j - 1] = 1.0;
    const FemFunction hat(mesh, c);
    for (double mu : {0.0, 4.0, 250.0}) {
      for (double t : {0.0, 0.15, 0.55, 0.95}) {
        CHECK(transform_hat_value(mesh, j, mu, t) ==
              Catch::Approx(transform_value(hat, mu, t)).margin(1e-13));
      }
    }
  }
}

TEST_CASE("convolution kernels have the hand values") {
  auto one = [](double) { return 1.0; };
  // S(t, 1) with mu = 4 is (1 - cos(2t))/2, so 1 at t = pi/2.
  CHECK(sin_kernel(one, 4.0, M_PI / 2.0) == Catch::Approx(1.0).margin(1e-12));
  CHECK(duhamel_reference(one, 4.0, M_PI / 2.0) == Catch::Approx(0.5).margin(1e-12));

  CHECK(cos_kernel(one, 4.0, 0.0) == 0.0);
  CHECK(sin_kernel(one, 4.0, 0.0) == 0.0);

  // mu = 0: C collapses to the running integral and S to zero.
  auto lin = [](double s) { return 2.0 * s; };
  CHECK(cos_kernel(lin, 0.0, 0.8) == Catch::Approx(0.64).margin(1e-13));
  CHECK(sin_kernel(lin, 0.0, 0.8) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("variation-of-constants reference reproduces a manufactured pair") {
  // u = t^2 solves the equation for f = 2 + mu t^2.
  const double mu = 3.0;
  auto f = [mu](double t) { return 2.0 + mu * t * t; };
  for (double t : {0.0, 0.4, 1.0}) {
    CHECK(duhamel_reference(f, mu, t) == Catch::Approx(t * t).margin(1e-10));
  }
  CHECK_THROWS_AS(duhamel_reference(f, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("transformation is linear in its argument") {
  std::mt19937_64 rng(2024);
  const CheckResult r = verify::check_transform_linearity(rng);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("transformation identity against step densities") {
  std::mt19937_64 rng(6021023);
  const CheckResult r = verify::check_transform_identity(rng, 40);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("nested integral swap identity") {
  std::mt19937_64 rng(1618);
  const CheckResult r = verify::check_ibp_swap(rng, 60);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("derivative of the transform obeys the energy bound") {
  std::mt19937_64 rng(141421);
  const CheckResult r = verify::check_derivative_bound(rng);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("trig moments agree with brute-force quadrature") {
  std::mt19937_64 rng(90210);
  std::uniform_real_distribution<double> pick(0.05, 0.95);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = pick(rng);
    const double b = a + pick(rng);
    const double t = pick(rng);
    const double omega = std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 1.7)(rng));
    const TrigMoments m = trig_moments(a, b, t, omega);
    const int panels = std::max(4, oscillation_panels(omega, b - a));
    auto num = [&](auto g) { return integrate_panels(g, a, b, panels, 8); };
    CHECK(m.c0 == Catch::Approx(num([&](double s) { return std::cos(omega * (t - s)); })).margin(1e-13));
    CHECK(m.s0 == Catch::Approx(num([&](double s) { return std::sin(omega * (t - s)); })).margin(1e-13));
    CHECK(m.c1 == Catch::Approx(num([&](double s) { return s * std::cos(omega * (t - s)); })).margin(1e-13));
    CHECK(m.s1 == Catch::Approx(num([&](double s) { return s * std::sin(omega * (t - s)); })).margin(1e-13));
  }
}

TEST_CASE("closed-form transformation agrees with brute-force quadrature") {
  std::mt19937_64 rng(40504);
  std::uniform_real_distribution<double> pick_t(0.0, 0.98);
  for (int trial = 0; trial < 20; ++trial) {
    const FemFunction w = verify::detail::random_fem_function(rng, 8);
    const double mu = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.5)(rng));
    const double omega = std::sqrt(mu);
    const double t = pick_t(rng);
    const Mesh1D& mesh = w.mesh();
    double direct = 0.0;
    for (int k = mesh.element_of(t); k < mesh.elements(); ++k) {
      const double lo = std::max(mesh.node(k), t);
      const double hi = mesh.node(k + 1);
      if (!(lo < hi)) continue;
      const double slope = w.slope(k);
      direct += integrate_panels(
          [&](double s) {
            return std::cos(omega * (t - s)) * slope -
                   omega * std::sin(omega * (t - s)) * w.value(s);
          },
          lo, hi, std::max(2, oscillation_panels(omega, hi - lo)), 8);
    }
    CHECK(transform_value(w, mu, t) == Catch::Approx(direct).margin(1e-12));
  }
}
