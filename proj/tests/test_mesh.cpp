// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tcfem/mesh.hpp"
#include "tcfem/problem.hpp"

using namespace tcfem;

TEST_CASE("make_mesh produces the uniform partition") {
  const Mesh1D mesh = make_mesh(1.0, 4);
  CHECK(mesh.h() == 0.25);
  const double expected[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int j = 0; j <= 4; ++j) CHECK(mesh.node(j) == expected[j]);

  const Mesh1D single = make_mesh(1.0, 1);
  CHECK(single.node(0) == 0.0);
  CHECK(single.node(1) == 1.0);

  CHECK(make_mesh(2.0, 8).h() == 0.25);
}

TEST_CASE("mesh rejects invalid sizes") {
  CHECK_THROWS_AS(make_mesh(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_mesh(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_mesh(1.0, 0), std::invalid_argument);
}

TEST_CASE("mesh node spacing is uniform to rounding") {
  for (int n : {3, 7, 100, 511}) {
    const Mesh1D mesh(1.0, n);
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(mesh.node(j + 1) - mesh.node(j) - mesh.h()) <= 1e-14);
  }
}

TEST_CASE("interpolation fills nodal values") {
  const Mesh1D mesh(1.0, 4);
  const FemFunction w = interpolate(mesh, [](double t) { return t; });
  const double expected[4] = {0.25, 0.5, 0.75, 1.0};
  for (int j = 0; j < 4; ++j) CHECK(w.coefficients()[j] == expected[j]);

  const FemFunction v = interpolate(Mesh1D(1.0, 2), [](double t) { return t * t; });
  CHECK(v.coefficients()[0] == 0.25);
  CHECK(v.coefficients()[1] == 1.0);
}

TEST_CASE("interpolating the singular solution vanishes at the endpoint") {
  const ProblemSpec spec = make_singular_problem(1.0);
  const FemFunction w = interpolate(Mesh1D(1.0, 4), spec.exact_u);
  CHECK(w.coefficients()[3] == 0.0);
}

TEST_CASE("interpolation requires g(0) = 0") {
  CHECK_THROWS_AS(interpolate(Mesh1D(1.0, 2), [](double) { return 1.0; }),
                  constraint_error);
}

TEST_CASE("evaluation reproduces linear functions") {
  const FemFunction w = interpolate(Mesh1D(1.0, 4), [](double t) { return t; });
  CHECK(w.value(0.37) == Catch::Approx(0.37).margin(1e-15));
  CHECK(w.derivative(0.37) == Catch::Approx(1.0).margin(1e-14));
  CHECK(w.derivative(0.5) == Catch::Approx(1.0).margin(1e-14));

  const FemFunction hat(Mesh1D(1.0, 1), {1.0});
  CHECK(hat.value(0.5) == 0.5);
}

TEST_CASE("evaluation outside the interval is a domain error") {
  const FemFunction w = interpolate(Mesh1D(1.0, 2), [](double t) { return t; });
  CHECK_THROWS_AS(w.value(-0.1), std::domain_error);
  CHECK_THROWS_AS(w.value(1.1), std::domain_error);
}

TEST_CASE("node evaluation is exact, including awkward spacings") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int n : {3, 6, 7, 9, 11}) {
    const Mesh1D mesh(1.0, n);
    std::vector<double> c(n);
    for (double& v : c) v = coeff(rng);
    const FemFunction w(mesh, c);
    for (int j = 0; j <= n; ++j) CHECK(w.value(mesh.node(j)) == w.node_value(j));
  }
}

TEST_CASE("derivative uses the right element at nodes, left at the end") {
  const Mesh1D mesh(1.0, 2);
  const FemFunction w(mesh, {1.0, 0.0});  // up then down
  CHECK(w.derivative(0.5) == w.slope(1));
  CHECK(w.derivative(1.0) == w.slope(1));
  CHECK(w.derivative(0.0) == w.slope(0));
}

TEST_CASE("evaluation is linear in the coefficients") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const Mesh1D mesh(1.0, 5);
  std::vector<double> cu(5), cv(5), cc(5);
  for (int i = 0; i < 5; ++i) {
    cu[i] = coeff(rng);
    cv[i] = coeff(rng);
    cc[i] = 2.0 * cu[i] - 3.0 * cv[i];
  }
  const FemFunction u(mesh, cu), v(mesh, cv), combo(mesh, cc);
  for (double t : {0.1, 0.33, 0.5, 0.77, 0.99}) {
    CHECK(combo.value(t) ==
          Catch::Approx(2.0 * u.value(t) - 3.0 * v.value(t)).margin(1e-13));
  }
}

TEST_CASE("problem validation enforces the initial conditions") {
  ProblemSpec bad;
  bad.mu = 1.0;
  bad.exact_u = [](double) { return 1.0; };
  bad.exact_du = [](double) { return 0.0; };
  CHECK_THROWS_AS(validate(bad), constraint_error);

  for (double mu : {0.0, 1.0, 1e5}) {
    CHECK_NOTHROW(validate(make_singular_problem(mu)));
    CHECK_NOTHROW(validate(make_quadratic_problem(mu)));
    CHECK_NOTHROW(validate(make_constant_f_problem(mu)));
  }

  ProblemSpec negative = make_quadratic_problem(1.0);
  negative.mu = -1.0;
  CHECK_THROWS_AS(validate(negative), std::invalid_argument);
}

TEST_CASE("coefficient vectors must match the mesh") {
  CHECK_THROWS_AS(FemFunction(Mesh1D(1.0, 3), {1.0, 2.0}), std::invalid_argument);
}
