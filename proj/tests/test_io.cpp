// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tcfem/io.hpp"
#include "tcfem/problem.hpp"
#include "tcfem/study.hpp"

using namespace tcfem;

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TEST_CASE("element range parsing") {
  CHECK(parse_element_range("64") == std::vector<int>{64});
  CHECK(parse_element_range("4:4:x2") == std::vector<int>{4});
  CHECK(parse_element_range("4:512:x2") ==
        std::vector<int>{4, 8, 16, 32, 64, 128, 256, 512});
  CHECK(parse_element_range("3:100:x3") == std::vector<int>{3, 9, 27, 81});
  CHECK_THROWS_AS(parse_element_range(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_element_range("4:512"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element_range("4:512:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element_range("512:4:x2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element_range("4:512:x1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element_range("-4"), std::invalid_argument);
}

TEST_CASE("solution CSV golden output for the one-element quadratic solve") {
  // Pinned from the solver output; guards both the math and the format.
  const std::string expected =
      "t,u_exact,u_h\n"
      "0,0.0000000000e+00,0.0000000000e+00\n"
      "0.1111111111,1.2345679012e-02,1.1111111111e-01\n"
      "0.2222222222,4.9382716049e-02,2.2222222222e-01\n"
      "0.3333333333,1.1111111111e-01,3.3333333333e-01\n"
      "0.4444444444,1.9753086420e-01,4.4444444444e-01\n"
      "0.5555555556,3.0864197531e-01,5.5555555556e-01\n"
      "0.6666666667,4.4444444444e-01,6.6666666667e-01\n"
      "0.7777777778,6.0493827160e-01,7.7777777778e-01\n"
      "0.8888888889,7.9012345679e-01,8.8888888889e-01\n"
      "1,1.0000000000e+00,1.0000000000e+00\n";
  const ProblemSpec spec = make_quadratic_problem(0.0);
  const Mesh1D mesh(1.0, 1);
  const FemFunction u_h = solve_problem(spec, mesh, RhsMode::manufactured);
  std::ostringstream out;
  write_solution_csv(out, u_h, spec);
  CHECK(out.str() == expected);
}

TEST_CASE("solution CSV shape and determinism") {
  const ProblemSpec spec = make_constant_f_problem(4.0);
  const Mesh1D mesh(1.0, 8);
  const FemFunction u_h = solve_problem(spec, mesh, RhsMode::kernel);
  std::ostringstream a, b;
  write_solution_csv(a, u_h, spec);
  write_solution_csv(b, u_h, spec);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "t,u_exact,u_h");
  int rows = 0;
  double prev_t = -1.0;
  while (std::getline(in, line)) {
    const auto fields = split_fields(line);
    REQUIRE(fields.size() == 3);
    const double t = std::stod(fields[0]);
    CHECK(t > prev_t);
    prev_t = t;
    CHECK(std::isfinite(std::stod(fields[1])));
    CHECK(std::isfinite(std::stod(fields[2])));
    ++rows;
  }
  CHECK(rows == 9 * 8 + 1);  // nodes plus 8 interior samples per element
}

TEST_CASE("solution CSV leaves the exact column empty without a solution") {
  ProblemSpec spec;
  spec.mu = 2.0;
  spec.f = [](double t) { return 1.0 + t; };
  const Mesh1D mesh(1.0, 2);
  const FemFunction u_h = solve_problem(spec, mesh, RhsMode::direct);
  std::ostringstream out;
  write_solution_csv(out, u_h, spec);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto fields = split_fields(line);
    REQUIRE(fields.size() == 3);
    CHECK(fields[1].empty());
  }
}

TEST_CASE("study CSV format: header, EOC column, parseable fields") {
  const StudyReport report = run_study(
      "quadratic", [](double mu) { return make_quadratic_problem(mu); },
      {1.0, 100.0}, {4, 8, 16}, RhsMode::manufactured, QuadratureScheme{},
      QuadratureScheme{5, 0, 0.5});
  std::ostringstream out;
  write_study_csv(out, report);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "mu,N,h,err_L2,eoc_L2,err_H1,eoc_H1");
  int row = 0;
  while (std::getline(in, line)) {
    const auto fields = split_fields(line);
    REQUIRE(fields.size() == 7);
    if (row % 3 == 0) {  // first refinement level of each mu block
      CHECK(fields[4] == "0.00");
      CHECK(fields[6] == "0.00");
    }
    for (const auto& f : fields) CHECK(std::isfinite(std::stod(f)));
    // errors use six-significant-digit scientific notation
    CHECK(fields[3].find('e') != std::string::npos);
    CHECK(fields[5].find('e') != std::string::npos);
    ++row;
  }
  CHECK(row == 6);

  std::ostringstream again;
  write_study_csv(again, report);
  CHECK(again.str() == out.str());
}

TEST_CASE("single-row study block prints zero EOCs") {
  const StudyReport report = run_study(
      "quadratic", [](double mu) { return make_quadratic_problem(mu); }, {1.0},
      {4}, RhsMode::manufactured);
  std::ostringstream out;
  write_study_csv(out, report);
  const std::string text = out.str();
  CHECK(text.find(",0.00,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);  // header + one row
}
