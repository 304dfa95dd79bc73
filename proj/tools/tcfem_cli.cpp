// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: solve a single problem, run a convergence study, or
// run the verification suite. Results are written as CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcfem/io.hpp"
#include "tcfem/problem.hpp"
#include "tcfem/study.hpp"
#include "tcfem/verification.hpp"

namespace {

struct CommonOptions {
  std::string problem = "singular";
  double horizon = 1.0;
  std::string rhs = "manufactured";
  int quad_order = 8;
  int grading_depth = 50;
  std::string out;
  std::vector<double> f_poly;  // custom problems: f(t) = sum c_k t^k
};

tcfem::RhsMode parse_rhs(const std::string& name) {
  if (name == "manufactured") return tcfem::RhsMode::manufactured;
  if (name == "kernel") return tcfem::RhsMode::kernel;
  if (name == "direct") return tcfem::RhsMode::direct;
  throw CLI::ValidationError("--rhs", "unknown mode '" + name + "'");
}

tcfem::ProblemSpec build_problem(const CommonOptions& opt, double mu) {
  if (opt.problem == "singular") return tcfem::make_singular_problem(mu, opt.horizon);
  if (opt.problem == "quadratic") return tcfem::make_quadratic_problem(mu, opt.horizon);
  if (opt.problem == "constant-f")
    return tcfem::make_constant_f_problem(mu, opt.horizon);
  if (opt.problem == "custom") {
    if (opt.f_poly.empty())
      throw CLI::ValidationError(
          "--problem", "custom problems need --f-poly c0,c1,... for the source");
    tcfem::ProblemSpec spec;
    spec.mu = mu;
    spec.horizon = opt.horizon;
    spec.f = [coeffs = opt.f_poly](double t) {
      double acc = 0.0;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
      return acc;
    };
    spec.name = "custom";
    return spec;
  }
  throw CLI::ValidationError("--problem", "unknown problem '" + opt.problem + "'");
}

void reject_singular_pointwise(const tcfem::ProblemSpec& spec, tcfem::RhsMode mode) {
  if (spec.singular_at_end && mode != tcfem::RhsMode::manufactured)
    throw CLI::ValidationError(
        "--rhs",
        "the '" + spec.name +
            "' problem has a source that is not square-integrable; kernel and "
            "direct assembly are undefined for it (use --rhs manufactured)");
  if (mode == tcfem::RhsMode::manufactured && !spec.has_manufactured())
    throw CLI::ValidationError(
        "--rhs", "the '" + spec.name +
                     "' problem has no exact solution here; use --rhs kernel "
                     "or --rhs direct");
}

// Stream sink: file when --out given, stdout otherwise.
class OutputTarget {
public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

int cmd_solve(const CommonOptions& opt, double mu, int elements) {
  const tcfem::ProblemSpec spec = build_problem(opt, mu);
  const tcfem::RhsMode mode = parse_rhs(opt.rhs);
  reject_singular_pointwise(spec, mode);
  const tcfem::QuadratureScheme scheme{opt.quad_order, opt.grading_depth, 0.5};
  tcfem::validate(scheme);
  const tcfem::Mesh1D mesh(opt.horizon, elements);
  const tcfem::FemFunction u_h = tcfem::solve_problem(spec, mesh, mode, scheme);
  OutputTarget target(opt.out);
  tcfem::write_solution_csv(target.stream(), u_h, spec);
  return 0;
}

int cmd_study(const CommonOptions& opt, const std::vector<double>& mu_list,
              const std::string& elements, int error_quad_order,
              int error_grading_depth) {
  const tcfem::RhsMode mode = parse_rhs(opt.rhs);
  {
    const tcfem::ProblemSpec probe = build_problem(opt, mu_list.front());
    reject_singular_pointwise(probe, mode);
    if (!probe.exact_u || !probe.exact_du)
      throw CLI::ValidationError(
          "--problem", "'" + opt.problem +
                           "' has no known solution for mu=" +
                           std::to_string(mu_list.front()) +
                           "; a study needs one for the error columns");
  }
  const std::vector<int> n_list = tcfem::parse_element_range(elements);
  const tcfem::QuadratureScheme assembly{opt.quad_order, opt.grading_depth, 0.5};
  const tcfem::QuadratureScheme error{error_quad_order, error_grading_depth, 0.5};
  tcfem::validate(assembly);
  tcfem::validate(error);
  const tcfem::StudyReport report = tcfem::run_study(
      opt.problem, [&](double mu) { return build_problem(opt, mu); }, mu_list,
      n_list, mode, assembly, error);
  OutputTarget target(opt.out);
  tcfem::write_study_csv(target.stream(), report);
  int failures = 0;
  for (const auto& block : report.blocks)
    for (const auto& msg : block.failures) {
      std::cerr << "tcfem: row failed: " << msg << "\n";
      ++failures;
    }
  return failures == 0 ? 0 : 1;
}

int cmd_verify(std::uint64_t seed, bool inject_failure) {
  const auto results = tcfem::verify::run_verification(seed, inject_failure);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-36s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed (seed %llu)\n", results.size(), failed,
              static_cast<unsigned long long>(seed));
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coercive Galerkin-Bubnov finite elements for u'' + mu u = f on (0,T)\n"
      "with transformed test functions"};
  app.require_subcommand(1);

  CommonOptions opt;
  double mu = 1.0;
  std::vector<double> mu_list;
  int elements = 32;
  std::string element_range = "4:512:x2";
  int error_quad_order = 5;
  int error_grading_depth = 0;
  std::uint64_t seed = 20240817;
  bool inject_failure = false;

  auto add_common = [&](CLI::App* cmd, bool with_grading) {
    cmd->add_option("--problem", opt.problem,
                    "one of singular|quadratic|constant-f|custom")
        ->capture_default_str();
    cmd->add_option("--horizon", opt.horizon, "interval endpoint T")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--rhs", opt.rhs,
                    "load-vector strategy: manufactured|kernel|direct")
        ->capture_default_str();
    cmd->add_option("--quad-order", opt.quad_order, "Gauss points per panel")
        ->check(CLI::Range(1, tcfem::kMaxGaussOrder))
        ->capture_default_str();
    if (with_grading)
      cmd->add_option("--grading-depth", opt.grading_depth,
                      "geometric subdivisions toward a singular endpoint")
          ->check(CLI::Range(0, 1000))
          ->capture_default_str();
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--f-poly", opt.f_poly,
                    "polynomial source coefficients c0,c1,... (custom problem)")
        ->delimiter(',');
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "solve one problem and emit the sampled solution as CSV");
  add_common(solve, true);
  solve->add_option("--mu", mu, "coefficient mu >= 0")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve->add_option("--elements", elements, "number of mesh elements N")
      ->check(CLI::Range(1, 1 << 22))
      ->capture_default_str();

  CLI::App* study = app.add_subcommand(
      "study", "run a refinement study and emit the error table as CSV");
  add_common(study, true);
  study
      ->add_option("--mu-list", mu_list, "comma-separated mu values")
      ->delimiter(',')
      ->required();
  study->add_option("--elements", element_range, "N or first:last:xFACTOR")
      ->capture_default_str();
  study
      ->add_option("--error-quad-order", error_quad_order,
                   "Gauss points per element for the error norms")
      ->check(CLI::Range(1, tcfem::kMaxGaussOrder))
      ->capture_default_str();
  study
      ->add_option("--error-grading-depth", error_grading_depth,
                   "graded error quadrature depth (0 = plain panels)")
      ->check(CLI::Range(0, 1000))
      ->capture_default_str();

  CLI::App* verify =
      app.add_subcommand("verify", "run the full property suite and report");
  verify->add_option("--seed", seed, "random seed for the property samples")
      ->capture_default_str();
  verify->add_flag("--inject-failure", inject_failure,
                   "test hook: force one failing check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(opt, mu, elements);
    if (study->parsed())
      return cmd_study(opt, mu_list, element_range, error_quad_order,
                       error_grading_depth);
    return cmd_verify(seed, inject_failure);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "tcfem: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tcfem: " << e.what() << "\n";
    return 2;
  }
}
