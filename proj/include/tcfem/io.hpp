// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "tcfem/problem.hpp"
#include "tcfem/study.hpp"

namespace tcfem {

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace detail

// Solution CSV: header `t,u_exact,u_h`, sampled at the nodes plus 8 interior
// points per element. The exact column is left empty when the problem has no
// known solution.
inline void write_solution_csv(std::ostream& out, const FemFunction& u_h,
                               const ProblemSpec& spec) {
  out << "t,u_exact,u_h\n";
  const Mesh1D& mesh = u_h.mesh();
  auto row = [&](double t) {
    out << detail::fmt("%.10g", t) << ',';
    if (spec.exact_u) out << detail::fmt("%.10e", spec.exact_u(t));
    out << ',' << detail::fmt("%.10e", u_h.value(t)) << '\n';
  };
  const int samples = 9;  // node + 8 interior points
  for (int k = 0; k < mesh.elements(); ++k)
    for (int i = 0; i < samples; ++i)
      row(mesh.node(k) + i * mesh.h() / samples);
  row(mesh.horizon());
}

// Study CSV: `mu,N,h,err_L2,eoc_L2,err_H1,eoc_H1`, errors in scientific
// notation, EOC with two decimals (first row of each block prints 0.00).
inline void write_study_csv(std::ostream& out, const StudyReport& report) {
  out << "mu,N,h,err_L2,eoc_L2,err_H1,eoc_H1\n";
  for (const MuBlock& block : report.blocks) {
    for (const ConvergenceRow& r : block.rows) {
      out << detail::fmt("%.6g", block.mu) << ',' << r.elements << ','
          << detail::fmt("%.6g", r.h) << ',' << detail::fmt("%.6e", r.err_L2)
          << ',' << detail::fmt("%.2f", r.eoc_L2) << ','
          << detail::fmt("%.6e", r.err_H1) << ','
          << detail::fmt("%.2f", r.eoc_H1) << '\n';
    }
  }
}

// Element-count range syntax: either a single count like `64`, or
// `first:last:xFACTOR` for a geometric sweep, e.g. `4:512:x2`.
inline std::vector<int> parse_element_range(const std::string& text) {
  auto fail = [&] {
    throw std::invalid_argument("bad element range '" + text +
                                "' (expected N or first:last:xFACTOR)");
  };
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (...) {
      fail();
    }
    if (pos != s.size() || v < 1) fail();
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {to_int(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) fail();
  const int first = to_int(text.substr(0, c1));
  const int last = to_int(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string step = text.substr(c2 + 1);
  if (step.size() < 2 || step[0] != 'x') fail();
  const int factor = to_int(step.substr(1));
  if (factor < 2 || last < first) fail();
  std::vector<int> out;
  for (long n = first; n <= last; n *= factor) out.push_back(static_cast<int>(n));
  return out;
}

}  // namespace tcfem
