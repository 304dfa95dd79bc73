// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tcfem {

// Integrand returned a non-finite value; `location` is the quadrature node.
class numeric_error : public std::runtime_error {
public:
  numeric_error(const std::string& what, double location)
      : std::runtime_error(what), location_(location) {}
  double location() const { return location_; }

private:
  double location_;
};

// A constructed object would violate one of its stated invariants.
class constraint_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Non-positive pivot during the tridiagonal factorization.
class singular_matrix_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace tcfem
