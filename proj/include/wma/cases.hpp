#pragma once

#include <string>
#include <vector>

#include "wma/discretize.hpp"
#include "wma/geometry.hpp"

namespace wma {

/// Built-in fixtures. Each names a default domain and the data (f, phi) on it.
struct NamedCase {
  DomainSpec domain;
  ProblemSpec problem;
};

std::vector<std::string> case_names();

/// Throws ConfigError for an unknown name or n < 3.
NamedCase named_case(const std::string& name, int n);

/// Same data on another domain. phi uses that domain's extended normal.
ProblemSpec case_problem(const std::string& name, const DomainSpec& domain);

/// u* = |x|^2/2 + 0.05 exp(x_1).
double manufactured_exact(const Eigen::VectorXd& x);

}  // namespace wma
