#include "wma/cases.hpp"

#include <cmath>

#include "wma/error.hpp"

namespace wma {

namespace {

constexpr double kAmplitude = 0.05;

Eigen::VectorXd extended_normal(const DomainSpec& domain, const Eigen::VectorXd& x) {
  return domain.outward_normal(domain.project(x));
}

Eigen::VectorXd manufactured_gradient(const Eigen::VectorXd& x) {
  Eigen::VectorXd g = x;
  g(0) += kAmplitude * std::exp(x(0));
  return g;
}

}  // namespace

std::vector<std::string> case_names() {
  return {"ball-constant", "ball-manufactured-exp", "ellipsoid-near-sphere"};
}

double manufactured_exact(const Eigen::VectorXd& x) {
  return 0.5 * x.squaredNorm() + kAmplitude * std::exp(x(0));
}

ProblemSpec case_problem(const std::string& name, const DomainSpec& domain) {
  const int n = domain.dim();
  ProblemSpec p;
  p.n = n;
  p.name = name;
  if (name == "ball-constant") {
    const double c = std::pow(n - 1.0, n);
    p.f = [c](const Eigen::VectorXd&) { return c; };
    p.phi = [domain](const Eigen::VectorXd& x) {
      return x.dot(extended_normal(domain, x)) + 0.5 * x.squaredNorm();
    };
    p.exact = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
    return p;
  }
  if (name == "ball-manufactured-exp" || name == "ellipsoid-near-sphere") {
    // D^2 u* = I + a e_1 e_1^T with a = 0.05 exp(x_1): lifted spectrum is
    // n-1 (once) and n-1+a (n-1 times).
    p.f = [n](const Eigen::VectorXd& x) {
      const double a = kAmplitude * std::exp(x(0));
      return (n - 1.0) * std::pow(n - 1.0 + a, n - 1);
    };
    p.phi = [domain](const Eigen::VectorXd& x) {
      return manufactured_gradient(x).dot(extended_normal(domain, x)) + manufactured_exact(x);
    };
    p.exact = manufactured_exact;
    return p;
  }
  throw ConfigError("unknown case: " + name);
}

NamedCase named_case(const std::string& name, int n) {
  if (n < 3) throw ConfigError("PDE cases need n >= 3");
  if (name == "ellipsoid-near-sphere") {
    Eigen::VectorXd axes = Eigen::VectorXd::Ones(n);
    axes(n - 1) = 1.05;
    auto domain = DomainSpec::ellipsoid(axes);
    return {domain, case_problem(name, domain)};
  }
  auto domain = DomainSpec::ball(n, 1.0);
  return {domain, case_problem(name, domain)};
}

}  // namespace wma
