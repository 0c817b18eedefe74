#include "wma/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wma/error.hpp"
#include "wma/woperator.hpp"

namespace wma {

namespace {

std::vector<std::size_t> strip_points(const Grid& grid, double mu) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    if (grid.active_distance(a) < mu) out.push_back(a);
  }
  if (out.empty()) throw ConfigError("barrier strip is empty: mu is below the grid's active margin");
  return out;
}

// Du.nu - phi_eff with phi_eff = -u + phi_t, at an active point.
double robin_bracket(const DiscreteSystem& system, const HomotopyState& state, std::size_t a) {
  const Grid& grid = system.grid();
  const Eigen::VectorXd x = grid.position(a);
  const Eigen::VectorXd nu = normal_field(grid.domain(), x);
  const Eigen::VectorXd du = gradient_stencil(state.field, grid, a);
  return du.dot(nu) + state.field.values[a] - robin_datum(system.problem(), grid.domain(), x, state.t);
}

struct BoundaryScan {
  double max_abs = 0.0;  // |u_nu + u - phi_t|
  double constant = 0.0;
  double sup_unn = -std::numeric_limits<double>::infinity();
  double inf_unn = std::numeric_limits<double>::infinity();
};

BoundaryScan scan_boundary(const DiscreteSystem& system, const HomotopyState& state) {
  const Grid& grid = system.grid();
  const auto& v = state.field.values;
  constexpr double kStep = 1e-5;
  BoundaryScan s;
  for (const auto& c : grid.collocations()) {
    const double un = apply_row(c.normal_derivative, v);
    const double u = apply_row(c.trace, v);
    const double phi = robin_datum(system.problem(), grid.domain(), c.point, state.t);
    s.max_abs = std::max(s.max_abs, std::abs(un + u - phi));
    const double dphi = (robin_datum(system.problem(), grid.domain(), c.point + kStep * c.normal, state.t) -
                         robin_datum(system.problem(), grid.domain(), c.point - kStep * c.normal, state.t)) /
                        (2.0 * kStep);
    s.constant = std::max(s.constant, std::abs(dphi - un));
    const double unn = apply_row(c.second_derivative, v);
    s.sup_unn = std::max(s.sup_unn, unn);
    s.inf_unn = std::min(s.inf_unn, unn);
  }
  return s;
}

}  // namespace

double BarrierParams::mu_tilde(const DomainSpec& domain) const {
  return std::min({1.0 / (4.0 * K3), (2.0 - gamma) / (2.0 * K3), 1.0 / (2.0 * domain.kappa_min()), domain.mu0()});
}

void BarrierParams::validate(const DomainSpec& domain) const {
  if (!(K3 > 0.0)) throw DomainError("barrier: K3 must be positive");
  if (!(beta > 0.0)) throw DomainError("barrier: beta must be positive");
  if (!(A > 0.0)) throw DomainError("barrier: A must be positive");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("barrier: sigma must lie in (0, 1]");
  if (!(gamma >= 0.5 && gamma < 1.0)) throw DomainError("barrier: gamma must lie in [1/2, 1)");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("barrier: epsilon must lie in (0, 1/2)");
  if (!(mu > 0.0)) throw DomainError("barrier: mu must be positive");
  constexpr double slack = 1.0 + 1e-12;
  if (mu > mu_tilde(domain) * slack) throw DomainError("barrier: mu exceeds the strip bound of the h-lemma");
  if (beta * mu / 2.0 > epsilon * slack) throw DomainError("barrier: beta mu / 2 exceeds epsilon");
}

double robin_datum(const ProblemSpec& problem, const DomainSpec& domain, const Eigen::VectorXd& x, double t) {
  const Eigen::VectorXd nu = domain.outward_normal(domain.project(x));
  return t * problem.phi(x) + (1.0 - t) * homotopy_datum(x, nu);
}

SolutionConstants estimate_constants(const DiscreteSystem& system, const HomotopyState& state, double mu) {
  const Monitors& m = state.monitors;
  SolutionConstants c;
  c.C1 = m.sup_u + m.sup_du;
  c.C2 = (1.0 + system.grid().domain().kappa_max()) * (m.sup_du + m.sup_d2u);
  for (std::size_t a : strip_points(system.grid(), mu)) {
    c.C3 = std::max(c.C3, std::abs(robin_bracket(system, state, a)));
  }
  return c;
}

BarrierParams recipe_params(const DiscreteSystem& system, const HomotopyState& state, double gamma, double sigma,
                            double epsilon) {
  const DomainSpec& domain = system.grid().domain();
  const int n = domain.dim();
  const PinchingReport pr = pinching_check(domain);
  const double kappa0_min = pr.kappa0_inf;
  const double kappa0_max = pr.H_max / (n - 1);
  const auto f = system.f_active();
  const double fmin = *std::min_element(f.begin(), f.end());
  const double fmax = *std::max_element(f.begin(), f.end());

  BarrierParams p;
  p.gamma = gamma;
  p.sigma = sigma;
  p.epsilon = epsilon;
  p.K3 = std::max({2.0 / ((n - 1) * (1.0 - gamma) * kappa0_min),
                   gamma * kappa0_max * std::pow(fmax, 1.0 / n) / (n * fmin), 1.0});
  p.beta = 4.0 * n * domain.kappa_max() + 1.0;
  p.mu = std::min({p.mu_tilde(domain), 2.0 * epsilon / p.beta, epsilon / (2.0 * p.K3)});
  const SolutionConstants c = estimate_constants(system, state, p.mu);
  p.A = 1.01 * std::max({2.0 * c.C3 / p.mu, 3.0 * p.beta * c.C2,
                         (p.beta * c.C1 + 2.0 * domain.kappa_max() * n * fmax) / (gamma * kappa0_min)});
  return p;
}

BarrierSample barrier_at(const DiscreteSystem& system, const HomotopyState& state, const BarrierParams& params,
                         std::size_t active) {
  const Grid& grid = system.grid();
  const double bracket = robin_bracket(system, state, active);
  const double h = barrier_h(grid.domain(), params.K3, grid.position(active)).value;
  const double g = 1.0 - params.beta * h;
  BarrierSample s;
  s.G = (params.A + params.sigma * state.monitors.N) * h;
  s.P = g * bracket - s.G;
  s.Pbar = g * bracket + s.G;
  return s;
}

HInequalityReport verify_h_inequality(const DiscreteSystem& system, const HomotopyState& state,
                                      const BarrierParams& params) {
  const Grid& grid = system.grid();
  const DomainSpec& domain = grid.domain();
  params.validate(domain);
  const int n = grid.dim();
  HInequalityReport r;
  r.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t a : strip_points(grid, params.mu)) {
    const Eigen::VectorXd x = grid.position(a);
    const Eigen::MatrixXd F = linearization(hessian_stencil(state.field, grid, a), n - 1);
    const BarrierValue hv = barrier_h(domain, params.K3, x);
    const double kappa0 = domain.boundary_data(domain.project(x)).H / (n - 1);
    const double value = F.cwiseProduct(hv.hessian).sum() - params.gamma * kappa0 * (1.0 + F.trace());
    ++r.strip_points;
    if (value < 0.0) ++r.violations;
    if (value < r.min_value) {
      r.min_value = value;
      r.witness = x;
    }
  }
  return r;
}

SubBarrierReport verify_sub_barrier(const DiscreteSystem& system, const HomotopyState& state,
                                    const BarrierParams& params, double tol) {
  const Grid& grid = system.grid();
  params.validate(grid.domain());
  SubBarrierReport r;
  r.min_strip = std::numeric_limits<double>::infinity();
  for (std::size_t a : strip_points(grid, params.mu)) {
    const BarrierSample s = barrier_at(system, state, params, a);
    ++r.strip_points;
    if (s.P < -tol) ++r.violations;
    if (s.P < r.min_strip) {
      r.min_strip = s.P;
      r.witness = grid.position(a);
    }
  }
  const BoundaryScan b = scan_boundary(system, state);
  r.max_abs_boundary = b.max_abs;
  r.N = state.monitors.N;
  r.boundary_constant = b.constant;
  r.sup_unn = b.sup_unn;
  r.implied_bound = b.constant + params.A + params.sigma * r.N;
  r.bound_holds = r.sup_unn <= r.implied_bound;
  return r;
}

SuperBarrierReport verify_super_barrier(const DiscreteSystem& system, const HomotopyState& state,
                                        const BarrierParams& params, double tol) {
  const Grid& grid = system.grid();
  params.validate(grid.domain());
  SuperBarrierReport r;
  r.max_strip = -std::numeric_limits<double>::infinity();
  for (std::size_t a : strip_points(grid, params.mu)) {
    const BarrierSample s = barrier_at(system, state, params, a);
    ++r.strip_points;
    if (s.Pbar > tol) ++r.violations;
    if (s.Pbar > r.max_strip) {
      r.max_strip = s.Pbar;
      r.witness = grid.position(a);
    }
    r.max_gap_error = std::max(r.max_gap_error, std::abs(s.Pbar - s.P - 2.0 * s.G));
  }
  const BoundaryScan b = scan_boundary(system, state);
  r.max_abs_boundary = b.max_abs;
  r.N = state.monitors.N;
  r.boundary_constant = b.constant;
  r.inf_unn = b.inf_unn;
  r.implied_bound = -(b.constant + params.A + params.sigma * r.N);
  r.bound_holds = r.inf_unn >= r.implied_bound;
  return r;
}

}  // namespace wma
