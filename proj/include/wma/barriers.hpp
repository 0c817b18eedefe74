#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "wma/discretize.hpp"
#include "wma/geometry.hpp"
#include "wma/solver.hpp"

namespace wma {

/// Constants of the boundary barriers: h = -d + K3 d^2, g = 1 - beta h, G = (A + sigma N) h.
struct BarrierParams {
  double K3 = 0.0;
  double beta = 0.0;
  double A = 0.0;
  double sigma = 0.5;
  double mu = 0.0;  ///< strip width
  double gamma = 0.5;
  double epsilon = 0.45;

  /// Largest strip width the h-lemma allows: min{1/(4K3), (2-gamma)/(2K3), 1/(2 kappa_min), mu0}.
  double mu_tilde(const DomainSpec& domain) const;
  /// Throws DomainError when a range or the strip constraints mu <= mu_tilde and
  /// beta mu / 2 <= epsilon fail.
  void validate(const DomainSpec& domain) const;
};

/// Solution norms standing in for the unnamed constants of the barrier lemmas.
struct SolutionConstants {
  double C1 = 0.0;  ///< sup|u| + sup|Du|
  double C2 = 0.0;  ///< (1 + kappa_max)(sup|Du| + sup|D^2u|)
  double C3 = 0.0;  ///< sup over the strip of |Du.nu - phi_eff|
};

/// Phi of the Robin condition at parameter t, extended into the strip along the normal:
/// t phi(x) + (1 - t)(x.nu + |x|^2/2).
double robin_datum(const ProblemSpec& problem, const DomainSpec& domain, const Eigen::VectorXd& x, double t);

SolutionConstants estimate_constants(const DiscreteSystem& system, const HomotopyState& state, double mu);

/// K3, beta, mu and A from the lemma recipes with C1..C3 estimated from `state`.
BarrierParams recipe_params(const DiscreteSystem& system, const HomotopyState& state, double gamma = 0.5,
                            double sigma = 0.5, double epsilon = 0.45);

struct HInequalityReport {
  std::size_t strip_points = 0;
  double min_value = 0.0;  ///< min of F^{ij} h_ij - gamma kappa_0 (1 + sum F^{ii})
  std::size_t violations = 0;
  Eigen::VectorXd witness;
};

struct SubBarrierReport {
  std::size_t strip_points = 0;
  double min_strip = 0.0;     ///< min P over the strip
  std::size_t violations = 0; ///< strip points with P < -tol
  double max_abs_boundary = 0.0;
  double N = 0.0;
  double boundary_constant = 0.0;  ///< sup over the boundary of |D_nu phi_eff|
  double sup_unn = 0.0;
  double implied_bound = 0.0;      ///< boundary_constant + A + sigma N
  bool bound_holds = false;        ///< sup u_nunu <= implied_bound
  Eigen::VectorXd witness;
};

struct SuperBarrierReport {
  std::size_t strip_points = 0;
  double max_strip = 0.0;
  std::size_t violations = 0;
  double max_abs_boundary = 0.0;
  double N = 0.0;
  double boundary_constant = 0.0;
  double inf_unn = 0.0;
  double implied_bound = 0.0;      ///< -(boundary_constant + A + sigma N)
  bool bound_holds = false;        ///< inf u_nunu >= implied_bound
  double max_gap_error = 0.0;      ///< max |Pbar - P - 2G| over the strip
  Eigen::VectorXd witness;
};

/// Strip points are active points with d < mu. An empty strip is a ConfigError.
HInequalityReport verify_h_inequality(const DiscreteSystem& system, const HomotopyState& state,
                                      const BarrierParams& params);
SubBarrierReport verify_sub_barrier(const DiscreteSystem& system, const HomotopyState& state,
                                    const BarrierParams& params, double tol = 1e-8);
SuperBarrierReport verify_super_barrier(const DiscreteSystem& system, const HomotopyState& state,
                                        const BarrierParams& params, double tol = 1e-8);

/// P and Pbar at one active point.
struct BarrierSample {
  double P = 0.0;
  double Pbar = 0.0;
  double G = 0.0;
};
BarrierSample barrier_at(const DiscreteSystem& system, const HomotopyState& state, const BarrierParams& params,
                         std::size_t active);

}  // namespace wma
