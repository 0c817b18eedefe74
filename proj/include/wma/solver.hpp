#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "wma/discretize.hpp"

namespace wma {

struct SolverConfig {
  double newton_tol = 1e-9;  ///< on the residual infinity norm
  int max_newton_iters = 20;
  int homotopy_steps = 10;
  double min_step = 1.0 / 1280.0;
  double damping = 0.5;      ///< backtracking factor
  int max_backtracks = 30;
  /// Refuse domains that fail the curvature pinching test.
  bool require_pinching = true;

  /// Throws ConfigError.
  void validate() const;
};

/// A priori bound monitors; these are diagnostics, not proofs.
struct Monitors {
  double sup_u = 0.0;
  double sup_du = 0.0;
  double sup_d2u = 0.0;  ///< largest |eigenvalue| of D^2 u
  double N = 0.0;        ///< sup over the boundary of |u_nunu|
  double ratio = 0.0;    ///< sup_d2u / (1 + N)
};

/// Sup norms over the active points and the boundary collocation points. On the
/// boundary Du(y) = Du(p) + h D^2u(p) nu and D^2u(y) = D^2u(p), p = y - h nu.
Monitors bound_monitors(const DiscreteField& field, const Grid& grid);

struct HomotopyState {
  double t = 0.0;
  DiscreteField field;
  double residual_norm = 0.0;
  double ellipticity_margin = 0.0;
  Monitors monitors;
};

/// Fills the residual norm, margin and monitors for `field` at `t`.
HomotopyState make_state(const DiscreteSystem& system, DiscreteField field, double t);

/// u = |x|^2/2, the exact t = 0 solution.
DiscreteField initial_field(const Grid& grid);

struct NewtonTrace {
  std::vector<double> residuals;  ///< before the first step and after each accepted step
  std::vector<double> steps;      ///< accepted step lengths
};

/// Damped Newton at fixed t. Throws PreconditionError for an inadmissible start
/// and StepFailure when it does not converge.
HomotopyState newton_solve(const HomotopyState& start, const DiscreteSystem& system,
                           const SolverConfig& config, NewtonTrace* trace = nullptr);

struct PathRow {
  double t = 0.0;
  double residual = 0.0;
  double margin = 0.0;
  Monitors monitors;
  int newton_iterations = 0;
};

struct ContinuationResult {
  HomotopyState state;
  std::vector<PathRow> path;
  int rejected_steps = 0;
};

/// Step size underflow; carries the last accepted state.
class ContinuationFailure : public std::runtime_error {
 public:
  ContinuationFailure(const std::string& what, HomotopyState last, std::vector<PathRow> path)
      : std::runtime_error(what), last_good(std::move(last)), path(std::move(path)) {}

  HomotopyState last_good;
  std::vector<PathRow> path;
};

/// Natural continuation from t = 0, u = |x|^2/2 to t = 1. Uniform steps of
/// 1/homotopy_steps; a failed step is retried with half the step down to min_step.
/// `on_accept` sees every accepted state, t = 0 included.
ContinuationResult continuation(const DiscreteSystem& system, const SolverConfig& config,
                                const std::function<void(const HomotopyState&)>& on_accept = {});

}  // namespace wma
