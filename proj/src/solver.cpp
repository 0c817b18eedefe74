#include "wma/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#if defined(WMA_HAVE_UMFPACK)
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

#include "wma/error.hpp"
#include "wma/geometry.hpp"

namespace wma {

namespace {

#if defined(WMA_HAVE_UMFPACK)
using LinearSolver = Eigen::UmfPackLU<Eigen::SparseMatrix<double>>;
#else
using LinearSolver = Eigen::SparseLU<Eigen::SparseMatrix<double>>;
#endif

double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

void SolverConfig::validate() const {
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
  if (max_newton_iters < 1) throw ConfigError("max_newton_iters must be at least 1");
  if (homotopy_steps < 1) throw ConfigError("homotopy_steps must be at least 1");
  if (!(min_step > 0.0 && min_step <= 1.0)) throw ConfigError("min_step must lie in (0, 1]");
  if (!(damping > 0.0 && damping < 1.0)) throw ConfigError("damping must lie in (0, 1)");
  if (max_backtracks < 1) throw ConfigError("max_backtracks must be at least 1");
}

Monitors bound_monitors(const DiscreteField& field, const Grid& grid) {
  Monitors m;
  const double h = grid.spacing();
  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    m.sup_u = std::max(m.sup_u, std::abs(field.values[a]));
    m.sup_du = std::max(m.sup_du, gradient_stencil(field, grid, a).norm());
    m.sup_d2u = std::max(m.sup_d2u, spectral_radius(hessian_stencil(field, grid, a).matrix()));
  }
  for (const auto& c : grid.collocations()) {
    const auto& inner = c.inner[0];
    const Eigen::MatrixXd d2 = interp_hessian(inner, field.values, h);
    const Eigen::VectorXd du = interp_gradient(inner, field.values, h) + h * d2 * c.normal;
    m.sup_u = std::max(m.sup_u, std::abs(apply_row(c.trace, field.values)));
    m.sup_du = std::max(m.sup_du, du.norm());
    m.sup_d2u = std::max(m.sup_d2u, spectral_radius(d2));
    m.N = std::max(m.N, std::abs(apply_row(c.second_derivative, field.values)));
  }
  m.ratio = m.sup_d2u / (1.0 + m.N);
  return m;
}

HomotopyState make_state(const DiscreteSystem& system, DiscreteField field, double t) {
  HomotopyState s;
  s.t = t;
  s.residual_norm = system.residual(field, t).lpNorm<Eigen::Infinity>();
  s.ellipticity_margin = system.ellipticity_margin(field);
  s.monitors = bound_monitors(field, system.grid());
  s.field = std::move(field);
  return s;
}

DiscreteField initial_field(const Grid& grid) {
  return DiscreteField::sample(grid, [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); });
}

HomotopyState newton_solve(const HomotopyState& start, const DiscreteSystem& system,
                           const SolverConfig& config, NewtonTrace* trace) {
  config.validate();
  DiscreteField u = start.field;
  double margin = system.ellipticity_margin(u);
  if (!(margin > 0.0)) {
    throw PreconditionError("start is not strictly (n-1)-convex: ellipticity margin " + std::to_string(margin));
  }
  Eigen::VectorXd r = system.residual(u, start.t);
  double norm = r.lpNorm<Eigen::Infinity>();
  if (trace != nullptr) trace->residuals.push_back(norm);

  LinearSolver lu;
  bool analysed = false;
  for (int it = 0; it < config.max_newton_iters && !(norm <= config.newton_tol); ++it) {
    const Eigen::SparseMatrix<double> J = system.jacobian(u);
    if (!analysed) {
      lu.analyzePattern(J);
      analysed = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) throw StepFailure("Jacobian factorization failed");
    const Eigen::VectorXd delta = lu.solve(r);
    if (lu.info() != Eigen::Success || !delta.allFinite()) throw StepFailure("linear solve failed");

    double alpha = 1.0;
    bool accepted = false;
    DiscreteField trial;
    trial.values.resize(u.values.size());
    for (int b = 0; b <= config.max_backtracks; ++b, alpha *= config.damping) {
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        trial.values[i] = u.values[i] - alpha * delta(static_cast<Eigen::Index>(i));
      }
      const double trial_margin = system.ellipticity_margin(trial);
      if (!(trial_margin > 0.0)) continue;
      Eigen::VectorXd trial_r = system.residual(trial, start.t);
      const double trial_norm = trial_r.lpNorm<Eigen::Infinity>();
      if (trial_norm < norm) {
        u.values.swap(trial.values);
        r = std::move(trial_r);
        norm = trial_norm;
        margin = trial_margin;
        accepted = true;
        break;
      }
    }
    if (!accepted) throw StepFailure("line search floor reached");
    if (trace != nullptr) {
      trace->residuals.push_back(norm);
      trace->steps.push_back(alpha);
    }
  }
  if (!(norm <= config.newton_tol)) {
    throw StepFailure("no convergence in " + std::to_string(config.max_newton_iters) + " Newton iterations");
  }
  HomotopyState out;
  out.t = start.t;
  out.residual_norm = norm;
  out.ellipticity_margin = margin;
  out.monitors = bound_monitors(u, system.grid());
  out.field = std::move(u);
  return out;
}

ContinuationResult continuation(const DiscreteSystem& system, const SolverConfig& config,
                                const std::function<void(const HomotopyState&)>& on_accept) {
  config.validate();
  if (config.require_pinching) {
    const PinchingReport pr = pinching_check(system.grid().domain());
    if (!pr.passes) {
      throw PreconditionError("domain fails the curvature pinching condition kappa_max - kappa_min < H/(2(n-1)(n-2))");
    }
  }
  ContinuationResult result;
  auto accept = [&](HomotopyState s, int iterations) {
    result.path.push_back({s.t, s.residual_norm, s.ellipticity_margin, s.monitors, iterations});
    if (on_accept) on_accept(s);
    result.state = std::move(s);
  };

  HomotopyState start;
  start.field = initial_field(system.grid());
  start.t = 0.0;
  NewtonTrace trace0;
  HomotopyState first = newton_solve(start, system, config, &trace0);
  accept(std::move(first), static_cast<int>(trace0.steps.size()));

  const double base = 1.0 / config.homotopy_steps;
  double step = base;
  while (result.state.t < 1.0) {
    double t = std::min(1.0, result.state.t + step);
    if (1.0 - t < 1e-12) t = 1.0;
    HomotopyState guess;
    guess.t = t;
    guess.field = result.state.field;
    NewtonTrace trace;
    try {
      HomotopyState next = newton_solve(guess, system, config, &trace);
      accept(std::move(next), static_cast<int>(trace.steps.size()));
      step = std::min(base, 2.0 * step);
    } catch (const StepFailure& e) {
      ++result.rejected_steps;
      step *= 0.5;
      if (step < config.min_step * (1.0 - 1e-12)) {
        throw ContinuationFailure("step size underflow at t = " + std::to_string(result.state.t) + ": " + e.what(),
                                  result.state, result.path);
      }
    }
  }
  return result;
}

}  // namespace wma
