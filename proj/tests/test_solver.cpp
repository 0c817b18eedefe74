#include <doctest.h>

#include <cmath>

#include "wma/cases.hpp"
#include "wma/error.hpp"
#include "wma/solver.hpp"

using namespace wma;

namespace {

bool same_path(const std::vector<PathRow>& a, const std::vector<PathRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a[i], &y = b[i];
    if (x.t != y.t || x.residual != y.residual || x.margin != y.margin || x.newton_iterations != y.newton_iterations ||
        x.monitors.sup_u != y.monitors.sup_u || x.monitors.sup_du != y.monitors.sup_du ||
        x.monitors.sup_d2u != y.monitors.sup_d2u || x.monitors.N != y.monitors.N) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("config validation") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    c.newton_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SolverConfig{};
    c.homotopy_steps = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SolverConfig{};
    c.damping = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("t = 0 start is already converged") {
    const NamedCase c = named_case("ball-manufactured-exp", 3);
    const Grid g = Grid::build(c.domain, 13);
    const DiscreteSystem sys(g, c.problem);
    NewtonTrace trace;
    const HomotopyState out = newton_solve(make_state(sys, initial_field(g), 0.0), sys, SolverConfig{}, &trace);
    CHECK(trace.steps.size() <= 1);
    CHECK(out.residual_norm < 1e-11);
    CHECK(out.ellipticity_margin == doctest::Approx(2.0));
  }

  TEST_CASE("perturbed start converges quadratically") {
    const NamedCase c = named_case("ball-manufactured-exp", 3);
    const Grid g = Grid::build(c.domain, 13);
    const DiscreteSystem sys(g, c.problem);
    const DiscreteField start = DiscreteField::sample(g, [](const Eigen::VectorXd& x) {
      return 0.5 * x.squaredNorm() + 0.01 * std::sin(x(0) + 2.0 * x(1) - x(2));
    });
    SolverConfig cfg;
    cfg.newton_tol = 1e-12;
    NewtonTrace trace;
    const HomotopyState out = newton_solve(make_state(sys, start, 0.0), sys, cfg, &trace);
    CHECK(out.residual_norm <= 1e-12);
    const auto& r = trace.residuals;
    REQUIRE(r.size() >= 3);
    for (double s : trace.steps) CHECK(s == 1.0);
    // r_{k+1} <= C r_k^2 with a fixed C once the residual is small
    for (std::size_t k = 1; k + 1 < r.size(); ++k) {
      if (r[k + 1] < 1e-11) break;
      CHECK(r[k + 1] <= 10.0 * r[k] * r[k] / r[0]);
    }
    const DiscreteField exact = initial_field(g);
    double diff = 0.0;
    for (std::size_t i = 0; i < exact.values.size(); ++i) {
      diff = std::max(diff, std::abs(out.field.values[i] - exact.values[i]));
    }
    CHECK(diff < 1e-10);
  }

  TEST_CASE("inadmissible start is refused") {
    const NamedCase c = named_case("ball-constant", 3);
    const Grid g = Grid::build(c.domain, 9);
    const DiscreteSystem sys(g, c.problem);
    HomotopyState s;
    s.field = DiscreteField::sample(g, [](const Eigen::VectorXd& x) { return -0.5 * x.squaredNorm(); });
    CHECK_THROWS_AS(newton_solve(s, sys, SolverConfig{}), PreconditionError);
  }

  TEST_CASE("monitors for the start field on the unit ball") {
    const NamedCase c = named_case("ball-constant", 3);
    const Grid g = Grid::build(c.domain, 13);
    const Monitors m = bound_monitors(initial_field(g), g);
    CHECK(m.sup_u == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.sup_du == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.sup_d2u == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.N == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.ratio == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("constant-data path is constant") {
    const NamedCase c = named_case("ball-constant", 3);
    const Grid g = Grid::build(c.domain, 11);
    const DiscreteSystem sys(g, c.problem);
    const ContinuationResult r = continuation(sys, SolverConfig{});
    REQUIRE(r.path.size() == 11);
    CHECK(r.rejected_steps == 0);
    CHECK(r.state.t == 1.0);
    for (const auto& row : r.path) {
      CHECK(row.margin == doctest::Approx(2.0));
      CHECK(row.residual < 1e-11);
      CHECK(row.monitors.sup_u == doctest::Approx(0.5));
      CHECK(row.monitors.N == doctest::Approx(1.0));
      CHECK(row.newton_iterations == 0);
    }
  }

  TEST_CASE("manufactured path stays admissible and is deterministic") {
    const NamedCase c = named_case("ball-manufactured-exp", 3);
    const Grid g = Grid::build(c.domain, 9);
    const DiscreteSystem sys(g, c.problem);
    std::size_t seen = 0;
    const ContinuationResult a = continuation(sys, SolverConfig{}, [&](const HomotopyState& s) {
      ++seen;
      CHECK(s.ellipticity_margin > 0.0);
      CHECK(s.residual_norm <= 1e-9);
    });
    CHECK(seen == a.path.size());
    CHECK(a.state.t == 1.0);
    const ContinuationResult b = continuation(sys, SolverConfig{});
    CHECK(same_path(a.path, b.path));
    CHECK(a.state.field.values == b.state.field.values);
  }

  TEST_CASE("pinching gate blocks continuation") {
    const DomainSpec e = DomainSpec::ellipsoid(Eigen::Vector3d(1.0, 1.0, 1.5));
    const Grid g = Grid::build(e, 13);
    const DiscreteSystem sys(g, case_problem("ball-manufactured-exp", e));
    CHECK_THROWS_AS(continuation(sys, SolverConfig{}), PreconditionError);
  }

  TEST_CASE("step underflow reports the last good state") {
    const NamedCase c = named_case("ball-manufactured-exp", 3);
    const Grid g = Grid::build(c.domain, 9);
    const DiscreteSystem sys(g, c.problem);
    SolverConfig cfg;
    cfg.max_newton_iters = 1;
    cfg.min_step = 0.05;
    try {
      continuation(sys, cfg);
      FAIL("expected a continuation failure");
    } catch (const ContinuationFailure& e) {
      CHECK(e.last_good.t == 0.0);
      CHECK(e.path.size() == 1);
    }
  }
}
