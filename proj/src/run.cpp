#include "wma/run.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "wma/barriers.hpp"
#include "wma/error.hpp"
#include "wma/io.hpp"
#include "wma/solver.hpp"

namespace wma {

namespace {

using nlohmann::json;

json monitors_json(const Monitors& m) {
  return {{"sup_u", m.sup_u}, {"sup_du", m.sup_du}, {"sup_d2u", m.sup_d2u}, {"N", m.N}, {"ratio", m.ratio}};
}

json path_json(const std::vector<PathRow>& path) {
  json rows = json::array();
  for (const auto& r : path) {
    json row = {{"t", r.t}, {"residual", r.residual}, {"margin", r.margin}, {"newton_iterations", r.newton_iterations}};
    row.update(monitors_json(r.monitors));
    rows.push_back(row);
  }
  return rows;
}

json vec_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json barriers_json(const DiscreteSystem& system, const HomotopyState& state, const RunConfig& config) {
  try {
    const BarrierParams p = recipe_params(system, state, config.gamma, config.sigma, config.epsilon);
    const auto h = verify_h_inequality(system, state, p);
    const auto sub = verify_sub_barrier(system, state, p);
    const auto sup = verify_super_barrier(system, state, p);
    return {
        {"params",
         {{"K3", p.K3}, {"beta", p.beta}, {"A", p.A}, {"sigma", p.sigma}, {"mu", p.mu}, {"gamma", p.gamma},
          {"epsilon", p.epsilon}}},
        {"h_inequality",
         {{"strip_points", h.strip_points}, {"min_value", h.min_value}, {"violations", h.violations},
          {"witness", vec_json(h.witness)}}},
        {"sub",
         {{"strip_points", sub.strip_points}, {"min_strip", sub.min_strip}, {"violations", sub.violations},
          {"max_abs_boundary", sub.max_abs_boundary}, {"N", sub.N}, {"boundary_constant", sub.boundary_constant},
          {"sup_unn", sub.sup_unn}, {"implied_bound", sub.implied_bound}, {"bound_holds", sub.bound_holds}}},
        {"super",
         {{"strip_points", sup.strip_points}, {"max_strip", sup.max_strip}, {"violations", sup.violations},
          {"max_abs_boundary", sup.max_abs_boundary}, {"N", sup.N}, {"boundary_constant", sup.boundary_constant},
          {"inf_unn", sup.inf_unn}, {"implied_bound", sup.implied_bound}, {"bound_holds", sup.bound_holds},
          {"max_gap_error", sup.max_gap_error}}},
    };
  } catch (const std::exception& e) {
    return {{"error", e.what()}};
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double solution_error(const DiscreteField& field, const Grid& grid, const ScalarField& exact) {
  double e = 0.0;
  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    e = std::max(e, std::abs(field.values[a] - exact(grid.position(a))));
  }
  for (const auto& c : grid.collocations()) {
    e = std::max(e, std::abs(apply_row(c.trace, field.values) - exact(c.point)));
  }
  return e;
}

json domain_report(const DomainSpec& domain) {
  const PinchingReport r = pinching_check(domain);
  json j = {
      {"domain", domain.describe()},
      {"n", r.n},
      {"samples", r.samples},
      {"passes", r.passes},
      {"kappa_min", r.kappa_min},
      {"kappa_max", r.kappa_max},
      {"H_min", r.H_min},
      {"H_max", r.H_max},
      {"mu0", r.mu0},
      {"kappa0_inf", r.kappa0_inf},
      {"max_spread", r.max_spread},
      {"worst_margin", r.worst_margin},
      {"witness", vec_json(r.witness)},
  };
  if (r.ratio_form_passes) {
    j["ratio_form_passes"] = *r.ratio_form_passes;
    j["ratio_form_disagreements"] = r.ratio_form_disagreements;
  }
  return j;
}

SolveOutcome run_solve(const RunConfig& config, std::ostream& log) {
  config.validate();
  SolveOutcome out;
  const DomainSpec domain = build_domain(config);
  const ProblemSpec problem = build_problem(config, domain);
  const std::filesystem::path dir = config.output_dir;
  std::filesystem::create_directories(dir);

  json& rep = out.report;
  rep["digest"] = config_digest(config);
  rep["case"] = config.case_name;
  rep["domain"] = domain.describe();
  rep["n"] = config.n;
  rep["runs"] = json::array();

  if (!config.force) {
    const PinchingReport pr = pinching_check(domain);
    if (!pr.passes) {
      rep["status"] = "refused";
      rep["reason"] =
          "domain fails the curvature pinching condition kappa_max - kappa_min < H/(2(n-1)(n-2)) "
          "required for existence; rerun with --force to solve anyway";
      rep["pinching"] = domain_report(domain);
      out.exit_code = exit_refused;
      return out;
    }
  }

  SolverConfig solver = config.solver;
  solver.require_pinching = !config.force;
  std::vector<std::pair<int, double>> errors;
  for (int res : config.resolutions) {
    json run = {{"resolution", res}};
    const Grid grid = Grid::build(domain, res);
    const DiscreteSystem system(grid, problem);
    run["h"] = grid.spacing();
    run["active_count"] = grid.active_count();
    run["closure_count"] = grid.closure_count();
    log << "resolution " << res << ": " << grid.active_count() << " active, " << grid.closure_count()
        << " closure unknowns\n";
    const std::string tag = "r" + std::to_string(res);
    const std::string ext = config.encoding == "binary" ? ".wma" : ".txt";
    try {
      const ContinuationResult result = continuation(system, solver, [&](const HomotopyState& s) {
        log << "  t = " << s.t << "  residual " << s.residual_norm << "  margin " << s.ellipticity_margin << '\n';
      });
      run["status"] = "ok";
      run["rejected_steps"] = result.rejected_steps;
      run["path"] = path_json(result.path);
      const auto dump = dir / ("solution_" + tag + ext);
      write_solution(dump, grid, result.state.field, result.state.t, config.encoding == "binary");
      out.artifacts.push_back(dump);
      run["solution"] = dump.filename().string();
      if (problem.exact) {
        // Below 1e-10 the error is round-off and a ratio says nothing.
        const double e = solution_error(result.state.field, grid, problem.exact);
        run["error_inf"] = e;
        if (e > 1e-10) errors.emplace_back(res, e);
      }
      if (config.verify_barriers) run["barriers"] = barriers_json(system, result.state, config);
      if (config.report == "csv") {
        const auto csv = dir / ("path_" + tag + ".csv");
        write_text(csv, path_csv(result.path));
        out.artifacts.push_back(csv);
      }
    } catch (const ContinuationFailure& e) {
      log << "  continuation failed: " << e.what() << '\n';
      run["status"] = "failed";
      run["reason"] = e.what();
      run["path"] = path_json(e.path);
      const auto dump = dir / ("last_good_" + tag + ext);
      write_solution(dump, grid, e.last_good.field, e.last_good.t, config.encoding == "binary");
      out.artifacts.push_back(dump);
      run["last_good"] = dump.filename().string();
      run["last_good_t"] = e.last_good.t;
      out.exit_code = exit_failure;
    }
    rep["runs"].push_back(run);
  }

  if (errors.size() >= 2) {
    json conv = json::array();
    std::string csv = "coarse,fine,error_coarse,error_fine,ratio,order\n";
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const auto [r0, e0] = errors[i - 1];
      const auto [r1, e1] = errors[i];
      const double ratio = e0 / e1;
      const double order = std::log(ratio) / std::log(static_cast<double>(r1 - 1) / (r0 - 1));
      conv.push_back({{"coarse", r0}, {"fine", r1}, {"error_coarse", e0}, {"error_fine", e1}, {"ratio", ratio},
                      {"order", order}});
      csv += std::to_string(r0) + ',' + std::to_string(r1) + ',' + g17(e0) + ',' + g17(e1) + ',' + g17(ratio) + ',' +
             g17(order) + '\n';
    }
    rep["convergence"] = conv;
    if (config.report == "csv") {
      write_text(dir / "convergence.csv", csv);
      out.artifacts.push_back(dir / "convergence.csv");
    }
  }
  rep["status"] = out.exit_code == exit_ok ? "ok" : "failed";
  if (config.report == "json") {
    write_text(dir / "report.json", rep.dump(2) + '\n');
    out.artifacts.push_back(dir / "report.json");
  } else if (config.verify_barriers) {
    json b = json::object();
    for (const auto& run : rep["runs"]) {
      if (run.contains("barriers")) b[std::to_string(run["resolution"].get<int>())] = run["barriers"];
    }
    write_text(dir / "barriers.json", json{{"digest", rep["digest"]}, {"barriers", b}}.dump(2) + '\n');
    out.artifacts.push_back(dir / "barriers.json");
  }
  return out;
}

}  // namespace wma
