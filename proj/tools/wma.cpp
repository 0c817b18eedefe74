// wma: solve det W(D^2 u) = f, u_nu = -u + phi on balls and ellipsoids.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "wma/config.hpp"
#include "wma/error.hpp"
#include "wma/kernels.hpp"
#include "wma/run.hpp"
#include "wma/selftest.hpp"

namespace {

using wma::ExitCode;

int cmd_selftest(std::uint64_t seed, int max_n) {
  wma::SelftestOptions opt;
  opt.seed = seed;
  opt.max_n = max_n;
  const auto report = wma::run_selftest(opt);
  for (const auto& s : report.suites) {
    std::printf("%-22s %6zu cases  %s\n", s.name.c_str(), s.cases, s.failures == 0 ? "ok" : "FAIL");
    if (s.failures > 0) std::printf("  %zu failures; first: %s\n", s.failures, s.first_failure.c_str());
  }
  std::printf("kernel: %s\n", wma::kernels::to_string(wma::kernels::active_isa()));
  std::printf("%s\n", report.passed() ? "selftest passed" : "selftest FAILED");
  return report.passed() ? wma::exit_ok : wma::exit_failure;
}

int cmd_check_domain(const wma::RunConfig& config) {
  const auto rep = wma::domain_report(wma::build_domain(config));
  std::cout << rep.dump(2) << '\n';
  return rep["passes"].get<bool>() ? wma::exit_ok : wma::exit_failure;
}

int cmd_solve(const wma::RunConfig& config) {
  const auto out = wma::run_solve(config, std::cerr);
  if (out.report.value("status", "") == "refused") {
    std::cerr << "refused: " << out.report["reason"].get<std::string>() << '\n';
    std::cout << out.report["pinching"].dump(2) << '\n';
    return out.exit_code;
  }
  for (const auto& run : out.report["runs"]) {
    std::cout << "resolution " << run["resolution"] << ": " << run["status"].get<std::string>();
    if (run.contains("error_inf")) std::cout << ", error_inf " << run["error_inf"].get<double>();
    std::cout << '\n';
  }
  if (out.report.contains("convergence")) {
    for (const auto& c : out.report["convergence"]) {
      std::cout << "convergence " << c["coarse"] << " -> " << c["fine"] << ": ratio " << c["ratio"].get<double>()
                << ", order " << c["order"].get<double>() << '\n';
    }
  }
  for (const auto& a : out.artifacts) std::cout << "wrote " << a.string() << '\n';
  std::cout << "digest " << out.report["digest"].get<std::string>() << '\n';
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for det W(D^2 u) = f with the Robin condition u_nu = -u + phi"};
  app.require_subcommand(1);

  std::uint64_t seed = 20240601;
  int max_n = 6;
  auto* selftest = app.add_subcommand("selftest", "Run the algebra property battery");
  selftest->add_option("--seed", seed, "Random seed");
  selftest->add_option("--max-n", max_n, "Largest dimension, at most 6");

  std::string config_path;
  std::vector<int> resolutions;
  int homotopy_steps = 0;
  bool verify_barriers = false;
  std::string report;
  bool force = false;
  auto* solve = app.add_subcommand("solve", "Run the homotopy continuation");
  solve->add_option("--config", config_path, "Run configuration file")->required();
  solve->add_option("--resolution", resolutions, "Grid resolution; repeat for a convergence study");
  solve->add_option("--homotopy-steps", homotopy_steps, "Uniform continuation steps");
  solve->add_flag("--verify-barriers", verify_barriers, "Attach barrier diagnostics");
  solve->add_option("--report", report, "Report format")->check(CLI::IsMember({"csv", "json"}));
  solve->add_flag("--force", force, "Solve even if the domain fails the pinching test");

  auto* check = app.add_subcommand("check-domain", "Print the curvature pinching report");
  check->add_option("--config", config_path, "Run configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wma::exit_ok : wma::exit_config;
  }

  try {
    if (*selftest) return cmd_selftest(seed, max_n);
    wma::RunConfig config = wma::load_config(config_path);
    if (*check) return cmd_check_domain(config);
    if (!resolutions.empty()) config.resolutions = resolutions;
    if (homotopy_steps > 0) config.solver.homotopy_steps = homotopy_steps;
    if (verify_barriers) config.verify_barriers = true;
    if (!report.empty()) config.report = report;
    if (force) config.force = true;
    return cmd_solve(config);
  } catch (const wma::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return wma::exit_config;
  } catch (const wma::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return wma::exit_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return wma::exit_failure;
  }
}
