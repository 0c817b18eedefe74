#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wma/discretize.hpp"
#include "wma/geometry.hpp"
#include "wma/solver.hpp"

namespace wma {

/// Run configuration. The file format is one `key = value` per line; `#` starts a
/// comment; list values are separated by spaces or commas.
///
///   n                 dimension (default 3)
///   case              ball-constant | ball-manufactured-exp | ellipsoid-near-sphere | sampled
///   domain            ball | ellipsoid (default: the case's domain)
///   radius            ball radius (default 1)
///   axes              ellipsoid semi-axes, n values
///   center            n values (default origin)
///   f_file, phi_file  sampled arrays for case = sampled, relative to the config file
///   resolution        one or more grid resolutions (default 17)
///   newton_tol, max_newton_iters, homotopy_steps, min_step, damping
///   verify_barriers   true | false
///   gamma, sigma, epsilon   barrier parameters (defaults 0.5, 0.5, 0.45)
///   report            json | csv (default json)
///   encoding          binary | text, for solution dumps (default binary)
///   output_dir        default "."
///   force             true | false, skip the pinching gate
struct RunConfig {
  int n = 3;
  std::string case_name = "ball-constant";
  std::string domain_kind;  ///< empty: take the case's domain
  double radius = 1.0;
  std::vector<double> axes;
  std::vector<double> center;
  std::string f_file;
  std::string phi_file;
  std::vector<int> resolutions{17};
  SolverConfig solver;
  bool verify_barriers = false;
  double gamma = 0.5;
  double sigma = 0.5;
  double epsilon = 0.45;
  std::string report = "json";
  std::string encoding = "binary";
  std::string output_dir = ".";
  bool force = false;
  std::filesystem::path base_dir;  ///< directory of the config file; not part of the digest

  /// Throws ConfigError.
  void validate() const;
};

/// Throws ConfigError on unknown keys or malformed values.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Sorted `key = value` lines covering every effective setting.
std::string canonical_form(const RunConfig& config);
/// FNV-1a 64 of the canonical form, as 16 hex digits.
std::string config_digest(const RunConfig& config);

DomainSpec build_domain(const RunConfig& config);
ProblemSpec build_problem(const RunConfig& config, const DomainSpec& domain);

}  // namespace wma
