#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wma/woperator.hpp"

namespace wma {

/// W assembler under test; the default is assemble_w.
using WAssembler = std::function<Eigen::MatrixXd(const HessianMatrix&, int)>;

struct SelftestOptions {
  std::uint64_t seed = 20240601;
  int max_n = 6;    ///< largest dimension exercised; at most 6
  int scale = 1;    ///< multiplies the per-suite case counts
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;  ///< serialized failing input, empty when none
};

struct SelftestReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

/// Property battery over the symmetric-function, cone and W-operator algebra.
/// Throws ConfigError for max_n outside [3, 6].
SelftestReport run_selftest(const SelftestOptions& options, const WAssembler& assemble = {});

}  // namespace wma
