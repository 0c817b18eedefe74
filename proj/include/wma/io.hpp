#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wma/barriers.hpp"
#include "wma/discretize.hpp"
#include "wma/solver.hpp"

namespace wma {

// Array files: one line of JSON header, then the payload.
//
// Solution dump, format "wma-field":
//   {"format":"wma-field","version":1,"encoding":"binary-le"|"text","n":..,"h":..,
//    "lo":[..],"dims":[..],"resolution":..,"active_count":..,"closure_count":..,"t":..}
//   followed by unknown_count node indices (uint64) then unknown_count values (float64).
//   Node index = sum_i k_i dims^i over the padded grid, axis 0 fastest.
//   Text payload: one "node value" pair per line, values printed with %.17g.
//
// Sampled array, format "wma-sampled":
//   {"format":"wma-sampled","version":1,"encoding":..,"n":..,"h":..,"lo":[..],"dims":[..]}
//   followed by prod(dims) float64 values, axis 0 fastest.

struct SolutionDump {
  int n = 0;
  double h = 0.0;
  std::vector<double> lo;
  std::vector<int> dims;
  int resolution = 0;
  std::size_t active_count = 0;
  std::size_t closure_count = 0;
  double t = 0.0;
  std::vector<std::uint64_t> nodes;
  std::vector<double> values;
};

void write_solution(const std::filesystem::path& path, const Grid& grid, const DiscreteField& field, double t,
                    bool binary = true);
/// Throws ConfigError on a malformed file.
SolutionDump read_solution(const std::filesystem::path& path);
/// The dump's values as a field on `grid`. Throws ConfigError if the grid differs.
DiscreteField field_from_dump(const SolutionDump& dump, const Grid& grid);

void write_sampled(const std::filesystem::path& path, const SampledField& field, bool binary = true);
SampledField read_sampled(const std::filesystem::path& path);

/// Report columns t,residual,margin,sup_u,sup_du,sup_d2u,N,ratio.
std::string path_csv(const std::vector<PathRow>& path);

}  // namespace wma
