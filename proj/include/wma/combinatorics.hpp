#pragma once

#include <cstdint>
#include <vector>

namespace wma {

/// Exact binomial coefficient C(n, k); zero when k is outside [0, n].
std::uint64_t binomial(int n, int k);

/// All strictly increasing m-tuples drawn from {0, ..., n-1}, in dictionary order.
std::vector<std::vector<int>> subsets(int n, int m);

}  // namespace wma
