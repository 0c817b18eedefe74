#include "wma/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wma/combinatorics.hpp"
#include "wma/error.hpp"

namespace wma {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::vector<std::vector<int>> subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m < 0 || m > n) return out;
  out.reserve(binomial(n, m));
  std::vector<int> cur(m);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == n - m + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

EigenTuple::EigenTuple(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("EigenTuple: non-finite entry");
  }
  original_.resize(values.size());
  std::iota(original_.begin(), original_.end(), std::size_t{0});
  std::stable_sort(original_.begin(), original_.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  values_.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) values_[i] = values[original_[i]];
}

EigenTuple::EigenTuple(std::initializer_list<double> values)
    : EigenTuple(std::vector<double>(values)) {}

std::size_t EigenTuple::sorted_position(std::size_t original) const {
  auto it = std::find(original_.begin(), original_.end(), original);
  if (it == original_.end()) throw DomainError("EigenTuple: index out of range");
  return static_cast<std::size_t>(it - original_.begin());
}

std::vector<double> elementary_symmetric_all(std::span<const double> values) {
  const std::size_t p = values.size();
  std::vector<double> e(p + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < p; ++i) {
    // Descending j so e[j-1] still holds the coefficient without entry i.
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += values[i] * e[j - 1];
  }
  return e;
}

namespace {

void check_order(std::size_t p, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > p) {
    throw DomainError("elementary symmetric order k=" + std::to_string(k) +
                      " outside [0, " + std::to_string(p) + "]");
  }
}

// S_k for a single k; stops the recurrence at order k.
double sym_k(std::span<const double> values, int k) {
  std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t top = std::min<std::size_t>(i + 1, static_cast<std::size_t>(k));
    for (std::size_t j = top; j >= 1; --j) e[j] += values[i] * e[j - 1];
  }
  return e[static_cast<std::size_t>(k)];
}

}  // namespace

double elementary_symmetric(std::span<const double> values, int k) {
  check_order(values.size(), k);
  return sym_k(values, k);
}

double elementary_symmetric(const EigenTuple& lambda, int k) {
  return elementary_symmetric(lambda.values(), k);
}

double deleted_symmetric(const EigenTuple& lambda, int k, std::span<const std::size_t> omit) {
  const std::size_t p = lambda.size();
  check_order(p, k);
  if (omit.size() > 2) throw DomainError("deleted_symmetric: at most two omitted entries");
  for (std::size_t a = 0; a < omit.size(); ++a) {
    if (omit[a] >= p) throw DomainError("deleted_symmetric: omitted index out of range");
    for (std::size_t b = 0; b < a; ++b) {
      if (omit[a] == omit[b]) throw DomainError("deleted_symmetric: duplicate omitted index");
    }
  }
  std::vector<double> v(lambda.values().begin(), lambda.values().end());
  for (std::size_t i : omit) v[i] = 0.0;
  return sym_k(v, k);
}

double deleted_symmetric(const EigenTuple& lambda, int k, std::initializer_list<std::size_t> omit) {
  return deleted_symmetric(lambda, k, std::span<const std::size_t>(omit.begin(), omit.size()));
}

double IdentityReport::max_abs() const { return std::max({split, euler, deletion}); }

IdentityReport check_identities(const EigenTuple& lambda, int k) {
  const std::size_t p = lambda.size();
  if (k < 1 || static_cast<std::size_t>(k) > p) {
    throw DomainError("check_identities: k outside [1, p]");
  }
  const double sk = elementary_symmetric(lambda, k);
  IdentityReport r;
  double euler_sum = 0.0;
  double deletion_sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t omit[1] = {i};
    const double ski = deleted_symmetric(lambda, k, omit);
    const double skm1i = deleted_symmetric(lambda, k - 1, omit);
    r.split = std::max(r.split, std::abs(sk - (ski + lambda[i] * skm1i)));
    euler_sum += lambda[i] * skm1i;
    deletion_sum += ski;
  }
  r.euler = std::abs(euler_sum - k * sk);
  r.deletion = std::abs(deletion_sum - static_cast<double>(p - k) * sk);

  std::vector<double> mag(p);
  for (std::size_t i = 0; i < p; ++i) mag[i] = std::abs(lambda[i]);
  const double factor = std::max({static_cast<double>(k), static_cast<double>(p - k), 1.0});
  r.scale = std::max(factor * sym_k(mag, k), std::numeric_limits<double>::min());
  return r;
}

double newton_maclaurin_margin(const EigenTuple& lambda, int k, int l) {
  const std::size_t p = lambda.size();
  if (k <= l || l < 0) throw DomainError("newton_maclaurin_margin: requires k > l >= 0");
  check_order(p, k);
  const double sk = elementary_symmetric(lambda, k);
  const double sl = elementary_symmetric(lambda, l);
  if (sk < 0.0 || sl < 0.0) throw DomainError("newton_maclaurin_margin: tuple outside Gamma_k");
  const double lower = std::pow(sk / static_cast<double>(binomial(static_cast<int>(p), k)), 1.0 / k);
  const double upper =
      l == 0 ? 1.0 : std::pow(sl / static_cast<double>(binomial(static_cast<int>(p), l)), 1.0 / l);
  return upper - lower;
}

std::vector<double> root_gradient(const EigenTuple& lambda, int k) {
  const std::size_t p = lambda.size();
  if (k < 1) throw DomainError("root_gradient: k must be positive");
  check_order(p, k);
  const double sk = elementary_symmetric(lambda, k);
  if (sk <= 0.0) throw DomainError("root_gradient: S_k must be positive");
  const double front = std::pow(sk, 1.0 / k - 1.0) / k;
  std::vector<double> g(p);
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t omit[1] = {i};
    g[i] = front * deleted_symmetric(lambda, k - 1, omit);
  }
  return g;
}

double leading_term_margin(const EigenTuple& lambda, int k) {
  const std::size_t p = lambda.size();
  if (k < 1) throw DomainError("leading_term_margin: k must be positive");
  check_order(p, k);
  const std::size_t first[1] = {0};
  return lambda[0] * deleted_symmetric(lambda, k - 1, first) -
         static_cast<double>(k) / static_cast<double>(p) * elementary_symmetric(lambda, k);
}

}  // namespace wma
