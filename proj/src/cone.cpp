#include "wma/cone.hpp"

#include <string>

#include "wma/combinatorics.hpp"
#include "wma/error.hpp"

namespace wma {

ConeSpec::ConeSpec(int n_, int m_, int k_) : n(n_), m(m_), k(k_) {
  if (n < 1) throw DomainError("ConeSpec: n must be positive");
  if (m < 1 || m > n) throw DomainError("ConeSpec: m outside [1, n]");
  if (k < 1 || static_cast<std::uint64_t>(k) > binomial(n, m)) {
    throw DomainError("ConeSpec: k outside [1, C(n,m)]");
  }
}

std::size_t ConeSpec::lifted_dim() const { return binomial(n, m); }

EigenTuple lift_spectrum(const EigenTuple& mu, int m) {
  const int n = static_cast<int>(mu.size());
  if (m < 1 || m > n) {
    throw DomainError("lift_spectrum: m=" + std::to_string(m) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  std::vector<double> sums;
  sums.reserve(binomial(n, m));
  for (const auto& s : subsets(n, m)) {
    double acc = 0.0;
    for (int i : s) acc += mu[static_cast<std::size_t>(i)];
    sums.push_back(acc);
  }
  return EigenTuple(std::move(sums));
}

bool in_gamma_k(const EigenTuple& lambda, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > lambda.size()) {
    throw DomainError("in_gamma_k: k outside [1, p]");
  }
  const auto e = elementary_symmetric_all(lambda.values());
  for (int i = 1; i <= k; ++i) {
    if (!(e[static_cast<std::size_t>(i)] > 0.0)) return false;
  }
  return true;
}

bool in_generalized_cone(const EigenTuple& mu, const ConeSpec& spec) {
  if (static_cast<int>(mu.size()) != spec.n) throw DomainError("in_generalized_cone: size mismatch");
  return in_gamma_k(lift_spectrum(mu, spec.m), spec.k);
}

const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::strict: return "strict";
    case Convexity::weak: return "weak";
    case Convexity::none: return "none";
  }
  return "none";
}

double min_subset_sum(const EigenTuple& mu, int m) {
  const int n = static_cast<int>(mu.size());
  if (m < 1 || m > n) throw DomainError("min_subset_sum: m outside [1, n]");
  // Entries are sorted descending, so the m smallest are the tail.
  double acc = 0.0;
  for (int i = n - m; i < n; ++i) acc += mu[static_cast<std::size_t>(i)];
  return acc;
}

Convexity m_convexity(const EigenTuple& mu, int m) {
  const double s = min_subset_sum(mu, m);
  if (s > 0.0) return Convexity::strict;
  if (s >= 0.0) return Convexity::weak;
  return Convexity::none;
}

}  // namespace wma
