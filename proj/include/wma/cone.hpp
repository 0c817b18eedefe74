#pragma once

#include <cstddef>

#include "wma/symfun.hpp"

namespace wma {

/// Parameters of the generalized Garding cone Gamma_k^(m) in R^n.
struct ConeSpec {
  int n;
  int m;
  int k;

  /// Validates 1 <= m <= n and 1 <= k <= C(n, m); throws DomainError otherwise.
  ConeSpec(int n, int m, int k);

  /// C(n, m), the length of a lifted spectrum.
  std::size_t lifted_dim() const;
};

/// All m-subset sums of mu, sorted descending. These are the eigenvalues of W.
EigenTuple lift_spectrum(const EigenTuple& mu, int m);

/// True iff S_i(lambda) > 0 for every 1 <= i <= k.
bool in_gamma_k(const EigenTuple& lambda, int k);

/// mu in Gamma_k^(m): the lifted spectrum lies in Gamma_k.
bool in_generalized_cone(const EigenTuple& mu, const ConeSpec& spec);

enum class Convexity { none, weak, strict };

const char* to_string(Convexity c);

/// Sum of the m smallest entries of mu.
double min_subset_sum(const EigenTuple& mu, int m);

/// strict if every m-subset sum is positive, weak if all are nonnegative.
Convexity m_convexity(const EigenTuple& mu, int m);

}  // namespace wma
