#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace wma {

/// Real tuple of (possibly lifted) eigenvalues, kept sorted in descending order.
///
/// The permutation applied on construction is recorded so that callers can map
/// sorted positions back to the order the values were supplied in.
class EigenTuple {
 public:
  EigenTuple() = default;
  explicit EigenTuple(std::vector<double> values);
  EigenTuple(std::initializer_list<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Index in the constructor argument of the entry now at sorted position `pos`.
  std::size_t original_index(std::size_t pos) const { return original_[pos]; }
  /// Sorted position of the entry supplied at index `original`.
  std::size_t sorted_position(std::size_t original) const;

 private:
  std::vector<double> values_;
  std::vector<std::size_t> original_;
};

/// S_0, ..., S_p of the entries, by the incremental coefficient recurrence.
std::vector<double> elementary_symmetric_all(std::span<const double> values);

/// S_k of the entries; S_0 = 1. Throws DomainError unless 0 <= k <= p.
double elementary_symmetric(std::span<const double> values, int k);
double elementary_symmetric(const EigenTuple& lambda, int k);

/// S_k with the entries at the given sorted positions set to zero (S_k(lambda|i),
/// S_k(lambda|ij)). At most two positions; duplicates or out-of-range positions
/// throw DomainError.
double deleted_symmetric(const EigenTuple& lambda, int k, std::span<const std::size_t> omit);
double deleted_symmetric(const EigenTuple& lambda, int k, std::initializer_list<std::size_t> omit);

/// Discrepancies in the three deletion identities for S_k:
///   split:    S_k = S_k(lambda|i) + lambda_i S_{k-1}(lambda|i)   (worst i)
///   euler:    sum_i lambda_i S_{k-1}(lambda|i) = k S_k
///   deletion: sum_i S_k(lambda|i) = (p - k) S_k
struct IdentityReport {
  double split = 0.0;
  double euler = 0.0;
  double deletion = 0.0;
  /// Bound on the magnitude of every intermediate term: max(k, p-k, 1) * S_k(|lambda|).
  double scale = 1.0;

  double max_abs() const;
  double max_relative() const { return max_abs() / scale; }
  bool holds(double rtol) const { return max_relative() <= rtol; }
};

IdentityReport check_identities(const EigenTuple& lambda, int k);

/// (S_l / C(p,l))^(1/l) - (S_k / C(p,k))^(1/k), with the l = 0 term read as 1.
/// Nonnegative on the Garding cone Gamma_k. Throws DomainError if k <= l or if
/// S_k or S_l is negative.
double newton_maclaurin_margin(const EigenTuple& lambda, int k, int l);

/// Gradient of S_k^(1/k) with respect to the sorted entries, via S_{k-1}(lambda|i).
std::vector<double> root_gradient(const EigenTuple& lambda, int k);

/// lambda_1 S_{k-1}(lambda|1) - (k/p) S_k(lambda), lambda_1 the largest entry.
double leading_term_margin(const EigenTuple& lambda, int k);

}  // namespace wma
