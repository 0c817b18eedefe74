#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wma {

/// Principal data of the boundary at a point. Curvatures are taken with respect
/// to the inner normal, so they are positive on a convex boundary.
struct BoundaryData {
  Eigen::VectorXd point;
  Eigen::VectorXd nu;          ///< outward unit normal
  Eigen::VectorXd kappa;       ///< n-1 principal curvatures, ascending
  Eigen::MatrixXd directions;  ///< n x (n-1), principal directions as columns
  double H = 0.0;              ///< sum of the principal curvatures
};

/// A strictly convex domain with closed-form boundary geometry: a ball or an
/// axis-aligned ellipsoid, n >= 3.
class DomainSpec {
 public:
  enum class Kind { ball, ellipsoid };

  static DomainSpec ball(int n, double radius, Eigen::VectorXd center = {});
  static DomainSpec ellipsoid(Eigen::VectorXd axes, Eigen::VectorXd center = {});

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(axes_.size()); }
  const Eigen::VectorXd& center() const { return center_; }
  /// Semi-axes; all equal to the radius for a ball.
  const Eigen::VectorXd& axes() const { return axes_; }
  double half_width() const { return axes_.maxCoeff(); }

  /// Global curvature bounds over the whole boundary.
  double kappa_min() const;
  double kappa_max() const;
  /// Width of the strip on which d is smooth: the smallest focal distance 1/kappa_max.
  double mu0() const { return 1.0 / kappa_max(); }

  /// Distance to the boundary, positive inside and negative outside.
  double signed_distance(const Eigen::VectorXd& x) const;
  /// Closest boundary point. Unique everywhere outside and inside the strip.
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  /// Boundary data at a point assumed to lie on the boundary.
  BoundaryData boundary_data(const Eigen::VectorXd& y) const;
  Eigen::VectorXd outward_normal(const Eigen::VectorXd& y) const;

  std::string describe() const;

 private:
  DomainSpec(Kind kind, Eigen::VectorXd axes, Eigen::VectorXd center);

  Kind kind_;
  Eigen::VectorXd axes_;
  Eigen::VectorXd center_;
};

/// d(x) = dist(x, boundary). Throws DomainError if x lies outside the closure.
double distance(const DomainSpec& domain, const Eigen::VectorXd& x);

/// nu = -Dd, the outward normal of the nearest boundary point. Throws DomainError
/// outside the strip d < mu0.
Eigen::VectorXd normal_field(const DomainSpec& domain, const Eigen::VectorXd& x);

/// D^2 d(x): eigenvalues -kappa_i/(1 - kappa_i d) along the principal directions
/// and 0 along nu. Throws DomainError at or beyond a focal point.
Eigen::MatrixXd distance_hessian(const DomainSpec& domain, const Eigen::VectorXd& x);

struct BarrierValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// h = -d + K3 d^2 with its gradient and Hessian.
BarrierValue barrier_h(const DomainSpec& domain, double K3, const Eigen::VectorXd& x);

/// Deterministic near-uniform boundary samples: Fibonacci sphere for n = 3,
/// tensor grid in hyperspherical angles for n >= 4.
std::vector<Eigen::VectorXd> sample_boundary(const DomainSpec& domain, std::size_t min_count);

/// Curvature pinching test kappa_max - kappa_min < H / (2(n-1)(n-2)) over boundary samples.
struct PinchingReport {
  int n = 0;
  std::size_t samples = 0;
  bool passes = false;
  double kappa_min = 0.0;  ///< smallest sampled principal curvature
  double kappa_max = 0.0;  ///< largest sampled principal curvature
  double H_min = 0.0;
  double H_max = 0.0;
  double mu0 = 0.0;
  double kappa0_inf = 0.0;      ///< inf of H/(n-1)
  double max_spread = 0.0;      ///< sup of kappa_max - kappa_min
  double worst_margin = 0.0;    ///< inf of threshold - spread; positive iff passes
  Eigen::VectorXd witness;      ///< sample attaining worst_margin
  std::optional<bool> ratio_form_passes;  ///< n = 3 only: kappa_max < (5/3) kappa_min everywhere
  std::size_t ratio_form_disagreements = 0;  ///< n = 3 samples where the two forms differ
};

PinchingReport pinching_check(const DomainSpec& domain, std::size_t min_samples = 10000);

}  // namespace wma
