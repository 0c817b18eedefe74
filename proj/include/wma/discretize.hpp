#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "wma/geometry.hpp"
#include "wma/woperator.hpp"

namespace wma {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
/// Sparse linear functional over the unknowns, (unknown id, weight) with unique ids.
using SparseRow = std::vector<std::pair<std::uint32_t, double>>;

/// 3^n nodes for tensor-product quadratic interpolation at one point.
struct InterpBlock {
  std::vector<std::uint32_t> unknowns;  ///< axis 0 varies fastest
  Eigen::VectorXd local;                ///< offset from the middle node, in units of h
};

/// Robin collocation for one closure node. The node lies on the normal line through
/// its projection y; a quadratic through the node and two interpolated samples at
/// depths h and 2h gives u(y), u_nu(y) and u_nunu(y).
struct Collocation {
  std::uint32_t unknown = 0;
  Eigen::VectorXd point;
  Eigen::VectorXd normal;
  double offset = 0.0;  ///< node position along the normal line, outward positive
  std::array<InterpBlock, 2> inner;
  SparseRow trace;
  SparseRow normal_derivative;
  SparseRow second_derivative;
};

/// Uniform Cartesian grid over the domain's bounding cube.
///
/// Active points are nodes with d > h/2 and carry the interior equation. Every
/// other node touched by an active stencil or by a collocation sample becomes a
/// closure node with one Robin equation. Unknown ids list the active points first,
/// then the closure nodes, each group in ascending node order.
class Grid {
 public:
  /// `resolution` nodes per axis across the bounding cube. Throws ConfigError for
  /// resolution < 5 or when the collocation samples would leave the domain.
  static Grid build(const DomainSpec& domain, int resolution);

  const DomainSpec& domain() const { return domain_; }
  int dim() const { return n_; }
  int resolution() const { return resolution_; }
  double spacing() const { return h_; }
  int padding() const { return pad_; }
  const Eigen::VectorXd& origin() const { return origin_; }
  int extent() const { return extent_; }
  std::size_t node_count() const { return node_count_; }
  Eigen::VectorXd node_position(std::size_t node) const;

  std::size_t active_count() const { return active_count_; }
  std::size_t closure_count() const { return nodes_.size() - active_count_; }
  std::size_t unknown_count() const { return nodes_.size(); }
  std::span<const std::size_t> unknown_nodes() const { return nodes_; }
  /// Unknown id of a node, or -1.
  std::int64_t unknown_of(std::size_t node) const { return unknown_of_[node]; }
  Eigen::VectorXd position(std::size_t unknown) const { return node_position(nodes_[unknown]); }
  double active_distance(std::size_t a) const { return active_distance_[a]; }

  /// 1 + 2n + 2n(n-1) unknown ids: centre, then +e_i, -e_i per axis, then
  /// (+e_i+e_j, +e_i-e_j, -e_i+e_j, -e_i-e_j) per pair i < j.
  std::size_t stencil_size() const { return stencil_size_; }
  std::span<const std::uint32_t> stencil(std::size_t a) const {
    return {stencils_.data() + a * stencil_size_, stencil_size_};
  }

  /// One per closure node, in closure order.
  const std::vector<Collocation>& collocations() const { return colloc_; }

 private:
  Grid(const DomainSpec& domain) : domain_(domain) {}

  DomainSpec domain_;
  int n_ = 0;
  int resolution_ = 0;
  int pad_ = 0;
  int extent_ = 0;
  double h_ = 0.0;
  Eigen::VectorXd origin_;
  std::size_t node_count_ = 0;
  std::size_t active_count_ = 0;
  std::vector<std::size_t> nodes_;
  std::vector<std::int64_t> unknown_of_;
  std::vector<double> active_distance_;
  std::size_t stencil_size_ = 0;
  std::vector<std::uint32_t> stencils_;
  std::vector<Collocation> colloc_;
};

/// Grid function: one value per unknown of its grid.
struct DiscreteField {
  std::vector<double> values;

  static DiscreteField sample(const Grid& grid, const ScalarField& u);
};

/// Problem data for det W(D^2 u) = f, u_nu = -u + phi with m = n - 1.
struct ProblemSpec {
  int n = 3;
  ScalarField f;
  /// Defined on the closure of the domain; may use the extended normal field.
  ScalarField phi;
  std::string name;
  /// Known solution for manufactured cases; empty otherwise.
  ScalarField exact;

  int m() const { return n - 1; }
};

/// Right-hand side of the t = 0 problem, C(C(n,m), k) m^k; (n-1)^n for m = n-1, k = n.
double homotopy_constant(int n, int m, int k);
/// Robin datum of the t = 0 problem, y.nu + |y|^2/2.
double homotopy_datum(const Eigen::VectorXd& y, const Eigen::VectorXd& nu);

/// Centred second differences at an active point; exact for quadratics.
HessianMatrix hessian_stencil(const DiscreteField& field, const Grid& grid, std::size_t active);
/// Centred first differences at an active point.
Eigen::VectorXd gradient_stencil(const DiscreteField& field, const Grid& grid, std::size_t active);

double interp_value(const InterpBlock& block, std::span<const double> values);
Eigen::VectorXd interp_gradient(const InterpBlock& block, std::span<const double> values, double h);
Eigen::MatrixXd interp_hessian(const InterpBlock& block, std::span<const double> values, double h);

double apply_row(const SparseRow& row, std::span<const double> values);

/// u(y) at every collocation point.
std::vector<double> boundary_trace(const DiscreteField& field, const Grid& grid);

/// u_nu(y) + u(y) - t phi(y) - (1-t)(y.nu + |y|^2/2) per collocation point.
std::vector<double> robin_residual(const DiscreteField& field, const Grid& grid,
                                   const ProblemSpec& problem, double t);

/// det W(D^2 u) - t f - (1-t)(n-1)^n per active point.
std::vector<double> interior_residual(const DiscreteField& field, const Grid& grid,
                                      const ProblemSpec& problem, double t);

/// Pointwise operator values at the active points.
struct PointwiseOperator {
  std::vector<double> det;
  /// F^{ij} per point, packed upper triangle row by row; empty unless requested.
  std::vector<double> lin;
};

/// The discrete system with problem data sampled once. Rows follow unknown ids:
/// interior equations for active points, then the Robin equation of each closure node.
///
/// Holds a reference to `grid`, which must outlive it.
class DiscreteSystem {
 public:
  /// Throws PreconditionError if f is not positive at every active point.
  DiscreteSystem(const Grid& grid, ProblemSpec problem);

  const Grid& grid() const { return *grid_; }
  const ProblemSpec& problem() const { return problem_; }

  PointwiseOperator evaluate(const DiscreteField& field, bool with_linearization) const;

  Eigen::VectorXd residual(const DiscreteField& field, double t) const;
  /// Interior rows from F^{ij} contracted with the stencil weights; Robin rows are constant.
  Eigen::SparseMatrix<double> jacobian(const DiscreteField& field) const;

  /// Smallest eigenvalue of W over the active points (sum of the n-1 smallest
  /// Hessian eigenvalues).
  double ellipticity_margin(const DiscreteField& field) const;

  std::span<const double> f_active() const { return f_active_; }
  std::span<const double> phi_boundary() const { return phi_colloc_; }
  std::span<const double> start_boundary() const { return start_colloc_; }
  double start_rhs() const { return start_rhs_; }

 private:
  const Grid* grid_;
  ProblemSpec problem_;
  std::vector<double> f_active_;
  std::vector<double> phi_colloc_;
  std::vector<double> start_colloc_;
  std::vector<double> robin_weights_;  // flattened rows trace + normal_derivative
  std::vector<std::uint32_t> robin_ids_;
  std::vector<std::size_t> robin_offsets_;
  double start_rhs_ = 0.0;
};

/// Node-sampled scalar array over a box, interpolated with tensor quadratics.
struct SampledField {
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd origin;
  std::vector<int> extents;
  std::vector<double> values;  ///< axis 0 fastest

  double operator()(const Eigen::VectorXd& x) const;
};

}  // namespace wma
