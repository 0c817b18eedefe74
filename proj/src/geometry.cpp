#include "wma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wma/error.hpp"

namespace wma {

DomainSpec::DomainSpec(Kind kind, Eigen::VectorXd axes, Eigen::VectorXd center)
    : kind_(kind), axes_(std::move(axes)), center_(std::move(center)) {
  const auto n = axes_.size();
  if (n < 3) throw DomainError("DomainSpec: dimension must be at least 3");
  if (center_.size() == 0) center_ = Eigen::VectorXd::Zero(n);
  if (center_.size() != n) throw DomainError("DomainSpec: center has wrong dimension");
  if (!axes_.allFinite() || !center_.allFinite()) throw DomainError("DomainSpec: non-finite data");
  if (axes_.minCoeff() <= 0.0) throw DomainError("DomainSpec: radii must be positive");
}

DomainSpec DomainSpec::ball(int n, double radius, Eigen::VectorXd center) {
  if (n < 3) throw DomainError("DomainSpec: dimension must be at least 3");
  return DomainSpec(Kind::ball, Eigen::VectorXd::Constant(n, radius), std::move(center));
}

DomainSpec DomainSpec::ellipsoid(Eigen::VectorXd axes, Eigen::VectorXd center) {
  return DomainSpec(Kind::ellipsoid, std::move(axes), std::move(center));
}

double DomainSpec::kappa_min() const {
  const double amax = axes_.maxCoeff();
  return axes_.minCoeff() / (amax * amax);
}

double DomainSpec::kappa_max() const {
  const double amin = axes_.minCoeff();
  return axes_.maxCoeff() / (amin * amin);
}

namespace {

// Closest point on the ellipsoid sum (x_i/a_i)^2 = 1 to z, in centered coordinates.
// Writes x_i = a_i^2 z_i / (t + a_i^2) and finds the largest root t of
// sum (a_i z_i / (t + a_i^2))^2 = 1. When every component along the shortest axes
// vanishes and that root does not exist, the closest point lies off the line
// (medial-axis case) and is reconstructed directly.
Eigen::VectorXd ellipsoid_closest(const Eigen::VectorXd& a, const Eigen::VectorXd& z) {
  const Eigen::Index n = a.size();
  const double amin = a.minCoeff();
  const double t0 = -amin * amin;

  auto F = [&](double t) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (z(i) == 0.0) continue;
      const double r = a(i) * z(i) / (t + a(i) * a(i));
      acc += r * r;
    }
    return acc - 1.0;
  };

  bool short_axes_zero = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) == amin && z(i) != 0.0) short_axes_zero = false;
  }

  Eigen::VectorXd x(n);
  if (short_axes_zero && F(t0) <= 0.0) {
    double used = 0.0;
    Eigen::Index slot = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a(i) == amin) {
        x(i) = 0.0;
        if (slot < 0) slot = i;
      } else {
        x(i) = a(i) * a(i) * z(i) / (a(i) * a(i) - amin * amin);
        used += (x(i) / a(i)) * (x(i) / a(i));
      }
    }
    x(slot) = amin * std::sqrt(std::max(0.0, 1.0 - used));
    return x;
  }

  double lo = t0;
  double hi = (a.array() * z.array()).matrix().norm() - amin * amin;
  hi = std::max(hi, lo);
  while (F(hi) > 0.0) hi = lo + 2.0 * (hi - lo) + 1.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (F(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = a(i) * a(i) * z(i) / (t + a(i) * a(i));
  return x;
}

}  // namespace

double DomainSpec::signed_distance(const Eigen::VectorXd& x) const {
  if (x.size() != axes_.size()) throw DomainError("signed_distance: dimension mismatch");
  const Eigen::VectorXd z = x - center_;
  if (kind_ == Kind::ball) return axes_(0) - z.norm();
  const Eigen::VectorXd p = ellipsoid_closest(axes_, z);
  const double dist = (z - p).norm();
  const double level = (z.array() / axes_.array()).square().sum();
  return level < 1.0 ? dist : -dist;
}

Eigen::VectorXd DomainSpec::project(const Eigen::VectorXd& x) const {
  if (x.size() != axes_.size()) throw DomainError("project: dimension mismatch");
  const Eigen::VectorXd z = x - center_;
  if (kind_ == Kind::ball) {
    const double r = z.norm();
    if (r == 0.0) {
      Eigen::VectorXd p = center_;
      p(0) += axes_(0);
      return p;
    }
    return center_ + (axes_(0) / r) * z;
  }
  return center_ + ellipsoid_closest(axes_, z);
}

Eigen::VectorXd DomainSpec::outward_normal(const Eigen::VectorXd& y) const {
  const Eigen::VectorXd g = ((y - center_).array() / axes_.array().square()).matrix();
  return g.normalized();
}

BoundaryData DomainSpec::boundary_data(const Eigen::VectorXd& y) const {
  const int n = dim();
  BoundaryData b;
  b.point = y;
  const Eigen::VectorXd g = ((y - center_).array() / axes_.array().square()).matrix();
  const double gnorm = g.norm();
  b.nu = g / gnorm;

  // Tangent basis: the columns of a Householder reflection beyond the first.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b.nu);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd tangent = q.rightCols(n - 1);

  // Shape operator of the level set, restricted to the tangent space.
  const Eigen::MatrixXd shape = tangent.transpose() *
                                axes_.array().square().inverse().matrix().asDiagonal() * tangent /
                                gnorm;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shape);
  b.kappa = es.eigenvalues();
  b.directions = tangent * es.eigenvectors();
  b.H = b.kappa.sum();
  return b;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::ball) {
    os << "ball(n=" << dim() << ", R=" << axes_(0) << ")";
  } else {
    os << "ellipsoid(";
    for (Eigen::Index i = 0; i < axes_.size(); ++i) os << (i ? ", " : "") << axes_(i);
    os << ")";
  }
  return os.str();
}

double distance(const DomainSpec& domain, const Eigen::VectorXd& x) {
  const double sd = domain.signed_distance(x);
  // Points on the boundary may round to a tiny negative value.
  if (sd < -1e-12 * domain.half_width()) throw DomainError("distance: point outside the domain");
  return std::max(sd, 0.0);
}

Eigen::VectorXd normal_field(const DomainSpec& domain, const Eigen::VectorXd& x) {
  const double d = distance(domain, x);
  if (d >= domain.mu0()) throw DomainError("normal_field: point outside the smooth strip");
  return domain.outward_normal(domain.project(x));
}

namespace {

struct StripFrame {
  double d;
  BoundaryData boundary;
};

StripFrame strip_frame(const DomainSpec& domain, const Eigen::VectorXd& x) {
  const double d = distance(domain, x);
  if (d >= domain.mu0()) throw DomainError("point outside the smooth strip");
  BoundaryData b = domain.boundary_data(domain.project(x));
  for (Eigen::Index i = 0; i < b.kappa.size(); ++i) {
    if (b.kappa(i) * d >= 1.0) throw DomainError("distance_hessian: focal point reached");
  }
  return {d, std::move(b)};
}

Eigen::MatrixXd hessian_from_frame(const StripFrame& f) {
  const auto& b = f.boundary;
  const Eigen::Index n = b.point.size();
  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < b.kappa.size(); ++i) {
    const Eigen::VectorXd e = b.directions.col(i);
    hess -= (b.kappa(i) / (1.0 - b.kappa(i) * f.d)) * e * e.transpose();
  }
  return hess;
}

}  // namespace

Eigen::MatrixXd distance_hessian(const DomainSpec& domain, const Eigen::VectorXd& x) {
  return hessian_from_frame(strip_frame(domain, x));
}

BarrierValue barrier_h(const DomainSpec& domain, double K3, const Eigen::VectorXd& x) {
  const StripFrame f = strip_frame(domain, x);
  const Eigen::VectorXd dd = -f.boundary.nu;
  const double slope = -1.0 + 2.0 * K3 * f.d;
  BarrierValue h;
  h.value = -f.d + K3 * f.d * f.d;
  h.gradient = slope * dd;
  h.hessian = slope * hessian_from_frame(f) + 2.0 * K3 * dd * dd.transpose();
  return h;
}

std::vector<Eigen::VectorXd> sample_boundary(const DomainSpec& domain, std::size_t min_count) {
  const int n = domain.dim();
  std::vector<Eigen::VectorXd> dirs;
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const auto count = std::max<std::size_t>(min_count, 1);
    dirs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      Eigen::VectorXd s(3);
      s << r * std::cos(phi), r * std::sin(phi), z;
      dirs.push_back(s);
    }
  } else {
    const int angles = n - 1;
    auto per = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(std::max<std::size_t>(min_count, 1)), 1.0 / angles)));
    per = std::max<std::size_t>(per, 2);
    std::size_t total = 1;
    for (int i = 0; i < angles; ++i) total *= per;
    dirs.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(angles), 0);
    for (std::size_t c = 0; c < total; ++c) {
      std::size_t rem = c;
      for (int i = 0; i < angles; ++i) {
        idx[static_cast<std::size_t>(i)] = rem % per;
        rem /= per;
      }
      Eigen::VectorXd s(n);
      double sin_prod = 1.0;
      for (int i = 0; i < angles; ++i) {
        const double k = static_cast<double>(idx[static_cast<std::size_t>(i)]);
        const double theta = i < angles - 1 ? (k + 0.5) * std::numbers::pi / static_cast<double>(per)
                                            : k * 2.0 * std::numbers::pi / static_cast<double>(per);
        s(i) = sin_prod * std::cos(theta);
        sin_prod *= std::sin(theta);
      }
      s(n - 1) = sin_prod;
      dirs.push_back(s);
    }
  }
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(dirs.size());
  for (const auto& s : dirs) {
    pts.push_back(domain.center() + (domain.axes().array() * s.array()).matrix());
  }
  return pts;
}

PinchingReport pinching_check(const DomainSpec& domain, std::size_t min_samples) {
  const int n = domain.dim();
  const double denom = 2.0 * (n - 1) * (n - 2);
  PinchingReport rep;
  rep.n = n;
  rep.mu0 = domain.mu0();
  rep.kappa_min = std::numeric_limits<double>::infinity();
  rep.kappa_max = -std::numeric_limits<double>::infinity();
  rep.H_min = std::numeric_limits<double>::infinity();
  rep.H_max = -std::numeric_limits<double>::infinity();
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.kappa0_inf = std::numeric_limits<double>::infinity();
  bool all_pass = true;
  bool all_ratio = true;

  const auto pts = sample_boundary(domain, min_samples);
  rep.samples = pts.size();
  for (const auto& y : pts) {
    const BoundaryData b = domain.boundary_data(y);
    const double kmin = b.kappa.minCoeff();
    const double kmax = b.kappa.maxCoeff();
    const double spread = kmax - kmin;
    const double margin = b.H / denom - spread;
    const bool pass = spread < b.H / denom;
    all_pass = all_pass && pass;
    rep.kappa_min = std::min(rep.kappa_min, kmin);
    rep.kappa_max = std::max(rep.kappa_max, kmax);
    rep.H_min = std::min(rep.H_min, b.H);
    rep.H_max = std::max(rep.H_max, b.H);
    rep.kappa0_inf = std::min(rep.kappa0_inf, b.H / (n - 1));
    rep.max_spread = std::max(rep.max_spread, spread);
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.witness = y;
    }
    if (n == 3) {
      const bool ratio = 3.0 * kmax < 5.0 * kmin;
      all_ratio = all_ratio && ratio;
      if (ratio != pass) ++rep.ratio_form_disagreements;
    }
  }
  rep.passes = all_pass;
  if (n == 3) rep.ratio_form_passes = all_ratio;
  return rep;
}

}  // namespace wma
