#include "wma/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "wma/combinatorics.hpp"
#include "wma/error.hpp"
#include "wma/kernels.hpp"

namespace wma {

namespace {

constexpr int kPad = 4;
constexpr std::size_t kMaxNodes = 60'000'000;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// 1D quadratic Lagrange basis on nodes -1, 0, 1 and its derivatives.
std::array<double, 3> lagrange(double s) { return {0.5 * s * (s - 1.0), 1.0 - s * s, 0.5 * s * (s + 1.0)}; }
std::array<double, 3> lagrange_d1(double s) { return {s - 0.5, -2.0 * s, s + 0.5}; }
constexpr std::array<double, 3> kLagrangeD2 = {1.0, -2.0, 1.0};

// Tensor weights; `order[i]` selects the derivative order along axis i.
std::vector<double> tensor_weights(const Eigen::VectorXd& local, const std::vector<int>& order) {
  const int n = static_cast<int>(local.size());
  std::vector<std::array<double, 3>> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int o = order[static_cast<std::size_t>(i)];
    axis[static_cast<std::size_t>(i)] = o == 0 ? lagrange(local(i)) : o == 1 ? lagrange_d1(local(i)) : kLagrangeD2;
  }
  const std::size_t count = ipow(3, n);
  std::vector<double> w(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rem = c;
    double acc = 1.0;
    for (int i = 0; i < n; ++i) {
      acc *= axis[static_cast<std::size_t>(i)][rem % 3];
      rem /= 3;
    }
    w[c] = acc;
  }
  return w;
}

void add_to(std::map<std::uint32_t, double>& row, const InterpBlock& b, double scale) {
  const auto w = tensor_weights(b.local, std::vector<int>(static_cast<std::size_t>(b.local.size()), 0));
  for (std::size_t c = 0; c < w.size(); ++c) row[b.unknowns[c]] += scale * w[c];
}

SparseRow to_row(const std::map<std::uint32_t, double>& m) {
  SparseRow r;
  r.reserve(m.size());
  for (const auto& [id, w] : m) {
    if (w != 0.0) r.emplace_back(id, w);
  }
  return r;
}

// Lagrange weights at 0 for the value, first and second derivative on three nodes.
struct RayWeights {
  std::array<double, 3> value, d1, d2;
};

RayWeights ray_weights(const std::array<double, 3>& tau) {
  RayWeights w{};
  for (int j = 0; j < 3; ++j) {
    double denom = 1.0;
    double num = 1.0;
    for (int k = 0; k < 3; ++k) {
      if (k == j) continue;
      denom *= tau[j] - tau[k];
      num *= -tau[k];
    }
    w.value[j] = num / denom;
    double d1 = 0.0;
    for (int l = 0; l < 3; ++l) {
      if (l == j) continue;
      double term = 1.0 / (tau[j] - tau[l]);
      for (int k = 0; k < 3; ++k) {
        if (k == j || k == l) continue;
        term *= -tau[k] / (tau[j] - tau[k]);
      }
      d1 += term;
    }
    w.d1[j] = d1;
    w.d2[j] = 2.0 / denom;
  }
  return w;
}

}  // namespace

Eigen::VectorXd Grid::node_position(std::size_t node) const {
  Eigen::VectorXd x(n_);
  for (int i = 0; i < n_; ++i) {
    x(i) = origin_(i) + h_ * static_cast<double>(node % static_cast<std::size_t>(extent_));
    node /= static_cast<std::size_t>(extent_);
  }
  return x;
}

Grid Grid::build(const DomainSpec& domain, int resolution) {
  if (resolution < 5) throw ConfigError("grid resolution must be at least 5");
  Grid g(domain);
  g.n_ = domain.dim();
  g.resolution_ = resolution;
  g.pad_ = kPad;
  g.extent_ = resolution + 2 * kPad;
  const double half = domain.half_width();
  g.h_ = 2.0 * half / (resolution - 1);
  g.origin_ = domain.center().array() - (half + kPad * g.h_);
  const int n = g.n_;
  const double h = g.h_;
  if (2.0 * h >= domain.mu0()) {
    throw ConfigError("grid too coarse: collocation samples at depth 2h leave the smooth strip");
  }
  const double total = std::pow(static_cast<double>(g.extent_), n);
  if (total > static_cast<double>(kMaxNodes)) throw ConfigError("grid too large");
  g.node_count_ = ipow(static_cast<std::size_t>(g.extent_), n);

  std::vector<std::size_t> strides(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) strides[static_cast<std::size_t>(i)] = ipow(static_cast<std::size_t>(g.extent_), i);

  // Nodes well inside need no projection: the inscribed ball of radius a_min
  // shrunk by the active margin is entirely active.
  const double amin = domain.axes().minCoeff();
  g.unknown_of_.assign(g.node_count_, -1);
  for (std::size_t node = 0; node < g.node_count_; ++node) {
    const Eigen::VectorXd x = g.node_position(node);
    const double r = (x - domain.center()).norm();
    double sd;
    if (r < amin - 4.0 * h) {
      sd = amin - r;  // lower bound on the true distance; enough to classify
    } else if (r > half + 4.0 * h) {
      continue;
    } else {
      sd = domain.signed_distance(x);
    }
    if (sd > 0.5 * h) {
      g.unknown_of_[node] = static_cast<std::int64_t>(g.nodes_.size());
      g.nodes_.push_back(node);
      g.active_distance_.push_back(r < amin - 4.0 * h ? domain.signed_distance(x) : sd);
    }
  }
  g.active_count_ = g.nodes_.size();

  // Stencil offsets in the documented order.
  std::vector<std::vector<int>> offsets;
  offsets.push_back(std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      std::vector<int> o(static_cast<std::size_t>(n), 0);
      o[static_cast<std::size_t>(i)] = s;
      offsets.push_back(o);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          std::vector<int> o(static_cast<std::size_t>(n), 0);
          o[static_cast<std::size_t>(i)] = si;
          o[static_cast<std::size_t>(j)] = sj;
          offsets.push_back(o);
        }
      }
    }
  }
  g.stencil_size_ = offsets.size();
  std::vector<std::int64_t> shift(offsets.size(), 0);
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      shift[k] += offsets[k][static_cast<std::size_t>(i)] * static_cast<std::int64_t>(strides[static_cast<std::size_t>(i)]);
    }
  }

  std::set<std::size_t> pending;
  for (std::size_t a = 0; a < g.active_count_; ++a) {
    for (std::size_t k = 1; k < offsets.size(); ++k) {
      const auto nb = static_cast<std::size_t>(static_cast<std::int64_t>(g.nodes_[a]) + shift[k]);
      if (g.unknown_of_[nb] < 0) pending.insert(nb);
    }
  }

  struct Pending {
    Eigen::VectorXd y, nu;
    double offset;
    std::array<std::vector<std::size_t>, 2> block_nodes;
    std::array<Eigen::VectorXd, 2> local;
  };
  std::vector<Pending> geo;

  auto block_for = [&](const Eigen::VectorXd& q, std::vector<std::size_t>& nodes, Eigen::VectorXd& local) {
    local.resize(n);
    std::vector<std::int64_t> mid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double c = (q(i) - g.origin_(i)) / h;
      const double r = std::round(c);
      mid[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(r);
      local(i) = c - r;
      if (r < 1 || r > g.extent_ - 2) throw ConfigError("interpolation block leaves the padded grid");
    }
    const std::size_t count = ipow(3, n);
    nodes.resize(count);
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t rem = c;
      std::size_t node = 0;
      for (int i = 0; i < n; ++i) {
        const std::int64_t idx = mid[static_cast<std::size_t>(i)] + static_cast<std::int64_t>(rem % 3) - 1;
        rem /= 3;
        node += static_cast<std::size_t>(idx) * strides[static_cast<std::size_t>(i)];
      }
      nodes[c] = node;
    }
  };

  while (!pending.empty()) {
    std::set<std::size_t> next;
    for (std::size_t node : pending) {
      g.unknown_of_[node] = static_cast<std::int64_t>(g.nodes_.size());
      g.nodes_.push_back(node);
      const Eigen::VectorXd x = g.node_position(node);
      Pending p;
      p.y = domain.project(x);
      p.nu = domain.outward_normal(p.y);
      p.offset = -domain.signed_distance(x);
      for (int k = 0; k < 2; ++k) {
        const Eigen::VectorXd q = p.y - (k + 1) * h * p.nu;
        block_for(q, p.block_nodes[static_cast<std::size_t>(k)], p.local[static_cast<std::size_t>(k)]);
        for (std::size_t b : p.block_nodes[static_cast<std::size_t>(k)]) {
          if (g.unknown_of_[b] < 0 && !pending.contains(b)) next.insert(b);
        }
      }
      geo.push_back(std::move(p));
    }
    pending = std::move(next);
  }

  g.stencils_.resize(g.active_count_ * g.stencil_size_);
  for (std::size_t a = 0; a < g.active_count_; ++a) {
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const auto nb = static_cast<std::size_t>(static_cast<std::int64_t>(g.nodes_[a]) + shift[k]);
      g.stencils_[a * g.stencil_size_ + k] = static_cast<std::uint32_t>(g.unknown_of_[nb]);
    }
  }

  g.colloc_.reserve(geo.size());
  for (std::size_t c = 0; c < geo.size(); ++c) {
    auto& p = geo[c];
    Collocation col;
    col.unknown = static_cast<std::uint32_t>(g.active_count_ + c);
    col.point = std::move(p.y);
    col.normal = std::move(p.nu);
    col.offset = p.offset;
    for (int k = 0; k < 2; ++k) {
      auto& blk = col.inner[static_cast<std::size_t>(k)];
      blk.local = p.local[static_cast<std::size_t>(k)];
      for (std::size_t b : p.block_nodes[static_cast<std::size_t>(k)]) {
        blk.unknowns.push_back(static_cast<std::uint32_t>(g.unknown_of_[b]));
      }
    }
    const RayWeights rw = ray_weights({col.offset, -h, -2.0 * h});
    auto build_row = [&](const std::array<double, 3>& w) {
      std::map<std::uint32_t, double> row;
      row[col.unknown] += w[0];
      add_to(row, col.inner[0], w[1]);
      add_to(row, col.inner[1], w[2]);
      return to_row(row);
    };
    col.trace = build_row(rw.value);
    col.normal_derivative = build_row(rw.d1);
    col.second_derivative = build_row(rw.d2);
    g.colloc_.push_back(std::move(col));
  }
  return g;
}

DiscreteField DiscreteField::sample(const Grid& grid, const ScalarField& u) {
  DiscreteField f;
  f.values.resize(grid.unknown_count());
  for (std::size_t i = 0; i < grid.unknown_count(); ++i) f.values[i] = u(grid.position(i));
  return f;
}

double homotopy_constant(int n, int m, int k) {
  const auto big = static_cast<int>(binomial(n, m));
  return static_cast<double>(binomial(big, k)) * std::pow(static_cast<double>(m), k);
}

double homotopy_datum(const Eigen::VectorXd& y, const Eigen::VectorXd& nu) {
  return y.dot(nu) + 0.5 * y.squaredNorm();
}

HessianMatrix hessian_stencil(const DiscreteField& field, const Grid& grid, std::size_t active) {
  if (active >= grid.active_count()) throw DomainError("hessian_stencil: not an active point");
  const int n = grid.dim();
  const double inv = 1.0 / (grid.spacing() * grid.spacing());
  const auto st = grid.stencil(active);
  const auto& v = field.values;
  Eigen::MatrixXd hm(n, n);
  for (int i = 0; i < n; ++i) {
    hm(i, i) = (v[st[1 + 2 * i]] - 2.0 * v[st[0]] + v[st[2 + 2 * i]]) * inv;
  }
  std::size_t base = 1 + 2 * static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      hm(i, j) = (v[st[base]] - v[st[base + 1]] - v[st[base + 2]] + v[st[base + 3]]) * (0.25 * inv);
      base += 4;
    }
  }
  return HessianMatrix(hm);
}

Eigen::VectorXd gradient_stencil(const DiscreteField& field, const Grid& grid, std::size_t active) {
  const int n = grid.dim();
  const auto st = grid.stencil(active);
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) {
    g(i) = (field.values[st[1 + 2 * i]] - field.values[st[2 + 2 * i]]) / (2.0 * grid.spacing());
  }
  return g;
}

double interp_value(const InterpBlock& block, std::span<const double> values) {
  const auto w = tensor_weights(block.local, std::vector<int>(static_cast<std::size_t>(block.local.size()), 0));
  double acc = 0.0;
  for (std::size_t c = 0; c < w.size(); ++c) acc += w[c] * values[block.unknowns[c]];
  return acc;
}

Eigen::VectorXd interp_gradient(const InterpBlock& block, std::span<const double> values, double h) {
  const int n = static_cast<int>(block.local.size());
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> order(static_cast<std::size_t>(n), 0);
    order[static_cast<std::size_t>(i)] = 1;
    const auto w = tensor_weights(block.local, order);
    double acc = 0.0;
    for (std::size_t c = 0; c < w.size(); ++c) acc += w[c] * values[block.unknowns[c]];
    g(i) = acc / h;
  }
  return g;
}

Eigen::MatrixXd interp_hessian(const InterpBlock& block, std::span<const double> values, double h) {
  const int n = static_cast<int>(block.local.size());
  Eigen::MatrixXd hm(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<int> order(static_cast<std::size_t>(n), 0);
      order[static_cast<std::size_t>(i)] += 1;
      order[static_cast<std::size_t>(j)] += 1;
      const auto w = tensor_weights(block.local, order);
      double acc = 0.0;
      for (std::size_t c = 0; c < w.size(); ++c) acc += w[c] * values[block.unknowns[c]];
      hm(i, j) = hm(j, i) = acc / (h * h);
    }
  }
  return hm;
}

double apply_row(const SparseRow& row, std::span<const double> values) {
  double acc = 0.0;
  for (const auto& [id, w] : row) acc += w * values[id];
  return acc;
}

std::vector<double> boundary_trace(const DiscreteField& field, const Grid& grid) {
  std::vector<double> out;
  out.reserve(grid.collocations().size());
  for (const auto& c : grid.collocations()) out.push_back(apply_row(c.trace, field.values));
  return out;
}

namespace {

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("homotopy parameter t outside [0, 1]");
}

void check_field(const DiscreteField& field, const Grid& grid) {
  if (field.values.size() != grid.unknown_count()) throw DomainError("field does not match grid");
}

}  // namespace

std::vector<double> robin_residual(const DiscreteField& field, const Grid& grid,
                                   const ProblemSpec& problem, double t) {
  check_t(t);
  check_field(field, grid);
  std::vector<double> r;
  r.reserve(grid.collocations().size());
  for (const auto& c : grid.collocations()) {
    const double un = apply_row(c.normal_derivative, field.values);
    const double u = apply_row(c.trace, field.values);
    r.push_back(un + u - t * problem.phi(c.point) - (1.0 - t) * homotopy_datum(c.point, c.normal));
  }
  return r;
}

std::vector<double> interior_residual(const DiscreteField& field, const Grid& grid,
                                      const ProblemSpec& problem, double t) {
  check_t(t);
  check_field(field, grid);
  const int n = grid.dim();
  const double c0 = homotopy_constant(n, n - 1, n);
  std::vector<double> r(grid.active_count());
  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    const double det = det_w(hessian_stencil(field, grid, a), n - 1);
    r[a] = det - t * problem.f(grid.position(a)) - (1.0 - t) * c0;
  }
  return r;
}

DiscreteSystem::DiscreteSystem(const Grid& grid, ProblemSpec problem)
    : grid_(&grid), problem_(std::move(problem)) {
  const int n = grid.dim();
  if (problem_.n != n) throw ConfigError("problem dimension does not match the grid");
  if (!problem_.f || !problem_.phi) throw ConfigError("problem data f and phi are required");
  start_rhs_ = homotopy_constant(n, n - 1, n);
  f_active_.resize(grid.active_count());
  for (std::size_t a = 0; a < grid.active_count(); ++a) {
    const Eigen::VectorXd x = grid.position(a);
    const double fv = problem_.f(x);
    if (!(fv > 0.0) || !std::isfinite(fv)) {
      throw PreconditionError("f must be positive: f = " + std::to_string(fv) + " at an active point");
    }
    f_active_[a] = fv;
  }
  robin_offsets_.push_back(0);
  for (const auto& c : grid.collocations()) {
    phi_colloc_.push_back(problem_.phi(c.point));
    start_colloc_.push_back(homotopy_datum(c.point, c.normal));
    std::map<std::uint32_t, double> row;
    for (const auto& [id, w] : c.trace) row[id] += w;
    for (const auto& [id, w] : c.normal_derivative) row[id] += w;
    for (const auto& [id, w] : row) {
      robin_ids_.push_back(id);
      robin_weights_.push_back(w);
    }
    robin_offsets_.push_back(robin_ids_.size());
  }
}

PointwiseOperator DiscreteSystem::evaluate(const DiscreteField& field, bool with_linearization) const {
  check_field(field, *grid_);
  const Grid& g = *grid_;
  const int n = g.dim();
  const std::size_t count = g.active_count();
  const std::size_t packed = static_cast<std::size_t>(n * (n + 1) / 2);
  PointwiseOperator op;
  op.det.resize(count);
  if (with_linearization) op.lin.resize(count * packed);

  if (n == 3) {
    std::array<std::vector<double>, 6> comp;
    for (auto& c : comp) c.resize(count);
    const double inv = 1.0 / (g.spacing() * g.spacing());
    const auto& v = field.values;
    for (std::size_t a = 0; a < count; ++a) {
      const auto st = g.stencil(a);
      const double c = v[st[0]];
      comp[0][a] = (v[st[1]] - 2.0 * c + v[st[2]]) * inv;
      comp[1][a] = (v[st[3]] - 2.0 * c + v[st[4]]) * inv;
      comp[2][a] = (v[st[5]] - 2.0 * c + v[st[6]]) * inv;
      comp[3][a] = (v[st[7]] - v[st[8]] - v[st[9]] + v[st[10]]) * (0.25 * inv);
      comp[4][a] = (v[st[11]] - v[st[12]] - v[st[13]] + v[st[14]]) * (0.25 * inv);
      comp[5][a] = (v[st[15]] - v[st[16]] - v[st[17]] + v[st[18]]) * (0.25 * inv);
    }
    std::array<std::vector<double>, 6> lin;
    for (auto& l : lin) l.resize(count);
    kernels::det_w3({comp[0], comp[1], comp[2], comp[3], comp[4], comp[5]},
                    {op.det, lin[0], lin[1], lin[2], lin[3], lin[4], lin[5]});
    if (with_linearization) {
      // Packed upper triangle order: 11, 12, 13, 22, 23, 33.
      for (std::size_t a = 0; a < count; ++a) {
        double* out = op.lin.data() + a * packed;
        out[0] = lin[0][a];
        out[1] = lin[3][a];
        out[2] = lin[4][a];
        out[3] = lin[1][a];
        out[4] = lin[5][a];
        out[5] = lin[2][a];
      }
    }
    return op;
  }

  for (std::size_t a = 0; a < count; ++a) {
    const HessianMatrix hm = hessian_stencil(field, g, a);
    op.det[a] = det_w(hm, n - 1);
    if (with_linearization) {
      const Eigen::MatrixXd F = linearization(hm, n - 1);
      double* out = op.lin.data() + a * packed;
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) *out++ = F(i, j);
      }
    }
  }
  return op;
}

Eigen::VectorXd DiscreteSystem::residual(const DiscreteField& field, double t) const {
  check_t(t);
  const Grid& g = *grid_;
  const auto op = evaluate(field, false);
  Eigen::VectorXd r(static_cast<Eigen::Index>(g.unknown_count()));
  for (std::size_t a = 0; a < g.active_count(); ++a) {
    r(static_cast<Eigen::Index>(a)) = op.det[a] - t * f_active_[a] - (1.0 - t) * start_rhs_;
  }
  for (std::size_t c = 0; c < g.closure_count(); ++c) {
    double acc = 0.0;
    for (std::size_t k = robin_offsets_[c]; k < robin_offsets_[c + 1]; ++k) {
      acc += robin_weights_[k] * field.values[robin_ids_[k]];
    }
    r(static_cast<Eigen::Index>(g.active_count() + c)) =
        acc - t * phi_colloc_[c] - (1.0 - t) * start_colloc_[c];
  }
  return r;
}

Eigen::SparseMatrix<double> DiscreteSystem::jacobian(const DiscreteField& field) const {
  const Grid& g = *grid_;
  const int n = g.dim();
  const std::size_t packed = static_cast<std::size_t>(n * (n + 1) / 2);
  const auto op = evaluate(field, true);
  const double inv = 1.0 / (g.spacing() * g.spacing());

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(g.active_count() * g.stencil_size() + robin_ids_.size());
  std::vector<double> F(static_cast<std::size_t>(n * n));
  for (std::size_t a = 0; a < g.active_count(); ++a) {
    const double* lin = op.lin.data() + a * packed;
    for (int i = 0, k = 0; i < n; ++i) {
      for (int j = i; j < n; ++j, ++k) F[static_cast<std::size_t>(i * n + j)] = F[static_cast<std::size_t>(j * n + i)] = lin[k];
    }
    const auto st = g.stencil(a);
    const auto row = static_cast<int>(a);
    double centre = 0.0;
    for (int i = 0; i < n; ++i) {
      const double fii = F[static_cast<std::size_t>(i * n + i)] * inv;
      centre -= 2.0 * fii;
      trip.emplace_back(row, static_cast<int>(st[1 + 2 * i]), fii);
      trip.emplace_back(row, static_cast<int>(st[2 + 2 * i]), fii);
    }
    trip.emplace_back(row, static_cast<int>(st[0]), centre);
    std::size_t base = 1 + 2 * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double c = 0.5 * F[static_cast<std::size_t>(i * n + j)] * inv;
        trip.emplace_back(row, static_cast<int>(st[base]), c);
        trip.emplace_back(row, static_cast<int>(st[base + 1]), -c);
        trip.emplace_back(row, static_cast<int>(st[base + 2]), -c);
        trip.emplace_back(row, static_cast<int>(st[base + 3]), c);
        base += 4;
      }
    }
  }
  for (std::size_t c = 0; c < g.closure_count(); ++c) {
    const auto row = static_cast<int>(g.active_count() + c);
    for (std::size_t k = robin_offsets_[c]; k < robin_offsets_[c + 1]; ++k) {
      trip.emplace_back(row, static_cast<int>(robin_ids_[k]), robin_weights_[k]);
    }
  }
  const auto size = static_cast<Eigen::Index>(g.unknown_count());
  Eigen::SparseMatrix<double> J(size, size);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

double DiscreteSystem::ellipticity_margin(const DiscreteField& field) const {
  check_field(field, *grid_);
  const Grid& g = *grid_;
  double margin = std::numeric_limits<double>::infinity();
  if (g.dim() == 3) {
    for (std::size_t a = 0; a < g.active_count(); ++a) {
      const Eigen::Matrix3d hm = hessian_stencil(field, g, a).matrix();
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
      es.computeDirect(hm, Eigen::EigenvaluesOnly);
      margin = std::min(margin, hm.trace() - es.eigenvalues().maxCoeff());
    }
    return margin;
  }
  for (std::size_t a = 0; a < g.active_count(); ++a) {
    const HessianMatrix hm = hessian_stencil(field, g, a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm.matrix(), Eigen::EigenvaluesOnly);
    margin = std::min(margin, hm.matrix().trace() - es.eigenvalues().maxCoeff());
  }
  return margin;
}

double SampledField::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != n) throw DomainError("SampledField: dimension mismatch");
  InterpBlock blk;
  blk.local.resize(n);
  std::vector<std::size_t> mid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int ext = extents[static_cast<std::size_t>(i)];
    if (ext < 3) throw DomainError("SampledField: need at least 3 samples per axis");
    const double c = (x(i) - origin(i)) / h;
    const double r = std::clamp(std::round(c), 1.0, static_cast<double>(ext - 2));
    mid[static_cast<std::size_t>(i)] = static_cast<std::size_t>(r);
    blk.local(i) = c - r;
  }
  const auto w = tensor_weights(blk.local, std::vector<int>(static_cast<std::size_t>(n), 0));
  double acc = 0.0;
  for (std::size_t c = 0; c < w.size(); ++c) {
    std::size_t rem = c;
    std::size_t flat = 0;
    std::size_t stride = 1;
    for (int i = 0; i < n; ++i) {
      flat += (mid[static_cast<std::size_t>(i)] + rem % 3 - 1) * stride;
      rem /= 3;
      stride *= static_cast<std::size_t>(extents[static_cast<std::size_t>(i)]);
    }
    acc += w[c] * values[flat];
  }
  return acc;
}

}  // namespace wma
