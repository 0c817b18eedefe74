#include "wma/woperator.hpp"

#include <cmath>

#include "wma/combinatorics.hpp"
#include "wma/cone.hpp"
#include "wma/error.hpp"

namespace wma {

std::string MultiIndex::label() const {
  std::string s = "(";
  for (int i : indices) s += std::to_string(i + 1);
  return s + ")";
}

std::vector<MultiIndex> multi_indices(int n, int m) {
  if (m < 1 || m > n) throw DomainError("multi_indices: m outside [1, n]");
  std::vector<MultiIndex> out;
  int order = 0;
  for (auto& s : subsets(n, m)) out.push_back(MultiIndex{std::move(s), order++});
  return out;
}

HessianMatrix::HessianMatrix(const Eigen::MatrixXd& m) : m_(m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("HessianMatrix: must be square");
  if (!m.allFinite()) throw DomainError("HessianMatrix: non-finite entry");
  m_.triangularView<Eigen::StrictlyLower>() = m_.transpose();
}

HessianMatrix HessianMatrix::diagonal(const Eigen::VectorXd& d) {
  return HessianMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

HessianMatrix HessianMatrix::from_spectrum(const Eigen::VectorXd& mu, const Eigen::MatrixXd& q) {
  return HessianMatrix(q * mu.asDiagonal() * q.transpose());
}

EigenTuple HessianMatrix::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return EigenTuple(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

namespace {

void check_m(int n, int m) {
  if (m < 1 || m > n) {
    throw DomainError("W operator: m=" + std::to_string(m) + " outside [1, " + std::to_string(n) + "]");
  }
}

// For multi-indices differing in exactly one element, the positions of the differing
// entries within each sorted tuple. Returns false if the sets differ in more than one.
bool single_swap(const std::vector<int>& a, const std::vector<int>& b, int& pos_a, int& pos_b) {
  const std::size_t m = a.size();
  int diff_a = -1;
  int diff_b = -1;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < m || j < m) {
    if (i < m && j < m && a[i] == b[j]) {
      ++i;
      ++j;
    } else if (j >= m || (i < m && a[i] < b[j])) {
      if (diff_a >= 0) return false;
      diff_a = static_cast<int>(i++);
    } else {
      if (diff_b >= 0) return false;
      diff_b = static_cast<int>(j++);
    }
  }
  pos_a = diff_a;
  pos_b = diff_b;
  return diff_a >= 0 && diff_b >= 0;
}

// Visits every nonzero placement W(r, c) = coeff * u(i, j).
template <class Visit>
void for_each_placement(const std::vector<MultiIndex>& labels, Visit&& visit) {
  const int size = static_cast<int>(labels.size());
  for (int r = 0; r < size; ++r) {
    const auto& a = labels[r].indices;
    for (int ai : a) visit(r, r, 1.0, ai, ai);
    for (int c = 0; c < size; ++c) {
      if (c == r) continue;
      const auto& b = labels[c].indices;
      int pi = 0;
      int pj = 0;
      if (!single_swap(a, b, pi, pj)) continue;
      const double sign = ((pi > pj ? pi - pj : pj - pi) % 2 == 0) ? 1.0 : -1.0;
      visit(r, c, sign, a[pi], b[pj]);
    }
  }
}

}  // namespace

WMatrix assemble_w(const HessianMatrix& hess, int m) {
  const int n = hess.dim();
  check_m(n, m);
  WMatrix w;
  w.labels = multi_indices(n, m);
  const auto size = static_cast<Eigen::Index>(w.labels.size());
  w.entries = Eigen::MatrixXd::Zero(size, size);
  for_each_placement(w.labels, [&](int r, int c, double coeff, int i, int j) {
    w.entries(r, c) += coeff * hess(i, j);
  });
  return w;
}

double det_w(const HessianMatrix& hess, int m) {
  return assemble_w(hess, m).entries.partialPivLu().determinant();
}

Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (Eigen::Index j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = a(i, j);
        }
        ++mi;
      }
      const double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
      adj(c, r) = sign * minor.partialPivLu().determinant();
    }
  }
  return adj;
}

Eigen::MatrixXd linearization(const HessianMatrix& hess, int m) {
  const int n = hess.dim();
  const WMatrix w = assemble_w(hess, m);
  // d det / d W(r,c) is the (r,c) cofactor, i.e. adj(W)(c,r).
  const Eigen::MatrixXd cof = adjugate(w.entries).transpose();
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(n, n);
  for_each_placement(w.labels, [&](int r, int c, double coeff, int i, int j) {
    raw(i, j) += coeff * cof(r, c);
  });
  return 0.5 * (raw + raw.transpose());
}

double concavity_probe(const HessianMatrix& a, const HessianMatrix& b, int m) {
  if (a.dim() != b.dim()) throw DomainError("concavity_probe: dimension mismatch");
  if (m_convexity(a.spectrum(), m) != Convexity::strict ||
      m_convexity(b.spectrum(), m) != Convexity::strict) {
    throw DomainError("concavity_probe: inputs must be strictly m-convex");
  }
  const double inv = 1.0 / static_cast<double>(binomial(a.dim(), m));
  const HessianMatrix mid(0.5 * (a.matrix() + b.matrix()));
  auto root = [&](const HessianMatrix& h) { return std::pow(det_w(h, m), inv); };
  return root(mid) - 0.5 * root(a) - 0.5 * root(b);
}

}  // namespace wma
