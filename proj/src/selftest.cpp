#include "wma/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "wma/combinatorics.hpp"
#include "wma/cone.hpp"
#include "wma/error.hpp"
#include "wma/symfun.hpp"

namespace wma {

namespace {

using Rng = std::mt19937_64;

std::string show(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

std::string show(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  os << ']';
  return os.str();
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Eigen::MatrixXd random_symmetric(Rng& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = uniform(rng, -1.0, 1.0);
  }
  return a;
}

Eigen::MatrixXd random_rotation(Rng& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

// Spectrum with every (n-1)-subset sum at least 0.1.
Eigen::VectorXd admissible_spectrum(Rng& rng, int n) {
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i) mu(i) = uniform(rng, -1.0, 2.0);
  const double worst = mu.sum() - mu.maxCoeff();
  if (worst < 0.1) mu.array() += (0.1 - worst) / (n - 1) + uniform(rng, 0.0, 0.5);
  return mu;
}

std::vector<double> random_tuple(Rng& rng, int p, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(p));
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

EigenTuple random_in_gamma(Rng& rng, int p, int k) {
  std::vector<double> v = random_tuple(rng, p, -1.0, 3.0);
  EigenTuple t(v);
  while (!in_gamma_k(t, k)) {
    for (auto& x : v) x += 0.25;
    t = EigenTuple(v);
  }
  return t;
}

Eigen::MatrixXd displayed_w3(const Eigen::MatrixXd& u) {
  Eigen::MatrixXd w(3, 3);
  w << u(0, 0) + u(1, 1), u(1, 2), -u(0, 2),
       u(1, 2), u(0, 0) + u(2, 2), u(0, 1),
       -u(0, 2), u(0, 1), u(1, 1) + u(2, 2);
  return w;
}

class Suite {
 public:
  explicit Suite(std::string name) { r_.name = std::move(name); }
  void check(bool ok, const std::function<std::string()>& describe) {
    ++r_.cases;
    if (ok) return;
    if (r_.failures++ == 0) r_.first_failure = describe();
  }
  SuiteResult done() { return std::move(r_); }

 private:
  SuiteResult r_;
};

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failures == 0; });
}

SelftestReport run_selftest(const SelftestOptions& opt, const WAssembler& assemble_in) {
  if (opt.max_n < 3 || opt.max_n > 6) throw ConfigError("selftest: max-n must lie in [3, 6]");
  if (opt.scale < 1) throw ConfigError("selftest: scale must be positive");
  const WAssembler assemble =
      assemble_in ? assemble_in : [](const HessianMatrix& h, int m) { return assemble_w(h, m).entries; };
  Rng rng(opt.seed);
  const int reps = opt.scale;
  SelftestReport report;

  {
    Suite s("w-conformance-n3");
    for (int c = 0; c < 100 * reps; ++c) {
      const HessianMatrix h(random_symmetric(rng, 3));
      const Eigen::MatrixXd w = assemble(h, 2);
      s.check(w == displayed_w3(h.matrix()), [&] { return "hessian " + show(h.matrix()) + " gave " + show(w); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("spectral-identity");
    for (int c = 0; c < 200 * reps; ++c) {
      const int n = pick(rng, 2, opt.max_n);
      const int m = pick(rng, 1, n);
      const HessianMatrix h(random_symmetric(rng, n));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(assemble(h, m), Eigen::EigenvaluesOnly);
      std::vector<double> got(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
      std::sort(got.rbegin(), got.rend());
      const EigenTuple want = lift_spectrum(h.spectrum(), m);
      bool ok = got.size() == want.size();
      for (std::size_t i = 0; ok && i < got.size(); ++i) ok = std::abs(got[i] - want[i]) <= 1e-9;
      s.check(ok, [&] { return "m=" + std::to_string(m) + " hessian " + show(h.matrix()); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("symmetric-identities");
    for (int c = 0; c < 500 * reps; ++c) {
      const int p = pick(rng, 1, 10);
      const int k = pick(rng, 1, p);
      const EigenTuple t(random_tuple(rng, p, -2.0, 2.0));
      const IdentityReport r = check_identities(t, k);
      s.check(r.holds(1e-12), [&] { return "k=" + std::to_string(k) + " lambda " + show(t.values()); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("permutation-symmetry");
    for (int c = 0; c < 200 * reps; ++c) {
      const int p = pick(rng, 1, 10);
      std::vector<double> v = random_tuple(rng, p, -2.0, 2.0);
      const EigenTuple a(v);
      std::shuffle(v.begin(), v.end(), rng);
      const EigenTuple b(v);
      bool ok = true;
      for (int k = 0; k <= p; ++k) ok = ok && elementary_symmetric(a, k) == elementary_symmetric(b, k);
      s.check(ok, [&] { return "lambda " + show(a.values()); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("newton-maclaurin");
    for (int c = 0; c < 300 * reps; ++c) {
      const int p = pick(rng, 2, 10);
      const int k = pick(rng, 1, p);
      const EigenTuple t = random_in_gamma(rng, p, k);
      // The inequality is stated for l >= 1; the l = 0 reading compares against 1
      // and fails for any tuple scaled up.
      for (int l = 1; l < k; ++l) {
        const double margin = newton_maclaurin_margin(t, k, l);
        s.check(margin >= -1e-12, [&] {
          return "k=" + std::to_string(k) + " l=" + std::to_string(l) + " lambda " + show(t.values());
        });
      }
      const auto grad = root_gradient(t, k);
      double sum = 0.0;
      for (double g : grad) sum += g;
      const double bound = std::pow(static_cast<double>(binomial(p, k)), 1.0 / k);
      s.check(sum >= bound - 1e-10, [&] { return "root gradient k=" + std::to_string(k) + " " + show(t.values()); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("cone-inclusions");
    for (int c = 0; c < 300 * reps; ++c) {
      const int n = pick(rng, 2, opt.max_n);
      const bool positive = c % 2 == 0;
      std::vector<double> v = positive ? random_tuple(rng, n, 0.01, 2.0) : random_tuple(rng, n, -2.0, 0.5);
      if (!positive) {
        double sum = 0.0;
        for (double x : v) sum += x;
        if (sum > 0.0) v[0] -= sum + 0.1;
      }
      const EigenTuple mu(v);
      for (int m = 1; m <= n; ++m) {
        for (int k = 1; k <= static_cast<int>(binomial(n, m)); ++k) {
          const bool in = in_generalized_cone(mu, ConeSpec(n, m, k));
          s.check(in == positive, [&] {
            return "m=" + std::to_string(m) + " k=" + std::to_string(k) + " mu " + show(mu.values());
          });
        }
      }
    }
    for (int c = 0; c < 1000 * reps; ++c) {
      const int n = pick(rng, 2, opt.max_n);
      const int m = pick(rng, 1, n);
      const EigenTuple mu(random_tuple(rng, n, -1.0, 2.0));
      const bool strict = m_convexity(mu, m) == Convexity::strict;
      const bool lifted = in_gamma_k(lift_spectrum(mu, m), static_cast<int>(binomial(n, m)));
      s.check(strict == lifted, [&] { return "m=" + std::to_string(m) + " mu " + show(mu.values()); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("linearization-fd");
    for (int c = 0; c < 100 * reps; ++c) {
      const int n = pick(rng, 3, opt.max_n);
      const int m = n - 1;
      const HessianMatrix h = HessianMatrix::from_spectrum(admissible_spectrum(rng, n), random_rotation(rng, n));
      const Eigen::MatrixXd F = linearization(h, m);
      constexpr double step = 1e-5;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        for (int j = i; j < n && ok; ++j) {
          Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
          e(i, j) = e(j, i) = step;
          const double fd = (det_w(HessianMatrix(h.matrix() + e), m) - det_w(HessianMatrix(h.matrix() - e), m)) /
                            (2.0 * step) / (i == j ? 1.0 : 2.0);
          ok = std::abs(fd - F(i, j)) <= 1e-5 * std::max(1.0, F.cwiseAbs().maxCoeff());
        }
      }
      s.check(ok, [&] { return "hessian " + show(h.matrix()); });
    }
    report.suites.push_back(s.done());
  }
  {
    Suite s("concavity");
    for (int c = 0; c < 500 * reps; ++c) {
      const int n = pick(rng, 3, std::min(opt.max_n, 5));
      const HessianMatrix a = HessianMatrix::from_spectrum(admissible_spectrum(rng, n), random_rotation(rng, n));
      const HessianMatrix b = HessianMatrix::from_spectrum(admissible_spectrum(rng, n), random_rotation(rng, n));
      s.check(concavity_probe(a, b, n - 1) >= -1e-10,
              [&] { return "A " + show(a.matrix()) + " B " + show(b.matrix()); });
    }
    report.suites.push_back(s.done());
  }
  return report;
}

}  // namespace wma
