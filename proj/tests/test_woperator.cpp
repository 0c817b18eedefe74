#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wma/cone.hpp"
#include "wma/error.hpp"
#include "wma/woperator.hpp"

using namespace wma;

TEST_SUITE("woperator") {
  TEST_CASE("multi-indices in dictionary order") {
    const auto idx = multi_indices(3, 2);
    REQUIRE(idx.size() == 3);
    CHECK(idx[0].label() == "(12)");
    CHECK(idx[1].label() == "(13)");
    CHECK(idx[2].label() == "(23)");
    CHECK(idx[2].order == 2);
    CHECK_THROWS_AS(multi_indices(3, 4), DomainError);
  }

  TEST_CASE("HessianMatrix symmetrizes from the upper triangle") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 99, 3;
    const HessianMatrix h(m);
    CHECK(h(1, 0) == 2.0);
    CHECK_THROWS_AS(HessianMatrix(Eigen::MatrixXd::Zero(2, 3)), DomainError);
  }

  TEST_CASE("n = 3 conformance with the displayed matrix") {
    oracle::Rng rng(31);
    for (int c = 0; c < 100; ++c) {
      const Eigen::MatrixXd u = oracle::random_symmetric(rng, 3);
      const WMatrix w = assemble_w(HessianMatrix(u), 2);
      CHECK(w.entries == Eigen::MatrixXd(oracle::w3_displayed(u)));
    }
  }

  TEST_CASE("assemble_w examples") {
    CHECK(assemble_w(HessianMatrix(Eigen::MatrixXd::Identity(3, 3)), 2).entries ==
          Eigen::MatrixXd(2.0 * Eigen::MatrixXd::Identity(3, 3)));
    const WMatrix w = assemble_w(HessianMatrix::diagonal(Eigen::Vector3d(1, 2, 3)), 2);
    CHECK(w.entries.isDiagonal());
    // labels (12), (13), (23)
    CHECK(w.entries(0, 0) == 3.0);
    CHECK(w.entries(1, 1) == 4.0);
    CHECK(w.entries(2, 2) == 5.0);
    CHECK(w.labels[1].label() == "(13)");
    CHECK_THROWS_AS(assemble_w(HessianMatrix(Eigen::MatrixXd::Identity(3, 3)), 0), DomainError);
  }

  TEST_CASE("entries vanish when indices differ in two places") {
    oracle::Rng rng(32);
    const Eigen::MatrixXd u = oracle::random_symmetric(rng, 4);
    const WMatrix w = assemble_w(HessianMatrix(u), 2);
    // (12) vs (34)
    CHECK(w.entries(0, 5) == 0.0);
    CHECK(w.entries.isApprox(w.entries.transpose(), 0.0));
  }

  TEST_CASE("spectral identity for all n <= 6 and all m") {
    oracle::Rng rng(33);
    for (int c = 0; c < 300; ++c) {
      const int n = oracle::pick(rng, 2, 6);
      const int m = oracle::pick(rng, 1, n);
      const Eigen::MatrixXd u = oracle::random_symmetric(rng, n);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(u, Eigen::EigenvaluesOnly), ws(assemble_w(HessianMatrix(u), m).entries, Eigen::EigenvaluesOnly);
      std::vector<double> mu(hs.eigenvalues().data(), hs.eigenvalues().data() + n);
      const auto want = oracle::lift_enum(mu, m);
      std::vector<double> got(ws.eigenvalues().data(), ws.eigenvalues().data() + ws.eigenvalues().size());
      std::sort(got.rbegin(), got.rend());
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9);
    }
  }

  TEST_CASE("det_w examples and rotation invariance") {
    CHECK(det_w(HessianMatrix(Eigen::MatrixXd::Identity(3, 3)), 2) == doctest::Approx(8.0));
    oracle::Rng rng(34);
    const Eigen::MatrixXd q = oracle::random_rotation(rng, 3);
    CHECK(det_w(HessianMatrix::from_spectrum(Eigen::Vector3d(1, 2, 3), q), 2) == doctest::Approx(60.0));
    const Eigen::MatrixXd q4 = oracle::random_rotation(rng, 4);
    CHECK(det_w(HessianMatrix::from_spectrum(Eigen::Vector4d(1, 1, 1, 1), q4), 3) == doctest::Approx(81.0));
    for (int c = 0; c < 100; ++c) {
      const int n = oracle::pick(rng, 3, 6);
      const int m = oracle::pick(rng, 1, n);
      const Eigen::MatrixXd u = oracle::random_symmetric(rng, n);
      const Eigen::MatrixXd r = oracle::random_rotation(rng, n);
      const double a = det_w(HessianMatrix(u), m);
      const double b = det_w(HessianMatrix(r.transpose() * u * r), m);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
      CHECK(std::abs(a - oracle::det_w_spectral(u, m)) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
  }

  TEST_CASE("adjugate") {
    Eigen::MatrixXd a(3, 3);
    a << 2, 1, 0, 1, 3, 1, 0, 1, 4;
    CHECK((adjugate(a) * a).isApprox(a.determinant() * Eigen::MatrixXd::Identity(3, 3), 1e-12));
    Eigen::MatrixXd s(2, 2);
    s << 1, 2, 2, 4;
    Eigen::MatrixXd want(2, 2);
    want << 4, -2, -2, 1;
    CHECK(adjugate(s) == want);
  }

  TEST_CASE("linearization examples") {
    const Eigen::MatrixXd F = linearization(HessianMatrix(Eigen::MatrixXd::Identity(3, 3)), 2);
    CHECK(F.diagonal().isApprox(Eigen::Vector3d::Constant(8.0)));
    CHECK((F - Eigen::MatrixXd(F.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    // diag(1,2,3): W = diag(3,4,5) over (12),(13),(23); F^{11} = 5*4 + 5*3 = 35 from the
    // cofactors of the two W entries containing index 1.
    const Eigen::MatrixXd G = linearization(HessianMatrix::diagonal(Eigen::Vector3d(1, 2, 3)), 2);
    CHECK(G(0, 0) == doctest::Approx(35.0));
    CHECK(G(1, 1) == doctest::Approx(5 * 4 + 3 * 4.0));
    CHECK(G(2, 2) == doctest::Approx(5 * 3 + 3 * 4.0));
  }

  TEST_CASE("linearization matches finite differences and is symmetric") {
    oracle::Rng rng(35);
    for (int c = 0; c < 200; ++c) {
      const int n = oracle::pick(rng, 3, 6);
      const int m = oracle::pick(rng, 1, n);
      const Eigen::MatrixXd u = oracle::admissible_hessian(rng, n);
      const Eigen::MatrixXd F = linearization(HessianMatrix(u), m);
      CHECK(F.isApprox(F.transpose(), 0.0));
      const Eigen::MatrixXd fd = oracle::fd_gradient(
          [m](const Eigen::MatrixXd& h) { return oracle::det_w_spectral(h, m); }, u, 1e-5);
      CHECK((F - fd).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, fd.cwiseAbs().maxCoeff()));
    }
  }

  TEST_CASE("linearization is smooth at repeated eigenvalues") {
    const Eigen::MatrixXd F = linearization(HessianMatrix(2.0 * Eigen::MatrixXd::Identity(4, 4)), 3);
    // W = 6 I_4, F^{ii} = 3 * 6^3
    CHECK(F.diagonal().isApprox(Eigen::Vector4d::Constant(3 * 216.0)));
  }

  TEST_CASE("concavity probe") {
    const HessianMatrix I(Eigen::MatrixXd::Identity(3, 3));
    CHECK(concavity_probe(I, I, 2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(concavity_probe(I, HessianMatrix::diagonal(Eigen::Vector3d(1, 2, 3)), 2) >= 0.0);
    CHECK_THROWS_AS(concavity_probe(I, HessianMatrix::diagonal(Eigen::Vector3d(-3, 1, 1)), 2), DomainError);
    oracle::Rng rng(36);
    for (int c = 0; c < 2000; ++c) {
      const int n = oracle::pick(rng, 3, 5);
      const HessianMatrix a(oracle::admissible_hessian(rng, n)), b(oracle::admissible_hessian(rng, n));
      CHECK(concavity_probe(a, b, n - 1) >= -1e-10);
    }
  }

  TEST_CASE("lifted leading-term bound") {
    oracle::Rng rng(37);
    for (int c = 0; c < 300; ++c) {
      const int n = oracle::pick(rng, 3, 6);
      const int m = n - 1;
      const Eigen::VectorXd mu = oracle::admissible_spectrum(rng, n);
      const EigenTuple lam = lift_spectrum(EigenTuple(std::vector<double>(mu.data(), mu.data() + n)), m);
      const int p = static_cast<int>(lam.size());
      CHECK(leading_term_margin(lam, p) >= -1e-10 * std::abs(elementary_symmetric(lam, p)));
    }
  }
}
