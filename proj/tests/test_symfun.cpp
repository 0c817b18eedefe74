#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wma/combinatorics.hpp"
#include "wma/cone.hpp"
#include "wma/error.hpp"
#include "wma/symfun.hpp"

using namespace wma;

TEST_SUITE("symfun") {
  TEST_CASE("binomial and subsets") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 4) == 0);
    CHECK(subsets(4, 2) == oracle::subsets(4, 2));
    CHECK(subsets(6, 5).size() == 6);
  }

  TEST_CASE("EigenTuple sorts and records the permutation") {
    EigenTuple t({1.0, 3.0, 2.0});
    CHECK(t[0] == 3.0);
    CHECK(t[2] == 1.0);
    CHECK(t.original_index(0) == 1);
    CHECK(t.sorted_position(0) == 2);
    CHECK_THROWS_AS(EigenTuple({1.0, NAN}), DomainError);
  }

  TEST_CASE("elementary_symmetric examples") {
    CHECK(elementary_symmetric(EigenTuple{1, 2, 3}, 2) == doctest::Approx(oracle::sk_enum({1, 2, 3}, 2)));
    CHECK(elementary_symmetric(EigenTuple{1, 2, 3}, 2) == 11.0);
    CHECK(elementary_symmetric(EigenTuple{1, 1, 1}, 3) == 1.0);
    CHECK(elementary_symmetric(EigenTuple{4, -2, 7}, 0) == 1.0);
    CHECK_THROWS_AS(elementary_symmetric(EigenTuple{1, 2}, 3), DomainError);
    CHECK_THROWS_AS(elementary_symmetric(EigenTuple{1, 2}, -1), DomainError);
  }

  TEST_CASE("recurrence matches enumeration") {
    oracle::Rng rng(11);
    for (int c = 0; c < 500; ++c) {
      const int p = oracle::pick(rng, 1, 10);
      std::vector<double> v(static_cast<std::size_t>(p));
      for (auto& x : v) x = oracle::uniform(rng, -2, 2);
      const auto all = elementary_symmetric_all(v);
      for (int k = 0; k <= p; ++k) {
        double scale = 0;
        std::vector<double> av(v);
        for (auto& x : av) x = std::abs(x);
        scale = std::max(1.0, oracle::sk_enum(av, k));
        CHECK(std::abs(all[static_cast<std::size_t>(k)] - oracle::sk_enum(v, k)) <= 1e-13 * scale);
      }
    }
  }

  TEST_CASE("deleted_symmetric examples") {
    const EigenTuple t{1, 2, 3};
    // sorted (3, 2, 1): value 1 sits at position 2
    CHECK(deleted_symmetric(t, 1, {t.sorted_position(0)}) == 5.0);
    CHECK(deleted_symmetric(EigenTuple{1, 1, 1}, 2, {0}) == 1.0);
    CHECK(deleted_symmetric(t, 2, {t.sorted_position(0), t.sorted_position(1)}) == 0.0);
    CHECK_THROWS_AS(deleted_symmetric(t, 1, {1, 1}), DomainError);
    CHECK_THROWS_AS(deleted_symmetric(t, 1, {3}), DomainError);
    CHECK_THROWS_AS(deleted_symmetric(t, 1, {0, 1, 2}), DomainError);
  }

  TEST_CASE("identities hold at the documented examples") {
    const auto r = check_identities(EigenTuple{1, 2, 3}, 2);
    CHECK(r.max_abs() == 0.0);
    // sum lambda_i S_1(lambda|i) = 1*5 + 2*4 + 3*3 = 22 = 2 S_2
    CHECK(1 * 5 + 2 * 4 + 3 * 3 == 2 * 11);
    CHECK(check_identities(EigenTuple{1, 1, 1}, 2).max_abs() == 0.0);
  }

  TEST_CASE("identities hold on random tuples") {
    oracle::Rng rng(12);
    for (int c = 0; c < 2000; ++c) {
      const int p = oracle::pick(rng, 1, 10);
      const int k = oracle::pick(rng, 1, p);
      std::vector<double> v(static_cast<std::size_t>(p));
      for (auto& x : v) x = oracle::uniform(rng, -3, 3);
      CHECK(check_identities(EigenTuple(v), k).holds(1e-12));
    }
  }

  TEST_CASE("permutation symmetry is exact") {
    oracle::Rng rng(13);
    for (int c = 0; c < 200; ++c) {
      std::vector<double> v(7);
      for (auto& x : v) x = oracle::uniform(rng, -2, 2);
      const EigenTuple a(v);
      std::shuffle(v.begin(), v.end(), rng);
      const EigenTuple b(v);
      for (int k = 0; k <= 7; ++k) CHECK(elementary_symmetric(a, k) == elementary_symmetric(b, k));
    }
  }

  TEST_CASE("Newton-Maclaurin margin") {
    CHECK(newton_maclaurin_margin(EigenTuple{1, 1, 1}, 2, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(newton_maclaurin_margin(EigenTuple{1, 2, 3}, 2, 1) == doctest::Approx(2.0 - std::sqrt(11.0 / 3.0)));
    CHECK(newton_maclaurin_margin(EigenTuple{3, 1, 0.1}, 3, 1) > 0.0);
    CHECK_THROWS_AS(newton_maclaurin_margin(EigenTuple{1, 2, 3}, 1, 1), DomainError);
    CHECK_THROWS_AS(newton_maclaurin_margin(EigenTuple{1, 2, 3}, 1, 2), DomainError);
  }

  TEST_CASE("root gradient and leading term bounds on the cone") {
    oracle::Rng rng(14);
    for (int c = 0; c < 500; ++c) {
      const int p = oracle::pick(rng, 2, 8);
      const int k = oracle::pick(rng, 1, p);
      std::vector<double> v(static_cast<std::size_t>(p));
      for (auto& x : v) x = oracle::uniform(rng, -1, 3);
      while (!in_gamma_k(EigenTuple(v), k)) {
        for (auto& x : v) x += 0.25;
      }
      const EigenTuple t(v);
      const auto g = root_gradient(t, k);
      double sum = 0;
      for (double x : g) sum += x;
      CHECK(sum >= std::pow(oracle::binom(p, k), 1.0 / k) - 1e-10);
      // finite-difference check of one component
      const std::size_t i = static_cast<std::size_t>(oracle::pick(rng, 0, p - 1));
      std::vector<double> sv(t.values().begin(), t.values().end());
      const double s = 1e-6;
      auto root = [&](std::vector<double> w) { return std::pow(oracle::sk_enum(w, k), 1.0 / k); };
      auto up = sv, dn = sv;
      up[i] += s;
      dn[i] -= s;
      CHECK(g[i] == doctest::Approx((root(up) - root(dn)) / (2 * s)).epsilon(1e-5));
      if (k == p) CHECK(leading_term_margin(t, k) >= -1e-10 * std::abs(elementary_symmetric(t, k)));
    }
  }
}
