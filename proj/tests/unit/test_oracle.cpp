#include "helpers.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using testing::cols;
using testing::pt;

TEST_SUITE("oracle") {
  TEST_CASE("enumeration finds the non-crossing matching of the 2x2 instance") {
    const auto xs = cols({pt({0, 0}), pt({1, 0})});
    const auto ys = cols({pt({0, 1}), pt({1, 1})});
    const auto best = oracle::brute_force_ot(xs, ys, oracle::squared_euclidean());
    CHECK(best.permutation == std::vector<int>{0, 1});
    CHECK(best.cost.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(best.cost.method == oracle::Method::enumeration);
    CHECK(best.cost.work == 4);
  }

  TEST_CASE("enumeration on identical marginals and single atoms") {
    const auto xs = cols({pt({0, 0}), pt({2, 1}), pt({-1, 3})});
    const auto best = oracle::brute_force_ot(xs, xs, oracle::squared_euclidean());
    CHECK(best.permutation == std::vector<int>{0, 1, 2});
    CHECK(best.cost.value == 0.0);
    const auto one = oracle::brute_force_ot(cols({pt({0, 0})}), cols({pt({3, 4})}), oracle::squared_euclidean());
    CHECK(one.permutation == std::vector<int>{0});
    CHECK(one.cost.value == doctest::Approx(25.0));
  }

  TEST_CASE("enumeration refuses n > 8") {
    const Eigen::MatrixXd big = Eigen::MatrixXd::Random(2, 9);
    CHECK_THROWS(oracle::brute_force_ot(big, big, oracle::squared_euclidean()));
    const Eigen::MatrixXd eight = Eigen::MatrixXd::Random(2, 8);
    CHECK_THROWS(oracle::brute_force_monotone(eight, eight, oracle::squared_euclidean()));
  }

  TEST_CASE("monotone oracle on the one-dimensional examples") {
    CHECK(oracle::brute_force_monotone(cols({pt({0}), pt({1})}), cols({pt({0}), pt({1})}), oracle::squared_euclidean()));
    CHECK_FALSE(
        oracle::brute_force_monotone(cols({pt({0}), pt({1})}), cols({pt({1}), pt({0})}), oracle::squared_euclidean()));
    CHECK(oracle::brute_force_monotone(cols({pt({5})}), cols({pt({-2})}), oracle::squared_euclidean()));
  }

  TEST_CASE("closed forms") {
    CHECK(oracle::halfspace_fraction(0.1, 2.0).value == doctest::Approx(0.49204).epsilon(1e-5));
    CHECK(oracle::cone_fraction_arctan(1.0, 1.0).value == doctest::Approx(0.25));
    CHECK(std::abs(oracle::euclidean_derivative(testing::kPi / 2, 1.0).value) < 1e-15);
    CHECK(oracle::euclidean_derivative(0.0, 2.0).value == doctest::Approx(-2.0));
    CHECK(oracle::quantified_halfspace_fraction(0.5, 2.0).value == doctest::Approx(1.0 / 3.0));
    CHECK(oracle::quantified_halfspace_fraction(1.0, 2.0).value == 0.0);
    CHECK_THROWS(oracle::halfspace_fraction(5.0, 2.0));
    CHECK_THROWS(oracle::cone_fraction_arctan(0.0, 1.0));
  }

  TEST_CASE("cone limit and grid quadrature agree") {
    CHECK(oracle::cone_fraction_limit(0.5, 1.0).value == doctest::Approx(1.0 / 6.0));
    CHECK(oracle::cone_fraction_limit(1.0, 1.0).value == doctest::Approx(0.5));
    CHECK(oracle::cone_fraction_limit(2.0, 1.0).value == 1.0);
    // At small r the union of balls is a sector of half-angle arcsin(k / L).
    CHECK(oracle::grid_cone_fraction(0.5, 1.0, 1e-3, 1000).value == doctest::Approx(1.0 / 6.0).epsilon(5e-3));
    // At k = L the union is the disk B(L e, L); at r = 2L the covered share of B_r is exactly 1/4.
    CHECK(oracle::grid_cone_fraction(1.0, 1.0, 2.0, 1000).value == doctest::Approx(0.25).epsilon(5e-3));
  }

  TEST_CASE("finite differences and dual pairing") {
    const auto fd = oracle::fd_directional(2.0, pt({0, 0}), pt({1, 0}), pt({0, 1}), 1e-6);
    CHECK(std::abs(fd.value) < 1e-5);
    CHECK(fd.method == oracle::Method::finite_difference);
    // (0.6, 0.8) has Euclidean dual norm 1.
    CHECK(oracle::dual_norm_by_pairing(pt({0.6, 0.8}), 2.0, 1000, 1).value == doctest::Approx(1.0).epsilon(1e-12));
    // l4 dual is l(4/3).
    const auto w = pt({0.3, -0.7});
    const double q = 4.0 / 3.0;
    const double expected = std::pow(std::pow(0.3, q) + std::pow(0.7, q), 1.0 / q);
    CHECK(oracle::dual_norm_by_pairing(w, 4.0, 1000, 2).value == doctest::Approx(expected).epsilon(1e-12));
  }
}
