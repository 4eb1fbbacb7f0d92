#include "helpers.hpp"
#include "mongelab/experiment.hpp"
#include "mongelab/transport.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mongelab;
using testing::cols;
using testing::pt;

namespace {
const MetricSpace kLine{NormSpec::euclidean(1)};
const MetricSpace kPlane{NormSpec::euclidean(2)};

DiscreteMeasure two_points(double a, double b) { return DiscreteMeasure::uniform(cols({pt({a}), pt({b})})); }

DiscreteMeasure random_measure(std::mt19937_64& rng, int n, bool equal) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.1, 1.0);
  Matrix pts(2, n);
  VectorX<double> ws(n);
  for (int i = 0; i < n; ++i) {
    pts.col(i) = pt({u(rng), u(rng)});
    ws[i] = equal ? 1.0 : w(rng);
  }
  return DiscreteMeasure::normalized(pts, ws);
}
}  // namespace

TEST_SUITE("transport") {
  TEST_CASE("cost matrices") {
    const auto c = CostFunction::squared_distance(kLine);
    const auto m = cost_matrix(c, two_points(0, 1), two_points(0, 1));
    CHECK(m.entries == (Matrix(2, 2) << 0, 1, 1, 0).finished());
    CHECK_FALSE(m.has_infinite);

    const auto inst = transport_instance("linf-two-segments", 4);
    const auto ones = cost_matrix(inst.cost, inst.source, inst.target);
    CHECK(ones.entries.isApproxToConstant(1.0, 1e-15));

    const auto single = cost_matrix(c, DiscreteMeasure::dirac(pt({2})), DiscreteMeasure::dirac(pt({5})));
    CHECK(single.entries.size() == 1);
    CHECK(single.entries(0, 0) == 9.0);

    const auto neg = CostFunction::custom("neg", [](const Point&, const Point&) { return -1.0; });
    CHECK_THROWS_AS(cost_matrix(neg, two_points(0, 1), two_points(0, 1)), ValidationError);
    const auto inf = CostFunction::custom("inf", [](const Point& x, const Point& y) {
      return x[0] == y[0] ? 0.0 : kInfiniteCost;
    });
    CHECK(cost_matrix(inf, two_points(0, 1), two_points(0, 1)).has_infinite);
  }

  TEST_CASE("cost scaling and tables") {
    const auto c = CostFunction::distance(kPlane).scaled(3.0);
    CHECK(c(pt({0, 0}), pt({3, 4})) == doctest::Approx(15.0));
    CHECK_THROWS_AS(CostFunction::distance(kPlane).scaled(0.0), ValidationError);
    const auto t = CostFunction::table((Matrix(2, 2) << 0, 2, 3, 0).finished());
    CHECK(t(point_of_index(0), point_of_index(1)) == 2.0);
    CHECK(t(point_of_index(1), point_of_index(0)) == 3.0);
  }

  TEST_CASE("solver on small examples") {
    const auto c = CostFunction::squared_distance(kPlane);
    const auto d2d = solve_kantorovich(DiscreteMeasure::dirac(pt({0, 0})), DiscreteMeasure::dirac(pt({3, 4})), c);
    CHECK(d2d.entries() == std::vector<PlanEntry>{{0, 0, 1.0}});
    CHECK(d2d.cost(c) == doctest::Approx(25.0));

    const auto id = solve_kantorovich(two_points(0, 1), two_points(0, 1), CostFunction::squared_distance(kLine));
    CHECK(id.entries() == std::vector<PlanEntry>{{0, 0, 0.5}, {1, 1, 0.5}});
    CHECK(id.cost(CostFunction::squared_distance(kLine)) == 0.0);

    const auto inst = transport_instance("euclid-crossing-2x2");
    const auto plan = solve_kantorovich(inst.source, inst.target, inst.cost);
    CHECK(plan.cost(inst.cost) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mapness(plan).map == std::vector<Eigen::Index>{0, 1});
  }

  TEST_CASE("solver matches enumeration on equal-weight instances") {
    std::mt19937_64 rng(2024);
    const auto c = CostFunction::squared_distance(kPlane);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 7;
      const auto mu = random_measure(rng, n, true), nu = random_measure(rng, n, true);
      const auto plan = solve_kantorovich(mu, nu, c);
      const auto best = oracle::brute_force_ot(mu.points(), nu.points(), oracle::squared_euclidean());
      REQUIRE(std::abs(plan.cost(c) - best.cost.value) <= 1e-9 * std::max(1.0, best.cost.value));
    }
  }

  TEST_CASE("plans respect marginals and nonnegativity") {
    std::mt19937_64 rng(7);
    const auto c = CostFunction::distance(kPlane);
    for (int trial = 0; trial < 50; ++trial) {
      const auto mu = random_measure(rng, 1 + trial % 6, false), nu = random_measure(rng, 1 + (trial * 5) % 7, false);
      const Matrix p = solve_kantorovich(mu, nu, c).dense();
      CHECK((p.array() >= 0.0).all());
      CHECK((p.rowwise().sum() - mu.weights()).cwiseAbs().maxCoeff() <= tol::kMarginal);
      CHECK((p.colwise().sum().transpose() - nu.weights()).cwiseAbs().maxCoeff() <= tol::kMarginal);
    }
  }

  TEST_CASE("scaling the cost keeps the optimum and scales the value") {
    std::mt19937_64 rng(13);
    const auto mu = random_measure(rng, 5, false), nu = random_measure(rng, 4, false);
    const auto c = CostFunction::squared_distance(kPlane);
    const auto a = solve_kantorovich(mu, nu, c), b = solve_kantorovich(mu, nu, c.scaled(2.5));
    CHECK(b.cost(c.scaled(2.5)) == doctest::Approx(2.5 * a.cost(c)).epsilon(1e-12));
    CHECK(b.cost(c) == doctest::Approx(a.cost(c)).epsilon(1e-12));
  }

  TEST_CASE("optimal cost is convex along the segment between two optima") {
    const auto inst = transport_instance("linf-two-segments", 4);
    const auto costs = cost_matrix(inst.cost, inst.source, inst.target).entries;
    const auto vertex = solve_kantorovich(inst.source, inst.target, costs);
    const auto prod = product_plan(inst.source, inst.target);
    const auto mid = vertex.blend(prod, 0.5);
    CHECK(mid.cost(costs) <= 0.5 * vertex.cost(costs) + 0.5 * prod.cost(costs) + 1e-12);
    CHECK(mid.cost(costs) == doctest::Approx(vertex.cost(costs)));
    CHECK(vertex.distance_to(prod) > 0.0);
  }

  TEST_CASE("infinite costs are admissible only when a finite plan exists") {
    const auto inf = CostFunction::custom("same-point", [](const Point& x, const Point& y) {
      return x[0] == y[0] ? 0.0 : kInfiniteCost;
    });
    const auto ok = solve_kantorovich(two_points(0, 1), two_points(0, 1), inf);
    CHECK(ok.cost(inf) == 0.0);
    CHECK_THROWS_AS(solve_kantorovich(two_points(0, 1), two_points(2, 3), inf), NumericalError);
  }

  TEST_CASE("mapness") {
    const auto mu = two_points(0, 1);
    const TransportPlan perm(mu, mu, {{0, 1, 0.5}, {1, 0, 0.5}});
    const auto dp = mapness(perm);
    CHECK(dp.mapness == 1.0);
    CHECK(dp.map == std::vector<Eigen::Index>{1, 0});

    const auto prod = mapness(product_plan(mu, mu));
    CHECK(prod.mapness == 0.0);
    CHECK_FALSE(prod.map.has_value());
    CHECK(prod.row_entropy[0] == doctest::Approx(std::log(2.0)));

    const auto nu = DiscreteMeasure(cols({pt({0}), pt({1})}), pt({0.75, 0.25}));
    const TransportPlan mixed(mu, nu, {{0, 0, 0.5}, {1, 0, 0.25}, {1, 1, 0.25}});
    CHECK(mapness(mixed).mapness == doctest::Approx(0.5));
  }

  TEST_CASE("plan construction validates marginals") {
    const auto mu = two_points(0, 1);
    CHECK_THROWS_AS(TransportPlan(mu, mu, {{0, 0, 0.5}, {1, 0, 0.5}}), ValidationError);
    CHECK_THROWS_AS(TransportPlan(mu, mu, {{0, 0, 0.5}, {1, 1, 0.6}}), ValidationError);
  }

  TEST_CASE("restriction to balls") {
    const auto mu = two_points(0, 10), nu = two_points(0, 10);
    const TransportPlan plan(mu, nu, {{0, 0, 0.5}, {1, 1, 0.5}});

    const auto all = restrict_plan(plan, kLine, {pt({5}), 20.0}, {pt({5}), 20.0});
    CHECK(all.captured_mass == doctest::Approx(1.0));
    CHECK(all.plan.entries() == plan.entries());

    const auto half = restrict_plan(plan, kLine, {pt({0}), 1.0}, {pt({0}), 1.0});
    CHECK(half.captured_mass == doctest::Approx(0.5));
    REQUIRE(half.plan.entries().size() == 1);
    CHECK(half.plan.entries()[0].mass == doctest::Approx(1.0));
    CHECK(half.source_index == std::vector<Eigen::Index>{0});

    CHECK_THROWS_AS(restrict_plan(plan, kLine, {pt({100}), 1.0}, {pt({100}), 1.0}), NumericalError);
  }

  TEST_CASE("uniqueness on the builtin instances") {
    const auto flat = transport_instance("linf-two-segments", 4);
    const auto multi = uniqueness_probe(flat.source, flat.target, flat.cost, 4, 1);
    CHECK(multi.verdict == Uniqueness::multiple);
    REQUIRE(multi.witness.second.has_value());
    CHECK(std::abs(multi.witness.first_cost - multi.witness.second_cost) < 1e-12);
    CHECK(mapness(multi.witness.first).mapness == 1.0);
    CHECK(mapness(*multi.witness.second).mapness == 0.0);

    const auto cross = transport_instance("euclid-crossing-2x2");
    const auto uniq = uniqueness_probe(cross.source, cross.target, cross.cost, 4, 1);
    CHECK(uniq.verdict == Uniqueness::unique);
    CHECK_FALSE(uniq.witness.second.has_value());
    CHECK(uniq.witness.permutation_disagreements == 0);
  }

  TEST_CASE("identical marginals with distinct atoms have a unique identity optimum") {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 6; ++n) {
      const auto mu = random_measure(rng, n, true);
      const auto res = uniqueness_probe(mu, mu, CostFunction::squared_distance(kPlane), 3, n);
      CHECK(res.verdict == Uniqueness::unique);
      const auto map = mapness(res.witness.first).map;
      REQUIRE(map.has_value());
      for (int i = 0; i < n; ++i) CHECK((*map)[i] == i);
      const auto best = oracle::brute_force_ot(mu.points(), mu.points(), oracle::squared_euclidean());
      for (int i = 0; i < n; ++i) CHECK(best.permutation[i] == i);
    }
  }

  TEST_CASE("the simplex exposes consistent duals") {
    std::mt19937_64 rng(5);
    const auto mu = random_measure(rng, 4, false), nu = random_measure(rng, 5, false);
    const auto costs = cost_matrix(CostFunction::squared_distance(kPlane), mu, nu).entries;
    const auto sol = solve_transportation(costs, mu.weights(), nu.weights());
    CHECK(sol.basis.size() == 8);
    for (const auto& b : sol.basis) CHECK(std::abs(costs(b.i, b.j) - sol.u[b.i] - sol.v[b.j]) <= 1e-12);
    for (Eigen::Index i = 0; i < costs.rows(); ++i)
      for (Eigen::Index j = 0; j < costs.cols(); ++j) CHECK(costs(i, j) - sol.u[i] - sol.v[j] >= -1e-9);
    CHECK(sol.cost == doctest::Approx((sol.flow.array() * costs.array()).sum()));
  }
}
