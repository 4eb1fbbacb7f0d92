#include "helpers.hpp"
#include "mongelab/conditions.hpp"
#include "mongelab/experiment.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mongelab;
using testing::pt;

namespace {
const MetricSpace kPlane{NormSpec::euclidean(2)};
const SampledDensity kSquare = SampledDensity::uniform_box(pt({-1, -1}), pt({1, 1}));

TwistConfig config(std::uint64_t seed, std::size_t outer = 4000) {
  TwistConfig cfg;
  cfg.seed = seed;
  cfg.outer_budget = outer;
  return cfg;
}

bool covers(const Estimate& e, double truth, double slack) {
  return e.lower - slack <= truth && truth <= e.upper + slack;
}

// x, y random in the unit square and z on the sphere of radius d(x, y) around x.
struct Triple {
  Point x, y, z;
};
Triple equidistant_triple(const NormSpec& n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g;
  Triple t{pt({u(rng), u(rng)}), pt({u(rng), u(rng)}), Point()};
  while (norm(n, Point(t.y - t.x)) < 0.2) t.y = pt({u(rng), u(rng)});
  Point w;
  do {
    w = pt({g(rng), g(rng)});
    t.z = t.x + norm(n, Point(t.y - t.x)) / norm(n, w) * w;
  } while (norm(n, Point(t.z - t.y)) < 0.1);
  return t;
}
}  // namespace

TEST_SUITE("conditions") {
  TEST_CASE("twist config validation") {
    TwistConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.s_schedule = {0.1, 0.1};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg.s_schedule = {};
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = TwistConfig{};
    cfg.eps = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = TwistConfig{};
    cfg.inner_budget = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK(TwistConfig{}.adversary_radius(2.0) == 0.5);
  }

  TEST_CASE("pointwise twist ratio for squared distance") {
    const auto c = CostFunction::squared_distance(kPlane);
    const auto rep = pmtc_ratio(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), config(1, 20000));
    const double truth = oracle::halfspace_fraction(0.1, 2.0).value;
    CHECK(truth == doctest::Approx(0.49204).epsilon(1e-4));
    CHECK(rep.mode == TwistMode::exact);
    CHECK(rep.verdict == Verdict::positive);
    for (const auto& e : rep.ratios) CHECK(covers(e, truth, 0.005));
  }

  TEST_CASE("pointwise twist ratio vanishes for y = z and for large eps") {
    const auto c = CostFunction::squared_distance(kPlane);
    const auto same = pmtc_ratio(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({1, 0}), config(2));
    CHECK(same.degenerate.has_value());
    CHECK(same.verdict == Verdict::zero);
    for (const auto& e : same.ratios) CHECK(e.value == 0.0);

    auto cfg = config(3);
    cfg.eps = 5.0;
    const auto big = pmtc_ratio(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), cfg);
    for (const auto& e : big.ratios) CHECK(e.hits == 0);
    CHECK(big.verdict == Verdict::zero);
  }

  TEST_CASE("pointwise membership") {
    const auto c = CostFunction::squared_distance(kPlane);
    // 2 (x' - x) . (z - y) = -0.4 < -eps |x'| = -0.01.
    CHECK(pmtc_member(kPlane, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), 0.1, pt({0.1, 0})));
    CHECK_FALSE(pmtc_member(kPlane, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), 0.1, pt({-0.1, 0})));
    CHECK_FALSE(pmtc_member(kPlane, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), 0.1, pt({0, 0.1})));
  }

  TEST_CASE("epsilon scan and sampled variation") {
    const auto c = CostFunction::squared_distance(kPlane);
    const auto scan = pmtc_epsilon_scan(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), config(4, 2000));
    REQUIRE(scan.eps.size() == 8);
    CHECK(scan.eps.front() == doctest::Approx(1.0));
    CHECK(scan.largest_positive.has_value());
    const auto var = pmtc_variation(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), 0.05, config(5, 4000));
    CHECK(var.points.size() == 5);
    CHECK(var.max_difference < 0.06);
  }

  TEST_CASE("local twist ratio is positive and bracketed") {
    const auto c = CostFunction::squared_distance(kPlane);
    auto cfg = config(6);
    cfg.r2 = 0.1;
    const auto rep = lmtc_ratio(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), cfg);
    CHECK(rep.r2 == 0.1);
    CHECK(rep.optimistic.verdict == Verdict::positive);
    CHECK(rep.conservative.verdict == Verdict::positive);
    CHECK(rep.conservative.liminf_proxy > 0.3);
    for (std::size_t i = 0; i < rep.optimistic.ratios.size(); ++i)
      CHECK(rep.conservative.ratios[i].hits <= rep.optimistic.ratios[i].hits);
    CHECK(rep.sampled_pairs > 0);
    CHECK(rep.net_pairs > 0);
    CHECK(rep.covering_radius > 0.0);
  }

  TEST_CASE("local twist ratio with overlapping balls or y = z") {
    const auto c = CostFunction::squared_distance(kPlane);
    auto cfg = config(7);
    cfg.r2 = 1.0;
    const auto rep = lmtc_ratio(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({-1, 0}), cfg);
    for (const auto& e : rep.optimistic.ratios) CHECK(e.value == 0.0);
    for (const auto& e : rep.conservative.ratios) CHECK(e.value == 0.0);
    CHECK(rep.optimistic.degenerate.has_value());
    CHECK_THROWS_AS(lmtc_ratio(kPlane, kSquare, c, pt({0, 0}), pt({1, 0}), pt({1, 0}), cfg), ValidationError);
  }

  TEST_CASE("bracket property on random instances") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto c = CostFunction::squared_distance(kPlane);
    for (int trial = 0; trial < 6; ++trial) {
      const Point y = pt({u(rng), u(rng)}), z = pt({u(rng), u(rng)});
      auto cfg = config(100 + trial, 1000);
      cfg.inner_budget = 256;
      const auto rep = lmtc_ratio(kPlane, kSquare, c, pt({0, 0}), y, z, cfg);
      for (std::size_t i = 0; i < rep.optimistic.ratios.size(); ++i)
        CHECK(rep.conservative.ratios[i].value <= rep.optimistic.ratios[i].value);
    }
  }

  TEST_CASE("pointwise members are local members for tolerance-matched radii") {
    const auto c = CostFunction::squared_distance(kPlane);
    const double eps = 0.2;
    const Point x = pt({0, 0}), y = pt({1, 0.2}), z = pt({-0.8, -0.3});
    const LmtcAdversaries adv(kPlane, c, x, y, z, eps / 8.0, 512, 9, 4.0);
    Rng rng(10);
    std::size_t accepted = 0, agree = 0;
    for (int k = 0; k < 4000; ++k) {
      const Point xp = sample_uniform_ball(NormSpec::euclidean(2), x, 0.05, rng);
      if (!pmtc_member(kPlane, c, x, y, z, eps, xp)) continue;
      ++accepted;
      agree += adv.optimistic_member(xp) ? 1 : 0;
    }
    REQUIRE(accepted > 1000);
    CHECK(static_cast<double>(agree) >= 0.99 * static_cast<double>(accepted));
  }

  TEST_CASE("regularity probe") {
    const auto d2 = CostFunction::squared_distance(kPlane);
    const auto pass = c1_probe(kPlane, d2, pt({0, 0}), pt({1, 0.5}), 0.5, 0.05, 0.05, 0.01, 5000, 1);
    CHECK(pass.pass);
    CHECK(pass.sup <= 0.1 + 1e-9);
    const auto d = CostFunction::distance(kPlane);
    CHECK(c1_probe(kPlane, d, pt({0, 0}), pt({1, 0.5}), 0.5, 0.01, 0.01, 0.005, 5000, 2).pass);
    CHECK_FALSE(c1_probe(kPlane, d2, pt({0, 0}), pt({1, 0.5}), 0.0, 0.05, 0.05, 0.01, 5000, 3).pass);
    CHECK_THROWS_AS(c1_probe(kPlane, d2, pt({0, 0}), pt({1, 0.5}), 0.5, 0.0, 0.05, 0.01, 100, 3), ValidationError);
  }

  TEST_CASE("non-branching scan in the Euclidean plane") {
    const auto rep = nonbranching_scan(kPlane, pt({0, 0}), pt({1, 0}), pt({0, 1}), 0.05, {1e-5}, 200, 1);
    CHECK(rep.positive);
    CHECK(rep.rho_hat > 0.8);
    CHECK(rep.rho_hat <= 1.0);
    CHECK(rep.canonical_geodesic_only);
    for (const auto& t : rep.triples) CHECK(t.derivative >= -t.d - tol::kTriangleSlack);
    CHECK_THROWS_AS(nonbranching_scan(kPlane, pt({0, 0}), pt({1, 0}), pt({0, 2}), 0.05, {1e-5}, 10, 1),
                    ValidationError);
  }

  TEST_CASE("the sup-norm branching triple") {
    const auto inst = triple_instance("linf-branching-triple");
    const auto rep = nonbranching_scan(inst.space, inst.x, inst.y, inst.z, inst.r, {1e-5}, 64, 3);
    CHECK_FALSE(rep.positive);
    CHECK(rep.rho_hat <= 1e-6);
    const auto& worst = rep.triples[rep.worst];
    CHECK(std::abs(worst.derivative + worst.d) <= 1e-6);
  }

  TEST_CASE("l4 triples are non-branching and match the certificate") {
    const NormSpec n = NormSpec::lp(4.0, 2);
    const MetricSpace s(n);
    const auto rep = nonbranching_scan(s, pt({0, 0}), pt({1, 0}), pt({0, 1}), 0.05, {1e-5}, 200, 4);
    CHECK(rep.positive);
    const double rho = certificate_local_rho(n, pt({0, 0}), pt({1, 0}), pt({0, 1}), 0.05, 200, 4);
    CHECK(rho > 0.0);
    CHECK(std::abs(rho - rep.rho_hat) < 0.05);
  }

  TEST_CASE("normed certificate examples") {
    const auto e = normed_nonbranching_certificate(NormSpec::euclidean(2), pt({0, 0}), pt({1, 0}), pt({0, 1}));
    CHECK(std::abs(e.value) < 1e-12);
    CHECK(e.equidistant);
    const auto line = normed_nonbranching_certificate(NormSpec::euclidean(2), pt({0, 0}), pt({1, 0}), pt({2, 0}));
    CHECK(line.value == doctest::Approx(-1.0));
    CHECK_FALSE(line.equidistant);

    const NormSpec l4 = NormSpec::lp(4.0, 2);
    const auto c4 = normed_nonbranching_certificate(l4, pt({0, 0}), pt({1, 0}), pt({0, 1}));
    CHECK(c4.value > -1.0);
    CHECK(c4.value < 1.0);
    const auto d = directional_metric_derivative(MetricSpace(l4), pt({0, 0}), pt({1, 0}), pt({0, 1}), {1e-5});
    CHECK(std::abs(c4.value - d.smallest_t_value) <= 1e-4);

    CHECK_THROWS_AS(normed_nonbranching_certificate(NormSpec::linf(2), pt({0, 0}), pt({1, 0}), pt({0, 1})),
                    ValidationError);
    CHECK_THROWS_AS(normed_nonbranching_certificate(NormSpec::l1(2), pt({0, 0}), pt({1, 0}), pt({0, 1})),
                    ValidationError);
    CHECK_THROWS_AS(normed_nonbranching_certificate(l4, pt({0, 1}), pt({1, 0}), pt({0, 1})), ValidationError);
  }

  TEST_CASE("certificate consistency and the dual-norm identity") {
    std::mt19937_64 rng(77);
    for (const auto& n : {NormSpec::euclidean(2), NormSpec::lp(3.0, 2), NormSpec::lp(4.0, 2), NormSpec::lp(1.5, 2)}) {
      const MetricSpace s(n);
      for (int k = 0; k < 100; ++k) {
        const auto t = equidistant_triple(n, rng);
        const auto cert = normed_nonbranching_certificate(n, t.x, t.y, t.z);
        CHECK(cert.equidistant);
        CHECK(std::abs(cert.gradient_dual - 1.0) <= 1e-9);
        CHECK(cert.value > -1.0);
        const double dxy = s.distance(t.x, t.y);
        const double fd = oracle::fd_directional(n.exponent(), t.x, t.y, t.z, 1e-5).value;
        CHECK(std::abs(cert.value * dxy - fd) <= 1e-4);
        if (k < 10) {
          const Point g = norm_gradient(n, Point(t.x - t.z));
          CHECK(std::abs(oracle::dual_norm_by_pairing(g, n.exponent(), 10000, k).value - 1.0) <= 1e-9);
        }
      }
    }
  }
}
