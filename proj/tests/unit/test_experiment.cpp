#include "mongelab/experiment.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace mongelab;

namespace {
json solve_config() {
  return {{"experiment", "solve"},
          {"space", {{"norm", "euclidean"}, {"dim", 2}}},
          {"cost", {{"kind", "squared_distance"}}},
          {"source", {{"dirac", {0, 0}}}},
          {"target", {{"dirac", {3, 4}}}}};
}
}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("solve a Dirac pair") {
    const auto r = run_experiment(solve_config(), std::nullopt);
    REQUIRE(r.exit_code == 0);
    const auto& res = r.report.at("result");
    CHECK(res.at("cost").get<double>() == doctest::Approx(25.0));
    CHECK(res.at("plan").at("entries") == json::array({json::array({0, 0, 1.0})}));
    CHECK(r.report.at("tool") == "mongelab");
    CHECK(r.report.at("version") == kVersion);
    CHECK(r.report.at("config_hash") == hex64(fnv1a(r.report.at("config").dump())));
  }

  TEST_CASE("validation failures exit with 2") {
    auto missing = solve_config();
    missing.erase("cost");
    const auto a = run_experiment(missing, std::nullopt);
    CHECK(a.exit_code == 2);
    CHECK(a.error.find("cost") != std::string::npos);

    auto extra = solve_config();
    extra["colour"] = "blue";
    CHECK(run_experiment(extra, std::nullopt).exit_code == 2);

    auto nested = solve_config();
    nested["cost"]["power"] = 3;
    CHECK(run_experiment(nested, std::nullopt).exit_code == 2);

    CHECK(run_experiment({{"experiment", "teleport"}}, std::nullopt).exit_code == 2);
    CHECK(run_experiment(json::array(), std::nullopt).exit_code == 2);
    CHECK(run_experiment({{"experiment", "suite"}}, std::nullopt).exit_code == 2);
  }

  TEST_CASE("numerical failures exit with 3") {
    const json cfg = {{"experiment", "pmtc"},
                      {"space", {{"norm", "euclidean"}, {"dim", 2}}},
                      {"cost", {{"kind", "squared_distance"}}},
                      {"reference", {{"sampler", "uniform"}, {"lo", {5, 5}}, {"hi", {6, 6}}}},
                      {"x", {0, 0}},
                      {"y", {1, 0}},
                      {"z", {-1, 0}},
                      {"twist", {{"outer_budget", 50}}}};
    CHECK(run_experiment(cfg, std::nullopt).exit_code == 3);
  }

  TEST_CASE("builtin instances") {
    const auto names = builtin_instance_names();
    CHECK(names.size() == 4);
    const auto inst = transport_instance("linf-two-segments", 4);
    CHECK(inst.source.size() == 4);
    CHECK(inst.target.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
      CHECK(inst.source.atom(i)[0] == 0.0);
      CHECK(inst.target.atom(i)[0] == 1.0);
      CHECK(inst.source.weight(i) == doctest::Approx(0.25));
    }
    const auto dump = dump_instance("linf-two-segments", 4);
    for (const auto& row : dump.at("cost_matrix"))
      for (const auto& v : row) CHECK(v.get<double>() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(transport_instance("euclid-crossing-2x2").source.size() == 2);
    CHECK(is_triple_instance("linf-branching-triple"));
    CHECK_FALSE(is_triple_instance("lp4-random"));
    CHECK_THROWS_AS(transport_instance("nope"), ValidationError);
    CHECK_THROWS_AS(triple_instance("linf-two-segments"), ValidationError);
    CHECK_THROWS_AS(dump_instance("nope"), ValidationError);

    const auto r1 = transport_instance("lp4-random", 5, 9), r2 = transport_instance("lp4-random", 5, 9);
    CHECK(r1.source.points() == r2.source.points());
  }

  TEST_CASE("instances run by name") {
    const json cfg = {{"experiment", "uniqueness"}, {"instance", "linf-two-segments"}, {"trials", 2}};
    const auto r = run_experiment(cfg, std::nullopt);
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("result").at("uniqueness").at("verdict") == "multiple");
  }

  TEST_CASE("seed override and determinism") {
    const json cfg = {{"experiment", "doubling"},
                      {"space", {{"norm", "euclidean"}, {"dim", 2}}},
                      {"measure", {{"sampler", "uniform"}, {"lo", {-1, -1}}, {"hi", {1, 1}}}},
                      {"center", {0, 0}},
                      {"radii", {0.2, 0.1}},
                      {"budget", 500},
                      {"seed", 1}};
    const auto a = run_experiment(cfg, std::nullopt), b = run_experiment(cfg, std::nullopt);
    REQUIRE(a.exit_code == 0);
    CHECK(a.report == b.report);
    const auto c = run_experiment(cfg, 2);
    CHECK(c.report.at("seed") == 2);
    CHECK(c.report.at("result") != a.report.at("result"));

    ::setenv("MONGELAB_SEED", "17", 1);
    CHECK(seed_from_env() == std::optional<std::uint64_t>(17));
    ::setenv("MONGELAB_SEED", "x17", 1);
    CHECK_THROWS_AS(seed_from_env(), ValidationError);
    ::unsetenv("MONGELAB_SEED");
    CHECK_FALSE(seed_from_env().has_value());
  }

  TEST_CASE("output directory receives report and series") {
    const auto dir = std::filesystem::temp_directory_path() / "mongelab-experiment-test";
    std::filesystem::remove_all(dir);
    auto cfg = solve_config();
    cfg["output"] = dir.string();
    REQUIRE(run_experiment(cfg, std::nullopt).exit_code == 0);
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "plan.csv"));
    CHECK(std::filesystem::exists(dir / "plan.json"));
    std::ifstream in(dir / "report.json");
    CHECK(json::parse(in).contains("timing"));
    std::filesystem::remove_all(dir);
  }
}
