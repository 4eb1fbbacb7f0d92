// Acceptance battery: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--seed N] [--expect-fail ID]... [--out DIR]
// Exits nonzero when a criterion fails that was not listed with --expect-fail,
// or when a listed criterion unexpectedly passes.

#include "battery.hpp"
#include "mongelab/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace {

std::string read_payload(const std::filesystem::path& report) {
  std::ifstream in(report);
  auto j = mongelab::json::parse(in);
  j.erase("timing");
  return j.dump();
}

void line(bool pass, int id, const std::string& name, const std::string& note) {
  std::printf("%s criterion %d (%s)%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), note.empty() ? "" : ": ",
              note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance battery"};
  std::uint64_t seed = 20261014;
  std::vector<int> expect_fail;
  std::string out_dir = (std::filesystem::temp_directory_path() / "mongelab-acceptance").string();
  app.add_option("--seed", seed, "Base seed");
  app.add_option("--expect-fail", expect_fail, "Criterion known to be unattainable");
  app.add_option("--out", out_dir, "Scratch directory for suite reports");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());

  mongelab::acceptance::Battery first;
  bool captured = false;
  const auto runner = [&](std::uint64_t s) {
    auto b = mongelab::acceptance::run_battery(s);
    if (!captured) {
      first = b;
      captured = true;
    }
    return mongelab::acceptance::to_json(b);
  };

  // Identical configs, including the output directory, so the echoed config
  // and its hash match too.
  std::vector<std::string> payloads;
  const auto report = std::filesystem::path(out_dir) / "report.json";
  const mongelab::json config = {{"experiment", "suite"}, {"seed", seed}, {"output", out_dir}};
  for (int rep = 0; rep < 2; ++rep) {
    std::filesystem::remove(report);
    const auto result = mongelab::run_experiment(config, std::nullopt, runner);
    if (result.exit_code != 0) {
      std::cerr << "suite run failed: " << result.error << '\n';
      return 1;
    }
    payloads.push_back(read_payload(report));
  }

  int unexpected = 0;
  auto record = [&](bool pass, int id) {
    const bool xfail = expected.count(id) > 0;
    if (pass == xfail) ++unexpected;
  };

  for (const auto& c : first.criteria) {
    bool pass = c.pass;
    std::ostringstream note;
    if (c.runtime_limit) {
      const bool fast = c.seconds < *c.runtime_limit;
      pass = pass && fast;
      note << "runtime " << c.seconds << " s (limit " << *c.runtime_limit << " s); ";
    }
    note << c.details.dump();
    line(pass, c.id, c.name, note.str());
    record(pass, c.id);
  }

  const bool identical = payloads[0] == payloads[1];
  line(identical, 9, "reproducibility", identical ? "report.json payloads byte-identical" : "payloads differ");
  record(identical, 9);

  for (const int id : expected) std::printf("note: criterion %d is listed as expected to fail\n", id);
  return unexpected == 0 ? 0 : 1;
}
