#pragma once

#include "mongelab/io.hpp"
#include "mongelab/spaces.hpp"
#include "mongelab/transport.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace mongelab {

inline constexpr const char* kVersion = "0.1.0";

struct TransportInstance {
  std::string name;
  MetricSpace space;
  DiscreteMeasure source;
  DiscreteMeasure target;
  CostFunction cost;
};

struct TripleInstance {
  std::string name;
  MetricSpace space;
  Point x, y, z;
  double r;
};

std::vector<std::string> builtin_instance_names();
bool is_triple_instance(const std::string& name);

// "linf-two-segments" (n), "euclid-crossing-2x2", "lp4-random" (n, seed).
TransportInstance transport_instance(const std::string& name, int n = 4, std::uint64_t seed = 0);
// "linf-branching-triple".
TripleInstance triple_instance(const std::string& name);

json dump_instance(const std::string& name, int n = 4, std::uint64_t seed = 0);

// Runs a full acceptance battery and returns its report payload.
using SuiteRunner = std::function<json(std::uint64_t seed)>;

struct RunResult {
  json report;          // everything that must be reproducible
  double wall_seconds = 0.0;
  int exit_code = 0;
  std::string error;
};

// Validates the config against the kind's key set, applies the seed override,
// dispatches, and (when `output` is set) writes report.json plus per-series
// CSV into that directory. Never throws; failures map to exit codes 2
// (validation) and 3 (numerical).
RunResult run_experiment(const json& config, std::optional<std::uint64_t> seed_override,
                         const SuiteRunner& suite = {});

std::optional<std::uint64_t> seed_from_env();

}  // namespace mongelab
