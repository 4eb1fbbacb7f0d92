#include "mongelab/experiment.hpp"

#include "mongelab/conditions.hpp"
#include "mongelab/monotonicity.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace mongelab {

namespace {

using Keys = std::set<std::string>;

const Keys kCommon{"experiment", "seed", "output", "label"};
const Keys kTransportKeys{"space", "cost", "source", "target", "instance", "n", "instance_seed"};

const std::map<std::string, Keys>& kind_keys() {
  static const std::map<std::string, Keys> table = [] {
    std::map<std::string, Keys> t;
    t["solve"] = kTransportKeys;
    t["certify"] = kTransportKeys;
    t["certify"].insert("pairs");
    t["uniqueness"] = kTransportKeys;
    t["uniqueness"].insert("trials");
    t["pmtc"] = {"space", "cost", "reference", "x", "y", "z", "twist", "eps_scan", "variation_h"};
    t["lmtc"] = {"space", "cost", "reference", "x", "y", "z", "twist"};
    t["c1"] = {"space", "cost", "x", "y", "eps", "r1", "r2", "delta", "budget"};
    t["nonbranching"] = {"space", "x", "y", "z", "instance", "r", "t", "triples", "certificate"};
    t["cone"] = {"space", "measure", "x", "k", "directions", "length", "radii", "budget"};
    t["doubling"] = {"space", "measure", "center", "radii", "budget"};
    t["suite"] = {};
    return t;
  }();
  return table;
}

void check_keys(const json& obj, const Keys& allowed, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
}

const json& need(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing required key '" + key + "'");
  return obj.at(key);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ValidationError(what + ": expected a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ValidationError(what + ": expected a positive integer");
  return j.get<std::size_t>();
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("key '" + key + "' has the wrong type");
  }
}

MetricSpace parse_space(const json& j) {
  check_keys(j, {"norm", "p", "dim", "finite", "matrix", "labels"}, "space");
  if (j.contains("finite") || j.contains("matrix")) {
    FiniteMetric fm;
    if (j.contains("finite")) {
      if (!j.at("finite").is_string()) throw ValidationError("space.finite: expected a path");
      fm = load_finite_metric(j.at("finite").get<std::string>());
    } else {
      const json& rows = j.at("matrix");
      if (!rows.is_array() || rows.empty()) throw ValidationError("space.matrix: expected rows");
      fm.distances.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != rows.size()) throw ValidationError("space.matrix: not square");
        for (std::size_t k = 0; k < rows.size(); ++k)
          fm.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
              number(rows[i][k], "space.matrix entry");
      }
      for (std::size_t i = 0; i < rows.size(); ++i) fm.labels.push_back(std::to_string(i));
    }
    if (j.contains("labels")) fm.labels = get_or<std::vector<std::string>>(j, "labels", {});
    return MetricSpace(std::move(fm));
  }
  const std::string kind = get_or<std::string>(j, "norm", "euclidean");
  const int dim = get_or<int>(j, "dim", 2);
  switch (norm_kind_from_string(kind)) {
    case NormKind::euclidean: return MetricSpace(NormSpec::euclidean(dim));
    case NormKind::lp: return MetricSpace(NormSpec::lp(number(need(j, "p", "space"), "space.p"), dim));
    case NormKind::l1: return MetricSpace(NormSpec::l1(dim));
    case NormKind::linf: return MetricSpace(NormSpec::linf(dim));
  }
  throw ValidationError("space: unknown norm");
}

CostFunction parse_cost(const json& j, const MetricSpace& space) {
  check_keys(j, {"kind", "entries", "scale"}, "cost");
  const std::string kind = get_or<std::string>(j, "kind", "");
  std::optional<CostFunction> c;
  if (kind == "squared_distance") c = CostFunction::squared_distance(space);
  else if (kind == "distance") c = CostFunction::distance(space);
  else if (kind == "table") {
    const Matrix rows = columns_from_json(need(j, "entries", "cost"));
    c = CostFunction::table(rows.transpose());
  } else {
    throw ValidationError("cost.kind: expected squared_distance, distance or table");
  }
  if (j.contains("scale")) c = c->scaled(number(j.at("scale"), "cost.scale"));
  return *c;
}

DiscreteMeasure parse_measure(const json& j, const std::string& where) {
  check_keys(j, {"atoms", "weights", "csv", "dirac"}, where);
  if (j.contains("csv")) return read_measure_csv(std::filesystem::path(j.at("csv").get<std::string>()));
  if (j.contains("dirac")) return DiscreteMeasure::dirac(point_from_json(j.at("dirac")));
  Matrix atoms = columns_from_json(need(j, "atoms", where));
  if (!j.contains("weights")) return DiscreteMeasure::uniform(std::move(atoms));
  const Point w = point_from_json(j.at("weights"));
  return DiscreteMeasure::normalized(std::move(atoms), w);
}

SampledDensity parse_sampler(const json& j) {
  check_keys(j, {"sampler", "lo", "hi", "mean", "sigma", "axis", "split", "left", "right"}, "reference");
  const std::string kind = get_or<std::string>(j, "sampler", "");
  const Point lo = point_from_json(need(j, "lo", "reference"));
  const Point hi = point_from_json(need(j, "hi", "reference"));
  if (kind == "uniform") return SampledDensity::uniform_box(lo, hi);
  if (kind == "gaussian")
    return SampledDensity::truncated_gaussian(point_from_json(need(j, "mean", "reference")),
                                              number(need(j, "sigma", "reference"), "sigma"), lo, hi);
  if (kind == "piecewise")
    return SampledDensity::piecewise_constant(lo, hi, get_or<int>(j, "axis", 0),
                                              number(need(j, "split", "reference"), "split"),
                                              number(need(j, "left", "reference"), "left"),
                                              number(need(j, "right", "reference"), "right"));
  throw ValidationError("reference.sampler: expected uniform, gaussian or piecewise");
}

std::vector<double> parse_radii(const json& j, std::vector<double> fallback) {
  if (j.is_null()) return fallback;
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& v : j) out.push_back(number(v, "radii"));
    return out;
  }
  check_keys(j, {"r0", "count"}, "radii");
  return geometric_radii(number(need(j, "r0", "radii"), "radii.r0"), get_or<int>(j, "count", 7));
}

TwistConfig parse_twist(const json& j, std::uint64_t seed) {
  TwistConfig cfg;
  cfg.seed = seed;
  if (j.is_null()) return cfg;
  check_keys(j, {"eps", "s", "r1", "r2", "inner_budget", "outer_budget", "margin_lipschitz"}, "twist");
  if (j.contains("eps")) cfg.eps = number(j.at("eps"), "twist.eps");
  if (j.contains("s")) cfg.s_schedule = parse_radii(j.at("s"), cfg.s_schedule);
  if (j.contains("r1")) cfg.r1 = number(j.at("r1"), "twist.r1");
  if (j.contains("r2")) cfg.r2 = number(j.at("r2"), "twist.r2");
  if (j.contains("inner_budget")) cfg.inner_budget = count(j.at("inner_budget"), "twist.inner_budget");
  if (j.contains("outer_budget")) cfg.outer_budget = count(j.at("outer_budget"), "twist.outer_budget");
  if (j.contains("margin_lipschitz")) cfg.margin_lipschitz = number(j.at("margin_lipschitz"), "twist.margin_lipschitz");
  cfg.validate();
  return cfg;
}

const json& opt(const json& obj, const std::string& key) {
  static const json null_value;
  return obj.contains(key) ? obj.at(key) : null_value;
}

TransportInstance parse_transport(const json& cfg) {
  if (cfg.contains("instance")) {
    const std::string name = get_or<std::string>(cfg, "instance", "");
    return transport_instance(name, get_or<int>(cfg, "n", 4), get_or<std::uint64_t>(cfg, "instance_seed", 0));
  }
  MetricSpace space = parse_space(need(cfg, "space", "config"));
  const CostFunction cost = parse_cost(need(cfg, "cost", "config"), space);
  DiscreteMeasure mu = parse_measure(need(cfg, "source", "config"), "source");
  DiscreteMeasure nu = parse_measure(need(cfg, "target", "config"), "target");
  return {"config", std::move(space), std::move(mu), std::move(nu), cost};
}

struct Series {
  std::string name;
  std::string contents;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void estimate_rows(std::ostream& os, const std::vector<double>& radii, const std::vector<Estimate>& es,
                   const std::string& prefix) {
  for (std::size_t k = 0; k < es.size(); ++k)
    os << prefix << fmt(radii[k]) << ',' << fmt(es[k].value) << ',' << fmt(es[k].lower) << ',' << fmt(es[k].upper)
       << ',' << es[k].hits << ',' << es[k].trials << '\n';
}

std::string estimates_csv(const std::vector<double>& radii, const std::vector<Estimate>& es) {
  std::ostringstream os;
  os << "radius,value,lower,upper,hits,trials\n";
  estimate_rows(os, radii, es, "");
  return os.str();
}

std::string lmtc_csv(const LmtcReport& r) {
  std::ostringstream os;
  os << "mode,radius,value,lower,upper,hits,trials\n";
  estimate_rows(os, r.optimistic.s, r.optimistic.ratios, "optimistic,");
  estimate_rows(os, r.conservative.s, r.conservative.ratios, "conservative,");
  return os.str();
}

std::string plan_csv(const TransportPlan& plan) {
  std::ostringstream os;
  write_plan_csv(os, plan);
  return os.str();
}

json run_transport_kind(const std::string& kind, const json& cfg, std::uint64_t seed, std::vector<Series>& series) {
  const TransportInstance inst = parse_transport(cfg);
  json out = {{"instance", inst.name}};
  if (kind == "solve") {
    const TransportPlan plan = solve_kantorovich(inst.source, inst.target, inst.cost);
    const PlanDiagnostics diag = mapness(plan);
    out["plan"] = to_json(plan);
    out["header"] = plan_header(plan, inst.cost);
    out["cost"] = plan.cost(inst.cost);
    out["diagnostics"] = to_json(diag);
    series.push_back({"plan.csv", plan_csv(plan)});
    series.push_back({"plan.json", plan_header(plan, inst.cost).dump(2) + "\n"});
  } else if (kind == "certify") {
    if (cfg.contains("pairs")) {
      const json& p = cfg.at("pairs");
      check_keys(p, {"sources", "targets", "csv"}, "pairs");
      const MonotonePairSet pairs =
          p.contains("csv") ? read_pairs_csv(std::filesystem::path(p.at("csv").get<std::string>()))
                            : MonotonePairSet(columns_from_json(need(p, "sources", "pairs")),
                                              columns_from_json(need(p, "targets", "pairs")));
      out["pairs"] = pairs.size();
      out["certificate"] = to_json(certify(pairs, inst.cost));
    } else {
      const TransportPlan plan = solve_kantorovich(inst.source, inst.target, inst.cost);
      out["plan"] = to_json(plan);
      out["certificate"] = to_json(violation_search(plan, inst.cost));
    }
  } else {
    const int trials = get_or<int>(cfg, "trials", 8);
    const UniquenessResult u = uniqueness_probe(inst.source, inst.target, inst.cost, trials, seed);
    out["uniqueness"] = to_json(u);
    series.push_back({"first.csv", plan_csv(u.witness.first)});
    if (u.witness.second) series.push_back({"second.csv", plan_csv(*u.witness.second)});
  }
  return out;
}

json run_kind(const std::string& kind, const json& cfg, std::uint64_t seed, std::vector<Series>& series,
              const SuiteRunner& suite) {
  if (kind == "solve" || kind == "certify" || kind == "uniqueness") return run_transport_kind(kind, cfg, seed, series);

  if (kind == "pmtc" || kind == "lmtc") {
    const MetricSpace space = parse_space(need(cfg, "space", "config"));
    const CostFunction cost = parse_cost(need(cfg, "cost", "config"), space);
    const SampledDensity ref = parse_sampler(need(cfg, "reference", "config"));
    const Point x = point_from_json(need(cfg, "x", "config"));
    const Point y = point_from_json(need(cfg, "y", "config"));
    const Point z = point_from_json(need(cfg, "z", "config"));
    const TwistConfig twist = parse_twist(opt(cfg, "twist"), seed);
    json out;
    if (kind == "pmtc") {
      const TwistReport r = pmtc_ratio(space, ref, cost, x, y, z, twist);
      out["report"] = to_json(r);
      series.push_back({"ratios.csv", estimates_csv(r.s, r.ratios)});
      if (get_or<bool>(cfg, "eps_scan", false)) out["eps_scan"] = to_json(pmtc_epsilon_scan(space, ref, cost, x, y, z, twist));
      if (cfg.contains("variation_h"))
        out["variation"] =
            to_json(pmtc_variation(space, ref, cost, x, y, z, number(cfg.at("variation_h"), "variation_h"), twist));
    } else {
      const LmtcReport r = lmtc_ratio(space, ref, cost, x, y, z, twist);
      out["report"] = to_json(r);
      series.push_back({"ratios.csv", lmtc_csv(r)});
    }
    return out;
  }

  if (kind == "c1") {
    const MetricSpace space = parse_space(need(cfg, "space", "config"));
    const CostFunction cost = parse_cost(need(cfg, "cost", "config"), space);
    const C1Report r = c1_probe(space, cost, point_from_json(need(cfg, "x", "config")),
                                point_from_json(need(cfg, "y", "config")), number(need(cfg, "eps", "config"), "eps"),
                                get_or<double>(cfg, "r1", 0.05), get_or<double>(cfg, "r2", 0.05),
                                get_or<double>(cfg, "delta", 0.01), get_or<std::size_t>(cfg, "budget", 10000), seed);
    return {{"report", to_json(r)}};
  }

  if (kind == "nonbranching") {
    std::optional<MetricSpace> space;
    Point x, y, z;
    double r = get_or<double>(cfg, "r", 0.01);
    if (cfg.contains("instance")) {
      const TripleInstance inst = triple_instance(get_or<std::string>(cfg, "instance", ""));
      space = inst.space;
      x = inst.x;
      y = inst.y;
      z = inst.z;
      if (!cfg.contains("r")) r = inst.r;
    } else {
      space = parse_space(need(cfg, "space", "config"));
      x = point_from_json(need(cfg, "x", "config"));
      y = point_from_json(need(cfg, "y", "config"));
      z = point_from_json(need(cfg, "z", "config"));
    }
    const std::vector<double> t = parse_radii(opt(cfg, "t"), default_derivative_schedule());
    const NonBranchingReport rep =
        nonbranching_scan(*space, x, y, z, r, t, get_or<std::size_t>(cfg, "triples", 200), seed);
    json out = {{"report", to_json(rep)}};
    if (get_or<bool>(cfg, "certificate", false))
      out["certificate"] = to_json(normed_nonbranching_certificate(space->norm(), x, y, z));
    std::ostringstream os;
    os << "index,d,derivative,ratio,z_scale\n";
    for (std::size_t k = 0; k < rep.triples.size(); ++k) {
      const auto& tr = rep.triples[k];
      os << k << ',' << fmt(tr.d) << ',' << fmt(tr.derivative) << ',' << fmt(1.0 + tr.derivative / tr.d) << ','
         << fmt(tr.z_scale) << '\n';
    }
    series.push_back({"triples.csv", os.str()});
    return out;
  }

  if (kind == "cone" || kind == "doubling") {
    const MetricSpace space = parse_space(need(cfg, "space", "config"));
    const json& m = need(cfg, "measure", "config");
    const bool sampled = m.is_object() && m.contains("sampler");
    const std::size_t budget = get_or<std::size_t>(cfg, "budget", 20000);
    if (kind == "doubling") {
      const Point c = point_from_json(need(cfg, "center", "config"));
      const auto radii = parse_radii(opt(cfg, "radii"), geometric_radii(0.1, 7));
      const DoublingScan scan = sampled ? doubling_ratio_scan(space, parse_sampler(m), c, radii, budget, seed)
                                        : doubling_ratio_scan(space, parse_measure(m, "measure"), c, radii);
      series.push_back({"doubling.csv", estimates_csv(scan.radii, scan.ratios)});
      return {{"report", to_json(scan)}};
    }
    const Point x = point_from_json(need(cfg, "x", "config"));
    const double k = number(need(cfg, "k", "config"), "k");
    const int directions = get_or<int>(cfg, "directions", 16);
    const double length = get_or<double>(cfg, "length", 1.0);
    const auto radii = parse_radii(opt(cfg, "radii"), geometric_radii(0.1, 7));
    const auto paths = spread_geodesics(space.norm(), x, length, directions);
    const ScatterReport rep =
        sampled ? densely_scattered_probe(space, parse_sampler(m), x, paths, k, radii, budget, seed)
                : densely_scattered_probe(space, parse_measure(m, "measure"), x, paths, k, radii);
    series.push_back({"cone.csv", estimates_csv(rep.worst.radii, rep.worst.ratios)});
    return {{"report", to_json(rep)}};
  }

  if (kind == "suite") {
    if (!suite) throw ValidationError("suite: no acceptance battery linked into this build");
    return suite(seed);
  }
  throw ValidationError("unknown experiment kind '" + kind + "'");
}

}  // namespace

std::vector<std::string> builtin_instance_names() {
  return {"linf-two-segments", "euclid-crossing-2x2", "lp4-random", "linf-branching-triple"};
}

bool is_triple_instance(const std::string& name) { return name == "linf-branching-triple"; }

TransportInstance transport_instance(const std::string& name, int n, std::uint64_t seed) {
  if (name == "linf-two-segments") {
    if (n < 2) throw ValidationError("linf-two-segments: n must be >= 2");
    Matrix src(2, n);
    Matrix dst(2, n);
    for (int i = 0; i < n; ++i) {
      const double h = static_cast<double>(i) / static_cast<double>(n - 1);
      src.col(i) << 0.0, h;
      dst.col(i) << 1.0, h;
    }
    MetricSpace space(NormSpec::linf(2));
    const CostFunction c = CostFunction::squared_distance(space);
    return {name, space, DiscreteMeasure::uniform(src), DiscreteMeasure::uniform(dst), c};
  }
  if (name == "euclid-crossing-2x2") {
    Matrix src(2, 2);
    Matrix dst(2, 2);
    src << 0.0, 1.0, 0.0, 0.0;
    dst << 0.0, 1.0, 1.0, 1.0;
    MetricSpace space(NormSpec::euclidean(2));
    const CostFunction c = CostFunction::squared_distance(space);
    return {name, space, DiscreteMeasure::uniform(src), DiscreteMeasure::uniform(dst), c};
  }
  if (name == "lp4-random") {
    if (n < 1) throw ValidationError("lp4-random: n must be >= 1");
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix src(2, n);
    Matrix dst(2, n);
    for (int i = 0; i < n; ++i) src.col(i) << unit(rng), unit(rng);
    for (int i = 0; i < n; ++i) dst.col(i) << unit(rng), unit(rng);
    MetricSpace space(NormSpec::lp(4.0, 2));
    const CostFunction c = CostFunction::squared_distance(space);
    return {name, space, DiscreteMeasure::uniform(src), DiscreteMeasure::uniform(dst), c};
  }
  if (is_triple_instance(name)) throw ValidationError("instance '" + name + "' is a triple, not a transport problem");
  throw ValidationError("unknown instance '" + name + "'");
}

TripleInstance triple_instance(const std::string& name) {
  if (name != "linf-branching-triple") {
    const auto names = builtin_instance_names();
    if (std::find(names.begin(), names.end(), name) != names.end())
      throw ValidationError("instance '" + name + "' is a transport problem, not a triple");
    throw ValidationError("unknown instance '" + name + "'");
  }
  Point x(2), y(2), z(2);
  x << 0.0, 0.0;
  y << 1.0, 0.5;
  z << 1.0, -0.5;
  return {name, MetricSpace(NormSpec::linf(2)), x, y, z, 1e-3};
}

json dump_instance(const std::string& name, int n, std::uint64_t seed) {
  if (is_triple_instance(name)) {
    const TripleInstance t = triple_instance(name);
    return {{"name", t.name}, {"space", t.space.describe()}, {"x", to_json(t.x)}, {"y", to_json(t.y)},
            {"z", to_json(t.z)}, {"r", t.r}};
  }
  const TransportInstance inst = transport_instance(name, n, seed);
  auto atoms = [](const DiscreteMeasure& mu) {
    json out = json::array();
    for (Eigen::Index k = 0; k < mu.size(); ++k) out.push_back(to_json(mu.atom(k)));
    return out;
  };
  const CostMatrix cm = cost_matrix(inst.cost, inst.source, inst.target);
  json costs = json::array();
  for (Eigen::Index i = 0; i < cm.entries.rows(); ++i) costs.push_back(to_json(Point(cm.entries.row(i).transpose())));
  return {{"name", inst.name},
          {"space", inst.space.describe()},
          {"cost", inst.cost.name()},
          {"source", {{"atoms", atoms(inst.source)}, {"weights", to_json(inst.source.weights())}}},
          {"target", {{"atoms", atoms(inst.target)}, {"weights", to_json(inst.target.weights())}}},
          {"cost_matrix", costs}};
}

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("MONGELAB_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (raw[used] != '\0') throw ValidationError("MONGELAB_SEED must be an unsigned integer");
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError("MONGELAB_SEED must be an unsigned integer");
  }
}

RunResult run_experiment(const json& config, std::optional<std::uint64_t> seed_override, const SuiteRunner& suite) {
  RunResult result;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!config.is_object()) throw ValidationError("config: expected a JSON object");
    const std::string kind = get_or<std::string>(config, "experiment", "");
    const auto it = kind_keys().find(kind);
    if (it == kind_keys().end()) throw ValidationError("config: unknown or missing experiment kind '" + kind + "'");
    Keys allowed = kCommon;
    allowed.insert(it->second.begin(), it->second.end());
    check_keys(config, allowed, "config");

    const std::uint64_t seed = seed_override ? *seed_override : get_or<std::uint64_t>(config, "seed", 0);
    std::vector<Series> series;
    const json payload = run_kind(kind, config, seed, series, suite);

    result.report = {{"tool", "mongelab"},
                     {"version", kVersion},
                     {"experiment", kind},
                     {"config", config},
                     {"config_hash", hex64(fnv1a(config.dump()))},
                     {"seed", seed},
                     {"result", payload}};
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (config.contains("output")) {
      const std::filesystem::path dir = get_or<std::string>(config, "output", "");
      std::filesystem::create_directories(dir);
      json on_disk = result.report;
      on_disk["timing"] = {{"wall_seconds", result.wall_seconds}};
      std::ofstream(dir / "report.json") << on_disk.dump(2) << '\n';
      for (const auto& s : series) std::ofstream(dir / s.name) << s.contents;
    }
  } catch (const ValidationError& e) {
    result.exit_code = 2;
    result.error = e.what();
  } catch (const NumericalError& e) {
    result.exit_code = 3;
    result.error = e.what();
  } catch (const json::exception& e) {
    result.exit_code = 2;
    result.error = e.what();
  } catch (const std::filesystem::filesystem_error& e) {
    result.exit_code = 2;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.error = e.what();
  }
  return result;
}

}  // namespace mongelab
