#include "mongelab/io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mongelab {

namespace {

std::vector<std::vector<double>> read_numeric_rows(std::istream& in, const char* what) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw ValidationError(std::string(what) + ": non-numeric row '" + line + "'");
    }
    first = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError(std::string(what) + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(std::string(what) + ": no rows");
  return rows;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::string full(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json estimates(const std::vector<Estimate>& es) {
  json out = json::array();
  for (const auto& e : es) out.push_back(to_json(e));
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::uint64_t measure_hash(const DiscreteMeasure& mu) {
  std::ostringstream os;
  write_measure_csv(os, mu);
  return fnv1a(os.str());
}

DiscreteMeasure read_measure_csv(std::istream& in) {
  const auto rows = read_numeric_rows(in, "measure csv");
  if (rows.front().size() < 2) throw ValidationError("measure csv: need at least one coordinate and a weight");
  const auto dim = static_cast<Eigen::Index>(rows.front().size() - 1);
  Matrix pts(dim, static_cast<Eigen::Index>(rows.size()));
  VectorX<double> w(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) pts(i, static_cast<Eigen::Index>(k)) = rows[k][i];
    w[static_cast<Eigen::Index>(k)] = rows[k].back();
  }
  return DiscreteMeasure::normalized(std::move(pts), std::move(w));
}

DiscreteMeasure read_measure_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_measure_csv(in);
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu) {
  for (int i = 0; i < mu.dim(); ++i) out << 'x' << (i + 1) << ',';
  out << "weight\n";
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    for (int i = 0; i < mu.dim(); ++i) out << full(mu.points()(i, k)) << ',';
    out << full(mu.weight(k)) << '\n';
  }
}

MonotonePairSet read_pairs_csv(std::istream& in) {
  const auto rows = read_numeric_rows(in, "pair csv");
  const std::size_t width = rows.front().size();
  if (width < 2 || width % 2 != 0) throw ValidationError("pair csv: need an even number of columns");
  const auto dim = static_cast<Eigen::Index>(width / 2);
  Matrix xs(dim, static_cast<Eigen::Index>(rows.size()));
  Matrix ys(dim, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (Eigen::Index i = 0; i < dim; ++i) {
      xs(i, static_cast<Eigen::Index>(k)) = rows[k][i];
      ys(i, static_cast<Eigen::Index>(k)) = rows[k][dim + i];
    }
  return MonotonePairSet(std::move(xs), std::move(ys));
}

MonotonePairSet read_pairs_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pairs_csv(in);
}

void write_plan_csv(std::ostream& out, const TransportPlan& plan) {
  out << "i,j,mass\n";
  for (const auto& e : plan.entries()) out << e.i << ',' << e.j << ',' << full(e.mass) << '\n';
}

std::vector<PlanEntry> read_plan_csv(std::istream& in) {
  const auto rows = read_numeric_rows(in, "plan csv");
  if (rows.front().size() != 3) throw ValidationError("plan csv: expected columns i,j,mass");
  std::vector<PlanEntry> entries;
  for (const auto& r : rows) {
    if (r[0] < 0 || r[1] < 0 || r[0] != std::floor(r[0]) || r[1] != std::floor(r[1]))
      throw ValidationError("plan csv: indices must be nonnegative integers");
    entries.push_back({static_cast<Eigen::Index>(r[0]), static_cast<Eigen::Index>(r[1]), r[2]});
  }
  return entries;
}

json plan_header(const TransportPlan& plan, const CostFunction& c) {
  return {{"source_hash", hex64(measure_hash(plan.source()))},
          {"target_hash", hex64(measure_hash(plan.target()))},
          {"cost_kind", to_string(c.kind())},
          {"cost_name", c.name()},
          {"optimal_cost", plan.cost(c)},
          {"entries", plan.entries().size()}};
}

void save_plan(const std::filesystem::path& stem, const TransportPlan& plan, const CostFunction& c) {
  std::filesystem::path csv = stem;
  csv += ".csv";
  std::filesystem::path header = stem;
  header += ".json";
  std::ofstream out(csv);
  if (!out) throw ValidationError("cannot write " + csv.string());
  write_plan_csv(out, plan);
  std::ofstream hdr(header);
  if (!hdr) throw ValidationError("cannot write " + header.string());
  hdr << plan_header(plan, c).dump(2) << '\n';
}

json to_json(const Point& p) {
  json out = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p[i]);
  return out;
}

Point point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("point: expected a nonempty array of numbers");
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError("point: expected numbers");
    p[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return p;
}

Matrix columns_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw ValidationError("points: expected a nonempty array of points");
  const Point first = point_from_json(rows.front());
  Matrix out(first.size(), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Point p = point_from_json(rows[k]);
    if (p.size() != first.size()) throw ValidationError("points: inconsistent dimensions");
    out.col(static_cast<Eigen::Index>(k)) = p;
  }
  return out;
}

json to_json(const Estimate& e) {
  return {{"value", e.value}, {"lower", e.lower}, {"upper", e.upper},
          {"hits", e.hits},   {"trials", e.trials}, {"exact", e.exact}};
}

json to_json(const RatioReport& r) {
  return {{"radii", r.radii},
          {"ratios", estimates(r.ratios)},
          {"liminf_proxy", r.liminf_proxy},
          {"verdict", to_string(r.verdict)},
          {"zero_denominator", r.zero_denominator}};
}

json to_json(const DoublingScan& s) {
  json ratios = json::array();
  for (const auto& e : s.ratios) {
    json j = to_json(e);
    j["upper"] = finite_or_null(e.upper);
    ratios.push_back(std::move(j));
  }
  return {{"radii", s.radii}, {"ratios", ratios}, {"max_ratio", s.max_ratio}};
}

json to_json(const ScatterReport& s) {
  json verdicts = json::array();
  for (const auto v : s.verdicts) verdicts.push_back(to_string(v));
  return {{"verdict", to_string(s.verdict)},
          {"worst_direction", s.worst_direction},
          {"worst", to_json(s.worst)},
          {"tail_minima", s.tail_minima},
          {"verdicts", verdicts}};
}

json to_json(const TransportPlan& plan) {
  json entries = json::array();
  for (const auto& e : plan.entries()) entries.push_back({e.i, e.j, e.mass});
  return {{"source_hash", hex64(measure_hash(plan.source()))},
          {"target_hash", hex64(measure_hash(plan.target()))},
          {"entries", entries}};
}

json to_json(const PlanDiagnostics& d) {
  json out = {{"mapness", d.mapness}, {"row_entropy", d.row_entropy}, {"diagonal_mass", d.diagonal_mass}};
  out["map"] = d.map ? json(*d.map) : json(nullptr);
  return out;
}

json to_json(const UniquenessResult& u) {
  const auto& w = u.witness;
  json out = {{"verdict", to_string(u.verdict)},
              {"first", to_json(w.first)},
              {"first_cost", w.first_cost},
              {"first_mapness", mapness(w.first).mapness},
              {"zero_reduced_cells", w.zero_reduced_cells},
              {"alternative_vertices", w.alternative_vertices},
              {"permutation_disagreements", w.permutation_disagreements},
              {"degenerate_basis", w.degenerate_basis},
              {"degenerate_cells", w.degenerate_cells}};
  if (w.second) {
    out["second"] = to_json(*w.second);
    out["second_cost"] = w.second_cost;
    out["second_mapness"] = mapness(*w.second).mapness;
  } else {
    out["second"] = nullptr;
  }
  return out;
}

json to_json(const CycleCertificate& c) {
  return {{"verdict", to_string(c.verdict)}, {"cycle", c.cycle}, {"defect", c.defect}};
}

json to_json(const TwistReport& r) {
  json out = {{"mode", to_string(r.mode)},
              {"s", r.s},
              {"ratios", estimates(r.ratios)},
              {"liminf_proxy", r.liminf_proxy},
              {"verdict", to_string(r.verdict)}};
  out["degenerate"] = r.degenerate ? json(*r.degenerate) : json(nullptr);
  return out;
}

json to_json(const LmtcReport& r) {
  return {{"optimistic", to_json(r.optimistic)},
          {"conservative", to_json(r.conservative)},
          {"r2", r.r2},
          {"sampled_pairs", r.sampled_pairs},
          {"net_pairs", r.net_pairs},
          {"covering_radius", r.covering_radius}};
}

json to_json(const EpsilonScan& s) {
  json reports = json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  json out = {{"eps", s.eps}, {"reports", reports}};
  out["largest_positive"] = s.largest_positive ? json(*s.largest_positive) : json(nullptr);
  return out;
}

json to_json(const RatioVariation& v) {
  json pts = json::array();
  for (const auto& p : v.points) pts.push_back(to_json(p));
  return {{"points", pts}, {"liminf_proxies", v.liminf_proxies}, {"max_difference", v.max_difference}};
}

json to_json(const C1Report& r) {
  return {{"pass", r.pass},           {"sup", r.sup},           {"samples", r.samples},
          {"xbar", to_json(r.xbar)},  {"ybar", to_json(r.ybar)}, {"xp", to_json(r.xp)}};
}

json to_json(const NonBranchingReport& r) {
  json triples = json::array();
  for (const auto& t : r.triples)
    triples.push_back({{"x", to_json(t.x)},
                       {"y", to_json(t.y)},
                       {"z", to_json(t.z)},
                       {"d", t.d},
                       {"derivative", t.derivative},
                       {"z_scale", t.z_scale},
                       {"z_left_ball", t.z_left_ball}});
  return {{"rho_hat", r.rho_hat},
          {"positive", r.positive},
          {"worst", r.worst},
          {"canonical_geodesic_only", r.canonical_geodesic_only},
          {"triples", triples}};
}

json to_json(const NormedCertificate& c) {
  return {{"value", c.value}, {"gradient_dual", c.gradient_dual}, {"equidistant", c.equidistant}};
}

}  // namespace mongelab
