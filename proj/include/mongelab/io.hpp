#pragma once

#include "mongelab/conditions.hpp"
#include "mongelab/measures.hpp"
#include "mongelab/monotonicity.hpp"
#include "mongelab/transport.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mongelab {

using json = nlohmann::json;

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);
// Hash of the atoms and weights at full precision.
std::uint64_t measure_hash(const DiscreteMeasure& mu);

// Rows `x1,...,xn,weight`; an optional non-numeric header line is skipped.
DiscreteMeasure read_measure_csv(std::istream& in);
DiscreteMeasure read_measure_csv(const std::filesystem::path& path);
void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu);

// Rows `x1,...,xn,y1,...,yn`.
MonotonePairSet read_pairs_csv(std::istream& in);
MonotonePairSet read_pairs_csv(const std::filesystem::path& path);

// Rows `i,j,mass` under a `i,j,mass` header.
void write_plan_csv(std::ostream& out, const TransportPlan& plan);
std::vector<PlanEntry> read_plan_csv(std::istream& in);
json plan_header(const TransportPlan& plan, const CostFunction& c);
// Writes <stem>.csv and <stem>.json.
void save_plan(const std::filesystem::path& stem, const TransportPlan& plan, const CostFunction& c);

json to_json(const Point& p);
Point point_from_json(const json& j);
Matrix columns_from_json(const json& rows);

json to_json(const Estimate& e);
json to_json(const RatioReport& r);
json to_json(const DoublingScan& s);
json to_json(const ScatterReport& s);
json to_json(const TransportPlan& plan);
json to_json(const PlanDiagnostics& d);
json to_json(const UniquenessResult& u);
json to_json(const CycleCertificate& c);
json to_json(const TwistReport& r);
json to_json(const LmtcReport& r);
json to_json(const EpsilonScan& s);
json to_json(const RatioVariation& v);
json to_json(const C1Report& r);
json to_json(const NonBranchingReport& r);
json to_json(const NormedCertificate& c);

}  // namespace mongelab
