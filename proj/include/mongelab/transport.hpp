#pragma once

#include "mongelab/core.hpp"
#include "mongelab/measures.hpp"
#include "mongelab/spaces.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mongelab {

enum class CostKind { squared_distance, distance, custom };
std::string to_string(CostKind kind);

// c : X x X -> [0, +inf]. Custom costs wrap a callable; a tabulated cost is a
// custom cost over a finite space (points are index 1-vectors).
class CostFunction {
 public:
  using Fn = std::function<double(const Point&, const Point&)>;

  static CostFunction squared_distance(MetricSpace space);
  static CostFunction distance(MetricSpace space);
  static CostFunction custom(std::string name, Fn fn);
  static CostFunction table(Matrix entries);

  double operator()(const Point& x, const Point& y) const { return fn_(x, y); }
  CostKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // The underlying space for distance-based costs.
  const std::optional<MetricSpace>& space() const { return space_; }

  // The same cost multiplied by lambda > 0.
  CostFunction scaled(double lambda) const;

 private:
  CostFunction(CostKind kind, std::string name, Fn fn, std::optional<MetricSpace> space);

  CostKind kind_;
  std::string name_;
  Fn fn_;
  std::optional<MetricSpace> space_;
};

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

struct CostMatrix {
  Matrix entries;          // +inf allowed
  bool has_infinite = false;
};

// Entry (i, j) = c(x_i, y_j). Negative or NaN entries are rejected; +inf is
// kept and flagged.
CostMatrix cost_matrix(const CostFunction& c, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct PlanEntry {
  Eigen::Index i;
  Eigen::Index j;
  double mass;
  bool operator==(const PlanEntry&) const = default;
};

// A coupling of two discrete measures stored as its support. Construction
// validates both marginals and drops masses below the mass floor.
class TransportPlan {
 public:
  TransportPlan(DiscreteMeasure source, DiscreteMeasure target, std::vector<PlanEntry> entries);

  const DiscreteMeasure& source() const { return source_; }
  const DiscreteMeasure& target() const { return target_; }
  const std::vector<PlanEntry>& entries() const { return entries_; }

  Matrix dense() const;
  double cost(const Matrix& costs) const;
  double cost(const CostFunction& c) const;

  // (1 - s) * this + s * other on the same marginals.
  TransportPlan blend(const TransportPlan& other, double s) const;
  // Largest entrywise difference between the two couplings.
  double distance_to(const TransportPlan& other) const;

 private:
  DiscreteMeasure source_;
  DiscreteMeasure target_;
  std::vector<PlanEntry> entries_;  // sorted by (i, j)
};

// Product coupling mu x nu.
TransportPlan product_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct BasisCell {
  Eigen::Index i;
  Eigen::Index j;
};

// Full output of the transportation simplex: the optimal vertex, its basis
// (a spanning tree of m + n - 1 cells) and dual potentials with
// c_ij = u_i + v_j on basic cells.
struct SimplexSolution {
  Matrix flow;
  std::vector<BasisCell> basis;
  VectorX<double> u;
  VectorX<double> v;
  double cost = 0.0;
  std::size_t iterations = 0;
  std::size_t degenerate_cells = 0;  // basic cells carrying zero flow
};

// Transportation simplex: north-west corner start, Bland's lowest-index rule
// for both entering and leaving cells. +inf costs enter as a big-M surrogate;
// an optimum carrying mass on such a cell means no finite-cost plan exists.
SimplexSolution solve_transportation(const Matrix& costs, const VectorX<double>& supply,
                                     const VectorX<double>& demand);

TransportPlan solve_kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostFunction& c);
TransportPlan solve_kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Matrix& costs);

struct PlanDiagnostics {
  double mapness = 0.0;
  std::vector<double> row_entropy;   // entropy of each conditional pi_x
  // Mass of the diagonal under sum_i mu_i (pi_i x pi_i), i.e.
  // sum_i mu_i sum_j (pi_ij / mu_i)^2.
  double diagonal_mass = 0.0;
  std::optional<std::vector<Eigen::Index>> map;  // target index per source atom, when mapness == 1
};

PlanDiagnostics mapness(const TransportPlan& plan, double atom_tol = tol::kMassFloor);

struct Ball {
  Point center;
  double radius;
};

struct RestrictedPlan {
  TransportPlan plan;
  std::vector<Eigen::Index> source_index;  // restricted atom -> original atom
  std::vector<Eigen::Index> target_index;
  double captured_mass = 0.0;
};

// pi restricted to closed balls B x B', renormalized by the captured mass;
// marginals are recomputed from the surviving entries.
RestrictedPlan restrict_plan(const TransportPlan& plan, const MetricSpace& space, const Ball& source_ball,
                             const Ball& target_ball);

enum class Uniqueness { unique, multiple };
std::string to_string(Uniqueness u);

struct UniquenessWitness {
  TransportPlan first;                  // the solver's optimal vertex
  std::optional<TransportPlan> second;  // a distinct optimal plan, when found
  double first_cost = 0.0;
  double second_cost = 0.0;
  std::size_t zero_reduced_cells = 0;   // nonbasic cells with |reduced cost| <= tol
  std::size_t alternative_vertices = 0;
  std::size_t permutation_disagreements = 0;
  bool degenerate_basis = false;
  std::size_t degenerate_cells = 0;
};

struct UniquenessResult {
  Uniqueness verdict = Uniqueness::unique;
  UniquenessWitness witness;
};

// Solves once, then for every off-support cell of zero reduced cost maximizes
// the mass that optimal plans can put on it (a transportation problem over the
// zero-reduced-cost cells). Any positive maximum is an alternative optimal
// vertex. The second witness is the product coupling when it is optimal, and
// otherwise the barycentre of all vertices found. Also re-solves under
// `trials` random atom orders.
UniquenessResult uniqueness_probe(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostFunction& c,
                                  int trials, std::uint64_t seed);
UniquenessResult uniqueness_probe(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Matrix& costs,
                                  int trials, std::uint64_t seed);

}  // namespace mongelab
