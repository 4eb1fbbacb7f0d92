#include "mongelab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace mongelab {

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::squared_distance: return "squared_distance";
    case CostKind::distance: return "distance";
    case CostKind::custom: return "custom";
  }
  return "custom";
}

std::string to_string(Uniqueness u) { return u == Uniqueness::unique ? "unique" : "multiple"; }

CostFunction::CostFunction(CostKind kind, std::string name, Fn fn, std::optional<MetricSpace> space)
    : kind_(kind), name_(std::move(name)), fn_(std::move(fn)), space_(std::move(space)) {}

CostFunction CostFunction::squared_distance(MetricSpace space) {
  auto fn = [space](const Point& x, const Point& y) {
    const double d = space.distance(x, y);
    return d * d;
  };
  return CostFunction(CostKind::squared_distance, "squared_distance", fn, std::move(space));
}

CostFunction CostFunction::distance(MetricSpace space) {
  auto fn = [space](const Point& x, const Point& y) { return space.distance(x, y); };
  return CostFunction(CostKind::distance, "distance", fn, std::move(space));
}

CostFunction CostFunction::custom(std::string name, Fn fn) {
  if (!fn) throw ValidationError("custom cost: empty callable");
  return CostFunction(CostKind::custom, std::move(name), std::move(fn), std::nullopt);
}

CostFunction CostFunction::table(Matrix entries) {
  auto index = [](const Point& p, Eigen::Index n) {
    if (p.size() != 1) throw ValidationError("table cost: points must be index 1-vectors");
    const auto i = static_cast<Eigen::Index>(std::llround(p[0]));
    if (static_cast<double>(i) != p[0] || i < 0 || i >= n) throw ValidationError("table cost: index out of range");
    return i;
  };
  auto fn = [entries, index](const Point& x, const Point& y) {
    return entries(index(x, entries.rows()), index(y, entries.cols()));
  };
  return CostFunction(CostKind::custom, "table", fn, std::nullopt);
}

CostFunction CostFunction::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw ValidationError("cost scaling requires lambda > 0");
  auto inner = fn_;
  return CostFunction(kind_, name_, [inner, lambda](const Point& x, const Point& y) { return lambda * inner(x, y); },
                      space_);
}

CostMatrix cost_matrix(const CostFunction& c, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  CostMatrix out;
  out.entries.resize(mu.size(), nu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const Point x = mu.atom(i);
    for (Eigen::Index j = 0; j < nu.size(); ++j) {
      const double value = c(x, nu.atom(j));
      if (std::isnan(value) || value < 0.0) throw ValidationError("cost must be nonnegative");
      if (std::isinf(value)) {
        out.has_infinite = true;
        out.entries(i, j) = kInfiniteCost;
      } else {
        out.entries(i, j) = value;
      }
    }
  }
  return out;
}

TransportPlan::TransportPlan(DiscreteMeasure source, DiscreteMeasure target, std::vector<PlanEntry> entries)
    : source_(std::move(source)), target_(std::move(target)) {
  std::map<std::pair<Eigen::Index, Eigen::Index>, double> merged;
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= source_.size() || e.j < 0 || e.j >= target_.size())
      throw ValidationError("transport plan: entry index out of range");
    if (!(e.mass >= 0.0) || !std::isfinite(e.mass)) throw ValidationError("transport plan: masses must be nonnegative");
    merged[{e.i, e.j}] += e.mass;
  }
  VectorX<double> rows = VectorX<double>::Zero(source_.size());
  VectorX<double> cols = VectorX<double>::Zero(target_.size());
  for (const auto& [cell, mass] : merged) {
    if (mass <= tol::kMassFloor) continue;
    entries_.push_back({cell.first, cell.second, mass});
    rows[cell.first] += mass;
    cols[cell.second] += mass;
  }
  if ((rows - source_.weights()).cwiseAbs().maxCoeff() > tol::kMarginal)
    throw ValidationError("transport plan: row sums do not match source weights");
  if ((cols - target_.weights()).cwiseAbs().maxCoeff() > tol::kMarginal)
    throw ValidationError("transport plan: column sums do not match target weights");
}

Matrix TransportPlan::dense() const {
  Matrix out = Matrix::Zero(source_.size(), target_.size());
  for (const auto& e : entries_) out(e.i, e.j) = e.mass;
  return out;
}

double TransportPlan::cost(const Matrix& costs) const {
  if (costs.rows() != source_.size() || costs.cols() != target_.size()) throw ValidationError("plan cost: shape mismatch");
  double total = 0.0;
  for (const auto& e : entries_) total += e.mass * costs(e.i, e.j);
  return total;
}

double TransportPlan::cost(const CostFunction& c) const {
  double total = 0.0;
  for (const auto& e : entries_) total += e.mass * c(source_.atom(e.i), target_.atom(e.j));
  return total;
}

TransportPlan TransportPlan::blend(const TransportPlan& other, double s) const {
  if (other.source_.size() != source_.size() || other.target_.size() != target_.size())
    throw ValidationError("blend: plans have different marginals");
  if (s < 0.0 || s > 1.0) throw ValidationError("blend: weight must lie in [0, 1]");
  std::vector<PlanEntry> mixed;
  for (const auto& e : entries_) mixed.push_back({e.i, e.j, (1.0 - s) * e.mass});
  for (const auto& e : other.entries_) mixed.push_back({e.i, e.j, s * e.mass});
  return TransportPlan(source_, target_, std::move(mixed));
}

double TransportPlan::distance_to(const TransportPlan& other) const {
  if (other.source_.size() != source_.size() || other.target_.size() != target_.size())
    throw ValidationError("distance_to: plans have different shapes");
  return (dense() - other.dense()).cwiseAbs().maxCoeff();
}

TransportPlan product_plan(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<PlanEntry> entries;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    for (Eigen::Index j = 0; j < nu.size(); ++j) entries.push_back({i, j, mu.weight(i) * nu.weight(j)});
  return TransportPlan(mu, nu, std::move(entries));
}

namespace {

// Basis spanning tree over row nodes 0..m-1 and column nodes m..m+n-1.
class BasisTree {
 public:
  BasisTree(Eigen::Index m, Eigen::Index n, const std::vector<BasisCell>& cells) : m_(m), adj_(m + n) {
    for (std::size_t e = 0; e < cells.size(); ++e) {
      adj_[cells[e].i].push_back({m + cells[e].j, e});
      adj_[m + cells[e].j].push_back({cells[e].i, e});
    }
  }

  // Dual potentials with u_0 = 0.
  void potentials(const Matrix& costs, const std::vector<BasisCell>& cells, VectorX<double>& u,
                  VectorX<double>& v) const {
    const Eigen::Index m = m_;
    std::vector<double> value(adj_.size(), 0.0);
    std::vector<bool> seen(adj_.size(), false);
    std::queue<Eigen::Index> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
      const Eigen::Index node = frontier.front();
      frontier.pop();
      for (const auto& [next, edge] : adj_[node]) {
        if (seen[next]) continue;
        const double c = costs(cells[edge].i, cells[edge].j);
        value[next] = c - value[node];
        seen[next] = true;
        frontier.push(next);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw NumericalError("transportation simplex: basis is not a spanning tree");
    u.resize(m);
    v.resize(static_cast<Eigen::Index>(adj_.size()) - m);
    for (Eigen::Index i = 0; i < m; ++i) u[i] = value[i];
    for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = value[m + j];
  }

  // Edge indices on the tree path from row node `row` to column node `col`,
  // ordered starting at the row end.
  std::vector<std::size_t> path(Eigen::Index row, Eigen::Index col) const {
    const Eigen::Index target = m_ + col;
    std::vector<Eigen::Index> parent(adj_.size(), -1);
    std::vector<std::size_t> via(adj_.size(), 0);
    std::queue<Eigen::Index> frontier;
    frontier.push(row);
    parent[row] = row;
    while (!frontier.empty() && parent[target] < 0) {
      const Eigen::Index node = frontier.front();
      frontier.pop();
      for (const auto& [next, edge] : adj_[node]) {
        if (parent[next] >= 0) continue;
        parent[next] = node;
        via[next] = edge;
        frontier.push(next);
      }
    }
    if (parent[target] < 0) throw NumericalError("transportation simplex: no basis path for entering cell");
    std::vector<std::size_t> edges;
    for (Eigen::Index node = target; node != row; node = parent[node]) edges.push_back(via[node]);
    std::reverse(edges.begin(), edges.end());
    return edges;
  }

 private:
  struct Link {
    Eigen::Index node;
    std::size_t edge;
  };
  Eigen::Index m_;
  std::vector<std::vector<Link>> adj_;
};

}  // namespace

SimplexSolution solve_transportation(const Matrix& costs, const VectorX<double>& supply,
                                     const VectorX<double>& demand) {
  const Eigen::Index m = supply.size();
  const Eigen::Index n = demand.size();
  if (m == 0 || n == 0) throw ValidationError("transportation: empty marginals");
  if (costs.rows() != m || costs.cols() != n) throw ValidationError("transportation: cost matrix shape mismatch");
  if ((supply.array() < 0.0).any() || (demand.array() < 0.0).any())
    throw ValidationError("transportation: negative marginal weight");
  if (std::abs(supply.sum() - demand.sum()) > tol::kMarginal)
    throw NumericalError("transportation: infeasible, marginal totals differ");

  double finite_max = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = costs(i, j);
      if (std::isnan(c) || c == -kInfiniteCost) throw ValidationError("transportation: invalid cost entry");
      if (std::isfinite(c)) finite_max = std::max(finite_max, std::abs(c));
    }
  for (Eigen::Index i = 0; i < m; ++i)
    if (supply[i] > 0.0 && !costs.row(i).array().isFinite().any())
      throw NumericalError("transportation: infeasible, source " + std::to_string(i) + " has only infinite costs");
  for (Eigen::Index j = 0; j < n; ++j)
    if (demand[j] > 0.0 && !costs.col(j).array().isFinite().any())
      throw NumericalError("transportation: infeasible, target " + std::to_string(j) + " has only infinite costs");

  const double big_m = tol::kBigMFactor * (finite_max + 1.0);
  Matrix work = costs.unaryExpr([big_m](double c) { return std::isfinite(c) ? c : big_m; });
  const double pivot_tol = tol::kPivotRelative * std::max(1.0, finite_max);

  SimplexSolution sol;
  sol.flow = Matrix::Zero(m, n);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> basic = decltype(basic)::Constant(m, n, false);

  // North-west corner; ties step down a row so the basis keeps m + n - 1 cells.
  {
    VectorX<double> a = supply;
    VectorX<double> b = demand;
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    for (;;) {
      const double x = std::min(a[i], b[j]);
      sol.flow(i, j) = x;
      basic(i, j) = true;
      sol.basis.push_back({i, j});
      a[i] -= x;
      b[j] -= x;
      if (i == m - 1 && j == n - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == n - 1) {
        ++i;
      } else if (a[i] <= b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const std::size_t max_iterations = 100000 + 100 * static_cast<std::size_t>(m * n * (m + n));
  for (;;) {
    const BasisTree tree(m, n, sol.basis);
    tree.potentials(work, sol.basis, sol.u, sol.v);

    Eigen::Index enter_i = -1;
    Eigen::Index enter_j = -1;
    for (Eigen::Index i = 0; i < m && enter_i < 0; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (basic(i, j)) continue;
        if (work(i, j) - sol.u[i] - sol.v[j] < -pivot_tol) {
          enter_i = i;
          enter_j = j;
          break;
        }
      }
    if (enter_i < 0) break;
    if (++sol.iterations > max_iterations) throw NumericalError("transportation simplex: iteration limit reached");

    // Along the path from the row end, signs alternate -, +, -, ...
    const std::vector<std::size_t> path = tree.path(enter_i, enter_j);
    double theta = kInfiniteCost;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const auto& cell = sol.basis[path[k]];
      theta = std::min(theta, sol.flow(cell.i, cell.j));
    }
    std::size_t leave = path.size();
    Eigen::Index leave_index = m * n;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const auto& cell = sol.basis[path[k]];
      const Eigen::Index linear = cell.i * n + cell.j;
      if (sol.flow(cell.i, cell.j) == theta && linear < leave_index) {
        leave = path[k];
        leave_index = linear;
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      const auto& cell = sol.basis[path[k]];
      sol.flow(cell.i, cell.j) += (k % 2 == 0) ? -theta : theta;
    }
    sol.flow(enter_i, enter_j) = theta;
    const BasisCell out = sol.basis[leave];
    sol.flow(out.i, out.j) = 0.0;
    basic(out.i, out.j) = false;
    basic(enter_i, enter_j) = true;
    sol.basis[leave] = {enter_i, enter_j};
  }

  // The reported potentials must refer to the true costs; big-M cells that
  // remain basic carry no mass and are excluded from the dual check below.
  sol.cost = 0.0;
  for (const auto& cell : sol.basis) {
    const double x = sol.flow(cell.i, cell.j);
    if (x <= tol::kMassFloor) {
      ++sol.degenerate_cells;
      continue;
    }
    if (!std::isfinite(costs(cell.i, cell.j)))
      throw NumericalError("transportation: infeasible, no finite-cost admissible plan");
    sol.cost += x * costs(cell.i, cell.j);
  }
  return sol;
}

namespace {

TransportPlan plan_from_flow(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Matrix& flow) {
  std::vector<PlanEntry> entries;
  for (Eigen::Index i = 0; i < flow.rows(); ++i)
    for (Eigen::Index j = 0; j < flow.cols(); ++j)
      if (flow(i, j) > tol::kMassFloor) entries.push_back({i, j, flow(i, j)});
  return TransportPlan(mu, nu, std::move(entries));
}

}  // namespace

TransportPlan solve_kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Matrix& costs) {
  const SimplexSolution sol = solve_transportation(costs, mu.weights(), nu.weights());
  return plan_from_flow(mu, nu, sol.flow);
}

TransportPlan solve_kantorovich(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostFunction& c) {
  return solve_kantorovich(mu, nu, cost_matrix(c, mu, nu).entries);
}

PlanDiagnostics mapness(const TransportPlan& plan, double atom_tol) {
  if (atom_tol < tol::kMassFloor) throw ValidationError("mapness: atom_tol below the mass floor");
  const DiscreteMeasure& mu = plan.source();
  PlanDiagnostics out;
  out.row_entropy.assign(static_cast<std::size_t>(mu.size()), 0.0);
  std::vector<int> count(static_cast<std::size_t>(mu.size()), 0);
  std::vector<Eigen::Index> heaviest(static_cast<std::size_t>(mu.size()), -1);
  std::vector<double> heaviest_mass(static_cast<std::size_t>(mu.size()), 0.0);
  for (const auto& e : plan.entries()) {
    const auto row = static_cast<std::size_t>(e.i);
    const double q = e.mass / mu.weight(e.i);
    if (e.mass > atom_tol) ++count[row];
    if (e.mass > heaviest_mass[row]) {
      heaviest_mass[row] = e.mass;
      heaviest[row] = e.j;
    }
    out.row_entropy[row] -= q * std::log(q);
    out.diagonal_mass += mu.weight(e.i) * q * q;
  }
  double mapped = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (count[static_cast<std::size_t>(i)] == 1) mapped += mu.weight(i);
  out.mapness = mapped / mu.weights().sum();
  if (std::all_of(count.begin(), count.end(), [](int c) { return c == 1; })) {
    out.mapness = 1.0;
    out.map = heaviest;
  }
  return out;
}

RestrictedPlan restrict_plan(const TransportPlan& plan, const MetricSpace& space, const Ball& source_ball,
                             const Ball& target_ball) {
  if (!(source_ball.radius > 0.0) || !(target_ball.radius > 0.0)) throw ValidationError("restrict_plan: radii must be positive");
  std::vector<PlanEntry> kept;
  double captured = 0.0;
  for (const auto& e : plan.entries()) {
    if (!space.in_closed_ball(source_ball.center, source_ball.radius, plan.source().atom(e.i))) continue;
    if (!space.in_closed_ball(target_ball.center, target_ball.radius, plan.target().atom(e.j))) continue;
    kept.push_back(e);
    captured += e.mass;
  }
  if (!(captured > tol::kMassFloor)) throw NumericalError("restrict_plan: balls capture no plan mass");

  std::map<Eigen::Index, Eigen::Index> src;
  std::map<Eigen::Index, Eigen::Index> dst;
  for (const auto& e : kept) {
    src.emplace(e.i, 0);
    dst.emplace(e.j, 0);
  }
  RestrictedPlan out{plan, {}, {}, captured};
  Eigen::Index next = 0;
  for (auto& [orig, idx] : src) {
    idx = next++;
    out.source_index.push_back(orig);
  }
  next = 0;
  for (auto& [orig, idx] : dst) {
    idx = next++;
    out.target_index.push_back(orig);
  }
  Matrix sp(plan.source().dim(), static_cast<Eigen::Index>(src.size()));
  Matrix tp(plan.target().dim(), static_cast<Eigen::Index>(dst.size()));
  VectorX<double> sw = VectorX<double>::Zero(sp.cols());
  VectorX<double> tw = VectorX<double>::Zero(tp.cols());
  std::vector<PlanEntry> entries;
  for (const auto& e : kept) {
    const Eigen::Index i = src[e.i];
    const Eigen::Index j = dst[e.j];
    entries.push_back({i, j, e.mass / captured});
    sw[i] += e.mass / captured;
    tw[j] += e.mass / captured;
  }
  for (const auto& [orig, idx] : src) sp.col(idx) = plan.source().atom(orig);
  for (const auto& [orig, idx] : dst) tp.col(idx) = plan.target().atom(orig);
  out.plan = TransportPlan(DiscreteMeasure::normalized(sp, sw), DiscreteMeasure::normalized(tp, tw), std::move(entries));
  return out;
}

UniquenessResult uniqueness_probe(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Matrix& costs,
                                  int trials, std::uint64_t seed) {
  if (trials < 0) throw ValidationError("uniqueness_probe: trials must be nonnegative");
  const Eigen::Index m = mu.size();
  const Eigen::Index n = nu.size();
  const SimplexSolution sol = solve_transportation(costs, mu.weights(), nu.weights());
  const TransportPlan first = plan_from_flow(mu, nu, sol.flow);

  double finite_max = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::isfinite(costs(i, j))) finite_max = std::max(finite_max, std::abs(costs(i, j)));
  const double zero_tol = tol::kOptimality * std::max(1.0, finite_max);

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> is_basic = decltype(is_basic)::Constant(m, n, false);
  for (const auto& cell : sol.basis) is_basic(cell.i, cell.j) = true;

  // Cells where some optimal plan may put mass.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> face = decltype(face)::Constant(m, n, false);
  UniquenessWitness witness{first, std::nullopt, first.cost(costs), 0.0, 0, 0, 0, sol.degenerate_cells > 0,
                            sol.degenerate_cells};
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(costs(i, j))) continue;
      const double reduced = costs(i, j) - sol.u[i] - sol.v[j];
      if (std::abs(reduced) <= zero_tol || (is_basic(i, j) && sol.flow(i, j) > tol::kMassFloor)) {
        face(i, j) = true;
        if (!is_basic(i, j)) ++witness.zero_reduced_cells;
      }
    }

  std::vector<Matrix> vertices{sol.flow};
  Matrix covered = sol.flow;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!face(i, j) || covered(i, j) > tol::kMassFloor) continue;
      // Maximize x_ij over admissible plans supported on the face.
      Matrix aux = Matrix::Constant(m, n, kInfiniteCost);
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
          if (face(a, b)) aux(a, b) = 1.0;
      aux(i, j) = 0.0;
      const SimplexSolution alt = solve_transportation(aux, mu.weights(), nu.weights());
      if (alt.flow(i, j) > tol::kMassFloor) {
        vertices.push_back(alt.flow);
        covered += alt.flow;
      }
    }
  witness.alternative_vertices = vertices.size() - 1;
  const TransportPlan product = product_plan(mu, nu);
  const double product_cost = product.cost(costs);
  if (vertices.size() > 1 && std::isfinite(product_cost) &&
      std::abs(product_cost - witness.first_cost) <= tol::kOptimality * std::max(1.0, std::abs(witness.first_cost))) {
    // Full-support optimal coupling: the product itself.
    witness.second = product;
    witness.second_cost = product_cost;
  } else if (vertices.size() > 1) {
    Matrix bary = Matrix::Zero(m, n);
    for (const auto& v : vertices) bary += v;
    bary /= static_cast<double>(vertices.size());
    witness.second = plan_from_flow(mu, nu, bary);
    witness.second_cost = witness.second->cost(costs);
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(m));
    std::vector<Eigen::Index> cols(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    Matrix permuted(m, n);
    VectorX<double> a(m);
    VectorX<double> b(n);
    for (Eigen::Index i = 0; i < m; ++i) a[i] = mu.weight(rows[i]);
    for (Eigen::Index j = 0; j < n; ++j) b[j] = nu.weight(cols[j]);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) permuted(i, j) = costs(rows[i], cols[j]);
    const SimplexSolution re = solve_transportation(permuted, a, b);
    Matrix back = Matrix::Zero(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j) back(rows[i], cols[j]) = re.flow(i, j);
    const TransportPlan candidate = plan_from_flow(mu, nu, back);
    const double cost = candidate.cost(costs);
    if (candidate.distance_to(first) > tol::kOptimality &&
        std::abs(cost - witness.first_cost) <= tol::kOptimality * std::max(1.0, std::abs(witness.first_cost))) {
      ++witness.permutation_disagreements;
      if (!witness.second) {
        witness.second = candidate;
        witness.second_cost = cost;
      }
    }
  }

  UniquenessResult result{witness.second ? Uniqueness::multiple : Uniqueness::unique, std::move(witness)};
  return result;
}

UniquenessResult uniqueness_probe(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const CostFunction& c,
                                  int trials, std::uint64_t seed) {
  return uniqueness_probe(mu, nu, cost_matrix(c, mu, nu).entries, trials, seed);
}

}  // namespace mongelab
