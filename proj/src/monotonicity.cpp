#include "mongelab/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mongelab {

std::string to_string(Monotonicity m) { return m == Monotonicity::monotone ? "monotone" : "violated"; }

MonotonePairSet::MonotonePairSet(Matrix sources, Matrix targets) {
  if (sources.cols() == 0) throw ValidationError("pair set: must be nonempty");
  if (sources.cols() != targets.cols()) throw ValidationError("pair set: source/target count mismatch");
  std::vector<Eigen::Index> keep;
  std::set<std::vector<double>> seen;
  for (Eigen::Index i = 0; i < sources.cols(); ++i) {
    std::vector<double> key(sources.col(i).data(), sources.col(i).data() + sources.rows());
    key.insert(key.end(), targets.col(i).data(), targets.col(i).data() + targets.rows());
    if (seen.insert(std::move(key)).second) keep.push_back(i);
  }
  sources_.resize(sources.rows(), static_cast<Eigen::Index>(keep.size()));
  targets_.resize(targets.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    sources_.col(static_cast<Eigen::Index>(k)) = sources.col(keep[k]);
    targets_.col(static_cast<Eigen::Index>(k)) = targets.col(keep[k]);
  }
}

MonotonePairSet MonotonePairSet::from_plan(const TransportPlan& plan) {
  const auto& entries = plan.entries();
  Matrix xs(plan.source().dim(), static_cast<Eigen::Index>(entries.size()));
  Matrix ys(plan.target().dim(), static_cast<Eigen::Index>(entries.size()));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    xs.col(static_cast<Eigen::Index>(k)) = plan.source().atom(entries[k].i);
    ys.col(static_cast<Eigen::Index>(k)) = plan.target().atom(entries[k].j);
  }
  return MonotonePairSet(std::move(xs), std::move(ys));
}

MonotonePairSet MonotonePairSet::subset(const std::vector<Eigen::Index>& keep) const {
  Matrix xs(sources_.rows(), static_cast<Eigen::Index>(keep.size()));
  Matrix ys(targets_.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= size()) throw ValidationError("pair set subset: index out of range");
    xs.col(static_cast<Eigen::Index>(k)) = sources_.col(keep[k]);
    ys.col(static_cast<Eigen::Index>(k)) = targets_.col(keep[k]);
  }
  return MonotonePairSet(std::move(xs), std::move(ys));
}

Matrix pair_cost_grid(const MonotonePairSet& pairs, const CostFunction& c) {
  const Eigen::Index n = pairs.size();
  Matrix grid(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double value = c(pairs.source(i), pairs.target(j));
      if (!std::isfinite(value)) throw ValidationError("certify: infinite cost on the pair grid");
      grid(i, j) = value;
    }
  return grid;
}

double cycle_defect(const Matrix& grid, const std::vector<Eigen::Index>& cycle) {
  double total = 0.0;
  for (std::size_t m = 0; m < cycle.size(); ++m) {
    const Eigen::Index from = cycle[m];
    const Eigen::Index to = cycle[(m + 1) % cycle.size()];
    total += grid(from, to) - grid(from, from);
  }
  return total;
}

CycleCertificate certify(const Matrix& grid) {
  const Eigen::Index n = grid.rows();
  if (n == 0 || grid.cols() != n) throw ValidationError("certify: grid must be square and nonempty");
  if (!grid.allFinite()) throw ValidationError("certify: infinite cost on the pair grid");
  CycleCertificate cert;
  if (n == 1) return cert;

  const double shift = tol::kCycleDefect / static_cast<double>(n);
  auto weight = [&](Eigen::Index i, Eigen::Index j) { return grid(i, j) - grid(i, i) + shift; };

  // Virtual source at distance 0 from every vertex.
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  std::vector<Eigen::Index> pred(static_cast<std::size_t>(n), -1);
  auto relax_round = [&] {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        const double candidate = dist[i] + weight(i, j);
        if (candidate < dist[j]) {
          dist[j] = candidate;
          pred[j] = i;
          changed = true;
        }
      }
    return changed;
  };
  // Any cycle of the predecessor graph has negative weight.
  auto pred_cycle = [&]() -> std::vector<Eigen::Index> {
    std::vector<Eigen::Index> stamp(static_cast<std::size_t>(n), -1);
    for (Eigen::Index s = 0; s < n; ++s) {
      Eigen::Index u = s;
      while (u >= 0 && stamp[u] < 0) {
        stamp[u] = s;
        u = pred[u];
      }
      if (u < 0 || stamp[u] != s) continue;
      std::vector<Eigen::Index> backwards;
      for (Eigen::Index w = u;;) {
        backwards.push_back(w);
        w = pred[w];
        if (w == u) break;
      }
      return backwards;
    }
    return {};
  };

  bool changed = true;
  for (Eigen::Index round = 0; round < n && changed; ++round) changed = relax_round();
  if (!changed) return cert;
  std::vector<Eigen::Index> backwards = pred_cycle();
  for (Eigen::Index extra = 0; backwards.empty() && extra < n * n; ++extra) {
    relax_round();
    backwards = pred_cycle();
  }
  if (backwards.empty()) throw NumericalError("certify: negative cycle detected but not recovered");
  // pred points from j back to i for edge i -> j, so reverse for traversal order.
  std::reverse(backwards.begin(), backwards.end());
  const auto start = std::min_element(backwards.begin(), backwards.end());
  std::rotate(backwards.begin(), start, backwards.end());
  const double defect = cycle_defect(grid, backwards);
  if (defect < -tol::kCycleDefect) {
    cert.verdict = Monotonicity::violated;
    cert.cycle = std::move(backwards);
    cert.defect = defect;
  }
  return cert;
}

CycleCertificate certify(const MonotonePairSet& pairs, const CostFunction& c) {
  return certify(pair_cost_grid(pairs, c));
}

CycleCertificate violation_search(const TransportPlan& plan, const CostFunction& c) {
  return certify(MonotonePairSet::from_plan(plan), c);
}

}  // namespace mongelab
