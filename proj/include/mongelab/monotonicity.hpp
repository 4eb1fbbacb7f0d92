#pragma once

#include "mongelab/core.hpp"
#include "mongelab/transport.hpp"

#include <string>
#include <vector>

namespace mongelab {

// Finite set of (source, target) pairs. Duplicate pairs are merged.
class MonotonePairSet {
 public:
  MonotonePairSet(Matrix sources, Matrix targets);

  static MonotonePairSet from_plan(const TransportPlan& plan);

  Eigen::Index size() const { return sources_.cols(); }
  Point source(Eigen::Index i) const { return sources_.col(i); }
  Point target(Eigen::Index i) const { return targets_.col(i); }
  const Matrix& sources() const { return sources_; }
  const Matrix& targets() const { return targets_; }

  MonotonePairSet subset(const std::vector<Eigen::Index>& keep) const;

 private:
  Matrix sources_;
  Matrix targets_;
};

enum class Monotonicity { monotone, violated };
std::string to_string(Monotonicity m);

struct CycleCertificate {
  Monotonicity verdict = Monotonicity::monotone;
  // Pair indices i_1 -> i_2 -> ... -> i_L; the cycle reassigns y_{i_{m+1}} to
  // x_{i_m}. Empty when monotone.
  std::vector<Eigen::Index> cycle;
  // sum_m c(x_{i_m}, y_{i_{m+1}}) - c(x_{i_m}, y_{i_m}); < -tol iff violated.
  double defect = 0.0;
};

// Pairwise cost grid G(i, j) = c(x_i, y_j).
Matrix pair_cost_grid(const MonotonePairSet& pairs, const CostFunction& c);

// Negative-cycle search on the complete digraph with w(i -> j) = G(i, j) - G(i, i)
// by Bellman-Ford with predecessor recovery. Edge weights are shifted by
// tol/N so that only cycles with total weight below -tol are reported.
CycleCertificate certify(const Matrix& grid);
CycleCertificate certify(const MonotonePairSet& pairs, const CostFunction& c);

// certify() on the support of the plan.
CycleCertificate violation_search(const TransportPlan& plan, const CostFunction& c);

// Total cycle weight recomputed from the grid.
double cycle_defect(const Matrix& grid, const std::vector<Eigen::Index>& cycle);

}  // namespace mongelab
