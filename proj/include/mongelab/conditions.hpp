#pragma once

#include "mongelab/core.hpp"
#include "mongelab/measures.hpp"
#include "mongelab/spaces.hpp"
#include "mongelab/transport.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mongelab {

struct TwistConfig {
  double eps = 0.1;
  std::vector<double> s_schedule{0.1, 0.05, 0.025, 0.0125};
  std::optional<double> r1;  // base-point neighbourhood for variation scans
  std::optional<double> r2;  // adversary radius; d(y, z) / 4 when unset
  std::size_t inner_budget = 1024;
  std::size_t outer_budget = 4000;
  std::uint64_t seed = 0;
  // Bound L with |Phi(y1, z1) - Phi(y2, z2)| <= L d(x', xbar) max(d(y1, y2), d(z1, z2)),
  // where Phi is the four-point cost difference. 4 is exact for squared
  // Euclidean distance.
  double margin_lipschitz = 4.0;

  void validate() const;
  double adversary_radius(double dyz) const { return r2 ? *r2 : 0.25 * dyz; }
};

enum class TwistMode { exact, optimistic, conservative };
std::string to_string(TwistMode m);

struct TwistReport {
  TwistMode mode = TwistMode::exact;
  std::vector<double> s;
  std::vector<Estimate> ratios;
  double liminf_proxy = 0.0;
  Verdict verdict = Verdict::inconclusive;
  // Set when the set is empty for analytic reasons (y = z, overlapping balls);
  // ratios are then exact zeros.
  std::optional<std::string> degenerate;
};

// c(x', y) + c(x, z) < c(x, y) + c(x', z) - eps d(x', x).
bool pmtc_member(const MetricSpace& space, const CostFunction& c, const Point& x, const Point& y, const Point& z,
                 double eps, const Point& xp);

TwistReport pmtc_ratio(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c, const Point& x,
                       const Point& y, const Point& z, const TwistConfig& cfg);

// Membership tests for F_{s|r}(xbar | y, z): the strict four-point inequality
// c(x', y') + c(xbar, z') < c(xbar, y') + c(x', z') for all y' in B_r(y),
// z' in B_r(z).
class LmtcAdversaries {
 public:
  LmtcAdversaries(const MetricSpace& space, const CostFunction& c, Point xbar, Point y, Point z, double r,
                  std::size_t budget, std::uint64_t seed, double lipschitz);

  // Holds against every sampled adversary pair (centres, near-boundary and
  // interior points). Over-approximates F.
  bool optimistic_member(const Point& xp) const;
  // optimistic_member() and, on a grid net of both balls, the inequality with
  // slack lipschitz * d(x', xbar) * covering radius. Under-approximates F
  // whenever the Lipschitz bound holds.
  bool conservative_member(const Point& xp) const;

  std::size_t sampled_pairs() const { return sampled_y_.size(); }
  std::size_t net_pairs() const { return net_y_.size() * net_z_.size(); }
  double covering_radius() const { return covering_; }

 private:
  bool holds(const Point& xp, const Point& yp, double c_xbar_yp, const Point& zp, double c_xbar_zp,
             double slack) const;

  const MetricSpace& space_;
  const CostFunction& c_;
  Point xbar_;
  double lipschitz_;
  std::vector<Point> sampled_y_, sampled_z_;
  std::vector<double> sampled_cy_, sampled_cz_;
  std::vector<Point> net_y_, net_z_;
  std::vector<double> net_cy_, net_cz_;
  double covering_ = 0.0;
};

struct LmtcReport {
  TwistReport optimistic;
  TwistReport conservative;
  double r2 = 0.0;
  std::size_t sampled_pairs = 0;
  std::size_t net_pairs = 0;
  double covering_radius = 0.0;
};

LmtcReport lmtc_ratio(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c, const Point& xbar,
                      const Point& y, const Point& z, const TwistConfig& cfg);

struct EpsilonScan {
  std::vector<double> eps;
  std::vector<TwistReport> reports;
  std::optional<double> largest_positive;
};

// pmtc_ratio over eps = 2^-k d(y, z), k = 1..8.
EpsilonScan pmtc_epsilon_scan(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c,
                              const Point& x, const Point& y, const Point& z, const TwistConfig& cfg);

struct RatioVariation {
  std::vector<Point> points;
  std::vector<double> liminf_proxies;
  double max_difference = 0.0;
};

// Tail ratio of E^eps at x and at x +- h e_i; no verdict is attached.
RatioVariation pmtc_variation(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c,
                              const Point& x, const Point& y, const Point& z, double h, const TwistConfig& cfg);

struct C1Report {
  bool pass = false;
  double sup = 0.0;
  Point xbar, ybar, xp;  // maximizing sample
  std::size_t samples = 0;
};

// Sampled supremum of |(c(x', ybar) - c(xbar, ybar)) - (c(x', y) - c(xbar, y))| / d(x', xbar)
// over xbar in B_r1(x), ybar in B_r2(y), x' in B_delta(xbar); pass iff sup < eps.
C1Report c1_probe(const MetricSpace& space, const CostFunction& c, const Point& x, const Point& y, double eps,
                  double r1, double r2, double delta, std::size_t budget, std::uint64_t seed);

struct NonBranchingTriple {
  Point x, y, z;
  double d = 0.0;           // d(x', y') = d(x', z')
  double derivative = 0.0;  // smallest-t difference quotient
  double z_scale = 1.0;     // radial rescaling applied to z' about x'
  bool z_left_ball = false;
};

struct NonBranchingReport {
  std::vector<NonBranchingTriple> triples;
  // min(1, min over triples of 1 + D / d).
  double rho_hat = 1.0;
  bool positive = false;  // rho_hat > tol::kRhoPositive
  std::size_t worst = 0;
  // Only the affine geodesic is tested: a positive verdict is sufficient, a
  // negative one only indicative.
  bool canonical_geodesic_only = true;
};

NonBranchingReport nonbranching_scan(const MetricSpace& space, const Point& x, const Point& y, const Point& z,
                                     double r, const std::vector<double>& t_schedule, std::size_t triples,
                                     std::uint64_t seed);

struct NormedCertificate {
  double value = 0.0;           // grad g(x - z) . (y - x) / d(x, y)
  double gradient_dual = 0.0;   // ||grad g(x - z)||_*
  bool equidistant = true;      // |d(x, y) - d(x, z)| <= tol
};

NormedCertificate normed_nonbranching_certificate(const NormSpec& n, const Point& x, const Point& y, const Point& z);

// 1 + min certificate value over `samples` equidistant triples in B_r of
// (x, y, z), z' projected radially about x'.
double certificate_local_rho(const NormSpec& n, const Point& x, const Point& y, const Point& z, double r,
                             std::size_t samples, std::uint64_t seed);

}  // namespace mongelab
