#pragma once

#include "mongelab/core.hpp"
#include "mongelab/spaces.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace mongelab {

using Rng = std::mt19937_64;

// Finitely many atoms with positive weights summing to one. Atoms are the
// columns of a dim x n matrix; duplicate atoms are merged on construction.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Matrix points, VectorX<double> weights);

  // Rescales positive weights to sum to one before validating.
  static DiscreteMeasure normalized(Matrix points, VectorX<double> weights);
  static DiscreteMeasure uniform(Matrix points);
  static DiscreteMeasure dirac(const Point& p);

  Eigen::Index size() const { return weights_.size(); }
  int dim() const { return static_cast<int>(points_.rows()); }
  Point atom(Eigen::Index i) const { return points_.col(i); }
  double weight(Eigen::Index i) const { return weights_[i]; }
  const Matrix& points() const { return points_; }
  const VectorX<double>& weights() const { return weights_; }

  // Atoms reordered so that new atom k is old atom order[k].
  DiscreteMeasure permuted(const std::vector<Eigen::Index>& order) const;

 private:
  Matrix points_;
  VectorX<double> weights_;
};

// A probability measure with a (relative) density on an axis-aligned box of
// R^n. Coordinates with lo == hi are degenerate: the measure lives on the
// lower-dimensional slice. Sampling is rejection from the box.
class SampledDensity {
 public:
  using DensityFn = std::function<double(const Point&)>;

  SampledDensity(std::string name, Point lo, Point hi, DensityFn density, double density_max);

  static SampledDensity uniform_box(const Point& lo, const Point& hi);
  static SampledDensity truncated_gaussian(const Point& mean, double sigma, const Point& lo, const Point& hi);
  // Density `left` for coordinate[axis] < split and `right` otherwise.
  static SampledDensity piecewise_constant(const Point& lo, const Point& hi, int axis, double split, double left,
                                           double right);

  int dim() const { return static_cast<int>(lo_.size()); }
  const std::string& name() const { return name_; }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }
  // Unnormalized density; zero outside the box.
  double density(const Point& p) const;

  Point sample(Rng& rng) const;
  // A draw of the measure conditioned on the open ball B_r(center), or
  // nullopt when max_attempts proposals all fail.
  std::optional<Point> sample_in_ball(const NormSpec& norm, const Point& center, double r, Rng& rng,
                                      std::size_t max_attempts) const;

 private:
  bool in_box(const Point& p) const;

  std::string name_;
  Point lo_;
  Point hi_;
  DensityFn density_;
  double density_max_;
};

// A proportion estimate with a 95% interval. Exact estimates have
// lower == value == upper and trials == 0.
struct Estimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t hits = 0;
  std::size_t trials = 0;
  bool exact = false;

  double half_width() const { return 0.5 * (upper - lower); }
  static Estimate exact_value(double v) { return {v, v, v, 0, 0, true}; }
};

// Normal approximation, switching to the Wilson interval when fewer than 30
// hits or misses are observed.
Estimate proportion_interval(std::size_t hits, std::size_t trials);

enum class Verdict { positive, inconclusive, zero };
std::string to_string(Verdict v);

struct RatioReport {
  std::vector<double> radii;       // strictly decreasing
  std::vector<Estimate> ratios;
  double liminf_proxy = 0.0;       // min estimate over the tail half of the schedule
  Verdict verdict = Verdict::inconclusive;
  bool zero_denominator = false;   // some inner ball carried no mass
};

// Tail half = the last ceil(n/2) entries. Positive iff every tail lower bound
// is > 0; zero iff every tail upper bound is 0 (exact) or below
// tol::kZeroRatioUpper (sampled); inconclusive otherwise.
Verdict classify_tail(const std::vector<Estimate>& ratios, double* liminf_proxy = nullptr);

// r0 * 2^-i for i = 0..count-1.
std::vector<double> geometric_radii(double r0, int count = 7);

Estimate ball_mass(const MetricSpace& space, const DiscreteMeasure& mu, const Point& center, double r);
Estimate ball_mass(const MetricSpace& space, const SampledDensity& mu, const Point& center, double r,
                   std::size_t budget, std::uint64_t seed);

struct DoublingScan {
  std::vector<double> radii;
  std::vector<Estimate> ratios;  // m(B_2r) / m(B_r); interval is for the ratio itself
  double max_ratio = 0.0;        // empirical doubling constant
};

DoublingScan doubling_ratio_scan(const MetricSpace& space, const DiscreteMeasure& mu, const Point& center,
                                 const std::vector<double>& radii);
DoublingScan doubling_ratio_scan(const MetricSpace& space, const SampledDensity& mu, const Point& center,
                                 const std::vector<double>& radii, std::size_t budget, std::uint64_t seed);

RatioReport cone_mass_ratio(const MetricSpace& space, const DiscreteMeasure& mu, const Point& x, const Geodesic& path,
                            double k, const std::vector<double>& radii);
RatioReport cone_mass_ratio(const MetricSpace& space, const SampledDensity& mu, const Point& x, const Geodesic& path,
                            double k, const std::vector<double>& radii, std::size_t budget, std::uint64_t seed);

struct ScatterReport {
  Verdict verdict = Verdict::inconclusive;
  std::size_t worst_direction = 0;
  RatioReport worst;
  std::vector<double> tail_minima;  // liminf proxy per direction
  std::vector<Verdict> verdicts;
};

ScatterReport densely_scattered_probe(const MetricSpace& space, const DiscreteMeasure& mu, const Point& x,
                                      const std::vector<Geodesic>& directions, double k,
                                      const std::vector<double>& radii);
ScatterReport densely_scattered_probe(const MetricSpace& space, const SampledDensity& mu, const Point& x,
                                      const std::vector<Geodesic>& directions, double k,
                                      const std::vector<double>& radii, std::size_t budget, std::uint64_t seed);

// Uniform draw from the open norm ball B_r(center), by rejection from the
// bounding cube.
Point sample_uniform_ball(const NormSpec& norm, const Point& center, double r, Rng& rng);
// A draw on the sphere {p : ||p - center|| = r} by radial projection of a
// Gaussian direction (uniform for the Euclidean norm).
Point sample_sphere(const NormSpec& norm, const Point& center, double r, Rng& rng);

}  // namespace mongelab
