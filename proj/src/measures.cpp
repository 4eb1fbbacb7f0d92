#include "mongelab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mongelab {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

std::size_t attempt_cap(std::size_t budget) { return 1000 * budget + 1000; }

}  // namespace

DiscreteMeasure::DiscreteMeasure(Matrix points, VectorX<double> weights) {
  if (points.cols() == 0) throw ValidationError("discrete measure: no atoms");
  if (points.cols() != weights.size()) throw ValidationError("discrete measure: atom/weight count mismatch");
  if (points.rows() == 0) throw ValidationError("discrete measure: zero-dimensional atoms");
  if (!points.allFinite()) throw ValidationError("discrete measure: non-finite coordinates");
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) throw ValidationError("discrete measure: weights must be positive");
  if (std::abs(weights.sum() - 1.0) > tol::kWeightSum)
    throw ValidationError("discrete measure: weights must sum to 1");

  // Merge duplicates, keeping first-occurrence order.
  std::map<Point, Eigen::Index, PointLess> seen;
  std::vector<Eigen::Index> keep;
  std::vector<double> merged;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const Point p = points.col(i);
    const auto [it, inserted] = seen.emplace(p, static_cast<Eigen::Index>(keep.size()));
    if (inserted) {
      keep.push_back(i);
      merged.push_back(weights[i]);
    } else {
      merged[it->second] += weights[i];
    }
  }
  points_.resize(points.rows(), static_cast<Eigen::Index>(keep.size()));
  weights_.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    points_.col(static_cast<Eigen::Index>(k)) = points.col(keep[k]);
    weights_[static_cast<Eigen::Index>(k)] = merged[k];
  }
}

DiscreteMeasure DiscreteMeasure::normalized(Matrix points, VectorX<double> weights) {
  const double total = weights.sum();
  if (!(total > 0.0)) throw ValidationError("discrete measure: total weight must be positive");
  return DiscreteMeasure(std::move(points), weights / total);
}

DiscreteMeasure DiscreteMeasure::uniform(Matrix points) {
  const auto n = points.cols();
  return DiscreteMeasure(std::move(points), VectorX<double>::Constant(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::dirac(const Point& p) { return DiscreteMeasure(Matrix(p), VectorX<double>::Ones(1)); }

DiscreteMeasure DiscreteMeasure::permuted(const std::vector<Eigen::Index>& order) const {
  if (static_cast<Eigen::Index>(order.size()) != size()) throw ValidationError("permuted: order size mismatch");
  Matrix pts(points_.rows(), size());
  VectorX<double> w(size());
  for (Eigen::Index k = 0; k < size(); ++k) {
    pts.col(k) = points_.col(order[k]);
    w[k] = weights_[order[k]];
  }
  return DiscreteMeasure(std::move(pts), std::move(w));
}

SampledDensity::SampledDensity(std::string name, Point lo, Point hi, DensityFn density, double density_max)
    : name_(std::move(name)), lo_(std::move(lo)), hi_(std::move(hi)), density_(std::move(density)),
      density_max_(density_max) {
  if (lo_.size() == 0 || lo_.size() != hi_.size()) throw ValidationError("sampled density: box bounds mismatch");
  if (((hi_ - lo_).array() < 0.0).any()) throw ValidationError("sampled density: lo must not exceed hi");
  if (!(density_max_ > 0.0)) throw ValidationError("sampled density: density bound must be positive");
}

SampledDensity SampledDensity::uniform_box(const Point& lo, const Point& hi) {
  return SampledDensity("uniform", lo, hi, [](const Point&) { return 1.0; }, 1.0);
}

SampledDensity SampledDensity::truncated_gaussian(const Point& mean, double sigma, const Point& lo, const Point& hi) {
  if (!(sigma > 0.0)) throw ValidationError("truncated gaussian: sigma must be positive");
  if (mean.size() != lo.size()) throw ValidationError("truncated gaussian: mean dimension mismatch");
  return SampledDensity(
      "gaussian", lo, hi,
      [mean, sigma](const Point& p) { return std::exp(-0.5 * (p - mean).squaredNorm() / (sigma * sigma)); }, 1.0);
}

SampledDensity SampledDensity::piecewise_constant(const Point& lo, const Point& hi, int axis, double split,
                                                  double left, double right) {
  if (axis < 0 || axis >= lo.size()) throw ValidationError("piecewise density: axis out of range");
  if (!(left > 0.0) || !(right > 0.0)) throw ValidationError("piecewise density: levels must be positive");
  return SampledDensity(
      "piecewise", lo, hi, [axis, split, left, right](const Point& p) { return p[axis] < split ? left : right; },
      std::max(left, right));
}

bool SampledDensity::in_box(const Point& p) const {
  return ((p - lo_).array() >= 0.0).all() && ((hi_ - p).array() >= 0.0).all();
}

double SampledDensity::density(const Point& p) const {
  if (p.size() != lo_.size()) throw ValidationError("density: dimension mismatch");
  return in_box(p) ? density_(p) : 0.0;
}

Point SampledDensity::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t attempt = 0; attempt < (1u << 24); ++attempt) {
    Point p(lo_.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = lo_[i] + (hi_[i] - lo_[i]) * unit(rng);
    if (unit(rng) * density_max_ < density_(p)) return p;
  }
  throw NumericalError("sampled density '" + name_ + "': rejection sampler made no progress");
}

std::optional<Point> SampledDensity::sample_in_ball(const NormSpec& norm, const Point& center, double r, Rng& rng,
                                                    std::size_t max_attempts) const {
  if (center.size() != lo_.size() || norm.dim != lo_.size()) throw ValidationError("sample_in_ball: dimension mismatch");
  // The norm ball lies inside the cube of half-side r for every lp norm.
  Point a(lo_.size());
  Point b(lo_.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a[i] = std::max(lo_[i], center[i] - r);
    b[i] = std::min(hi_[i], center[i] + r);
    if (a[i] > b[i]) return std::nullopt;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Point p(a.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = a[i] == b[i] ? a[i] : a[i] + (b[i] - a[i]) * unit(rng);
    const bool inside = mongelab::norm(norm, Point(p - center)) < r;
    const double u = unit(rng);
    if (inside && u * density_max_ < density_(p)) return p;
  }
  return std::nullopt;
}

Estimate proportion_interval(std::size_t hits, std::size_t trials) {
  if (trials == 0) throw ValidationError("proportion_interval: no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  Estimate e{p, 0.0, 0.0, hits, trials, false};
  if (hits < 30 || trials - hits < 30) {
    const double z2 = kZ95 * kZ95;
    const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
    e.lower = std::max(0.0, centre - half);
    e.upper = std::min(1.0, centre + half);
  } else {
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n);
    e.lower = std::max(0.0, p - half);
    e.upper = std::min(1.0, p + half);
  }
  if (hits == 0) e.lower = 0.0;
  return e;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::positive: return "positive";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::zero: return "zero";
  }
  return "inconclusive";
}

Verdict classify_tail(const std::vector<Estimate>& ratios, double* liminf_proxy) {
  if (ratios.empty()) throw ValidationError("classify_tail: empty schedule");
  const std::size_t first = ratios.size() / 2;
  bool positive = true;
  bool zero = true;
  double minimum = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < ratios.size(); ++i) {
    const Estimate& e = ratios[i];
    minimum = std::min(minimum, e.value);
    positive = positive && e.lower > 0.0;
    zero = zero && (e.exact ? e.upper == 0.0 : e.upper < tol::kZeroRatioUpper);
  }
  if (liminf_proxy) *liminf_proxy = minimum;
  if (positive) return Verdict::positive;
  if (zero) return Verdict::zero;
  return Verdict::inconclusive;
}

std::vector<double> geometric_radii(double r0, int count) {
  if (!(r0 > 0.0) || count < 1) throw ValidationError("geometric_radii: need r0 > 0 and count >= 1");
  std::vector<double> radii;
  for (int i = 0; i < count; ++i) radii.push_back(std::ldexp(r0, -i));
  return radii;
}

namespace {

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("radius must be positive");
}

void check_schedule(const std::vector<double>& radii) {
  if (radii.empty()) throw ValidationError("radius schedule is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    check_radius(radii[i]);
    if (i > 0 && !(radii[i] < radii[i - 1])) throw ValidationError("radius schedule must be strictly decreasing");
  }
}

double exact_ball_mass(const MetricSpace& space, const DiscreteMeasure& mu, const Point& center, double r) {
  double mass = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (space.in_open_ball(center, r, mu.atom(i))) mass += mu.weight(i);
  return mass;
}

void check_start(const Geodesic& path, const Point& x, double k) {
  if (!(k > 0.0)) throw ValidationError("cone size k must be positive");
  if (path.start().size() != x.size() || (path.start() - x).cwiseAbs().maxCoeff() > tol::kCoincident)
    throw ValidationError("geodesic must start at the base point");
}

Estimate uninformative() { return {0.0, 0.0, 1.0, 0, 0, false}; }

RatioReport finish(std::vector<double> radii, std::vector<Estimate> ratios, bool zero_denominator) {
  RatioReport report;
  report.radii = std::move(radii);
  report.ratios = std::move(ratios);
  report.zero_denominator = zero_denominator;
  report.verdict = classify_tail(report.ratios, &report.liminf_proxy);
  return report;
}

}  // namespace

Estimate ball_mass(const MetricSpace& space, const DiscreteMeasure& mu, const Point& center, double r) {
  check_radius(r);
  return Estimate::exact_value(exact_ball_mass(space, mu, center, r));
}

Estimate ball_mass(const MetricSpace& space, const SampledDensity& mu, const Point& center, double r,
                   std::size_t budget, std::uint64_t seed) {
  check_radius(r);
  if (budget == 0) throw ValidationError("ball_mass: budget must be >= 1");
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < budget; ++i)
    if (space.in_open_ball(center, r, mu.sample(rng))) ++hits;
  return proportion_interval(hits, budget);
}

DoublingScan doubling_ratio_scan(const MetricSpace& space, const DiscreteMeasure& mu, const Point& center,
                                 const std::vector<double>& radii) {
  if (radii.empty()) throw ValidationError("doubling scan: empty radius list");
  DoublingScan scan;
  for (const double r : radii) {
    check_radius(r);
    const double inner = exact_ball_mass(space, mu, center, r);
    if (!(inner > 0.0)) throw NumericalError("doubling scan: zero-mass inner ball at r = " + std::to_string(r));
    const double ratio = exact_ball_mass(space, mu, center, 2.0 * r) / inner;
    scan.radii.push_back(r);
    scan.ratios.push_back(Estimate::exact_value(ratio));
    scan.max_ratio = std::max(scan.max_ratio, ratio);
  }
  return scan;
}

DoublingScan doubling_ratio_scan(const MetricSpace& space, const SampledDensity& mu, const Point& center,
                                 const std::vector<double>& radii, std::size_t budget, std::uint64_t seed) {
  if (radii.empty()) throw ValidationError("doubling scan: empty radius list");
  if (budget == 0) throw ValidationError("doubling scan: budget must be >= 1");
  const NormSpec& norm = space.norm();
  DoublingScan scan;
  for (std::size_t idx = 0; idx < radii.size(); ++idx) {
    const double r = radii[idx];
    check_radius(r);
    // Fraction of mu|B_2r that falls in B_r is m(B_r)/m(B_2r).
    Rng rng(derive_seed(seed, idx));
    std::size_t drawn = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < budget; ++i) {
      const auto p = mu.sample_in_ball(norm, center, 2.0 * r, rng, attempt_cap(1));
      if (!p) continue;
      ++drawn;
      if (space.in_open_ball(center, r, *p)) ++hits;
    }
    if (hits == 0) throw NumericalError("doubling scan: zero-mass inner ball at r = " + std::to_string(r));
    const Estimate f = proportion_interval(hits, drawn);
    const double inf = std::numeric_limits<double>::infinity();
    Estimate ratio{1.0 / f.value, 1.0 / f.upper, f.lower > 0.0 ? 1.0 / f.lower : inf, hits, drawn, false};
    scan.radii.push_back(r);
    scan.ratios.push_back(ratio);
    scan.max_ratio = std::max(scan.max_ratio, ratio.value);
  }
  return scan;
}

RatioReport cone_mass_ratio(const MetricSpace& space, const DiscreteMeasure& mu, const Point& x, const Geodesic& path,
                            double k, const std::vector<double>& radii) {
  check_start(path, x, k);
  check_schedule(radii);
  const GeodesicCone cone{path, k};
  std::vector<Estimate> ratios;
  bool zero_denominator = false;
  for (const double r : radii) {
    double ball = 0.0;
    double inside = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      const Point p = mu.atom(i);
      if (!space.in_open_ball(x, r, p)) continue;
      ball += mu.weight(i);
      if (cone_contains(cone, p, tol::kCoincident)) inside += mu.weight(i);
    }
    if (ball > 0.0) {
      ratios.push_back(Estimate::exact_value(std::clamp(inside / ball, 0.0, 1.0)));
    } else {
      zero_denominator = true;
      ratios.push_back(uninformative());
    }
  }
  return finish(radii, std::move(ratios), zero_denominator);
}

RatioReport cone_mass_ratio(const MetricSpace& space, const SampledDensity& mu, const Point& x, const Geodesic& path,
                            double k, const std::vector<double>& radii, std::size_t budget, std::uint64_t seed) {
  check_start(path, x, k);
  check_schedule(radii);
  if (budget == 0) throw ValidationError("cone_mass_ratio: budget must be >= 1");
  const NormSpec& norm = space.norm();
  const GeodesicCone cone{path, k};
  std::vector<Estimate> ratios;
  bool zero_denominator = false;
  for (std::size_t idx = 0; idx < radii.size(); ++idx) {
    Rng rng(derive_seed(seed, idx));
    std::size_t drawn = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < budget; ++i) {
      const auto p = mu.sample_in_ball(norm, x, radii[idx], rng, attempt_cap(1));
      if (!p) continue;
      ++drawn;
      if (cone_contains(cone, *p)) ++hits;
    }
    if (drawn == 0) {
      zero_denominator = true;
      ratios.push_back(uninformative());
    } else {
      ratios.push_back(proportion_interval(hits, drawn));
    }
  }
  return finish(radii, std::move(ratios), zero_denominator);
}

namespace {

template <typename Run>
ScatterReport probe_directions(const std::vector<Geodesic>& directions, Run&& run) {
  if (directions.empty()) throw ValidationError("densely_scattered_probe: empty direction list");
  ScatterReport out;
  bool all_positive = true;
  bool any_zero = false;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < directions.size(); ++j) {
    RatioReport report = run(j, directions[j]);
    all_positive = all_positive && report.verdict == Verdict::positive;
    any_zero = any_zero || report.verdict == Verdict::zero;
    out.tail_minima.push_back(report.liminf_proxy);
    out.verdicts.push_back(report.verdict);
    if (report.liminf_proxy < worst) {
      worst = report.liminf_proxy;
      out.worst_direction = j;
      out.worst = std::move(report);
    }
  }
  out.verdict = all_positive ? Verdict::positive : (any_zero ? Verdict::zero : Verdict::inconclusive);
  return out;
}

}  // namespace

ScatterReport densely_scattered_probe(const MetricSpace& space, const DiscreteMeasure& mu, const Point& x,
                                      const std::vector<Geodesic>& directions, double k,
                                      const std::vector<double>& radii) {
  return probe_directions(directions, [&](std::size_t, const Geodesic& g) {
    return cone_mass_ratio(space, mu, x, g, k, radii);
  });
}

ScatterReport densely_scattered_probe(const MetricSpace& space, const SampledDensity& mu, const Point& x,
                                      const std::vector<Geodesic>& directions, double k,
                                      const std::vector<double>& radii, std::size_t budget, std::uint64_t seed) {
  return probe_directions(directions, [&](std::size_t j, const Geodesic& g) {
    return cone_mass_ratio(space, mu, x, g, k, radii, budget, derive_seed(seed, 1000 + j));
  });
}

Point sample_uniform_ball(const NormSpec& norm, const Point& center, double r, Rng& rng) {
  check_radius(r);
  if (center.size() != norm.dim) throw ValidationError("sample_uniform_ball: dimension mismatch");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (;;) {
    Point offset(center.size());
    for (Eigen::Index i = 0; i < offset.size(); ++i) offset[i] = r * unit(rng);
    if (mongelab::norm(norm, offset) < r) return center + offset;
  }
}

Point sample_sphere(const NormSpec& norm, const Point& center, double r, Rng& rng) {
  check_radius(r);
  if (center.size() != norm.dim) throw ValidationError("sample_sphere: dimension mismatch");
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Point dir(center.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = gauss(rng);
    const double len = mongelab::norm(norm, dir);
    if (len > 0.0) return center + (r / len) * dir;
  }
}

}  // namespace mongelab
