#include "mongelab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mongelab {

namespace {

constexpr std::uint64_t kAdversaryStream = 5000;
constexpr double kInsideShrink = 1.0 - 1e-9;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive");
}

TwistReport zero_report(TwistMode mode, const std::vector<double>& s, std::string why) {
  TwistReport report;
  report.mode = mode;
  report.s = s;
  report.ratios.assign(s.size(), Estimate::exact_value(0.0));
  report.verdict = classify_tail(report.ratios, &report.liminf_proxy);
  report.degenerate = std::move(why);
  return report;
}

// Draws x' from ref | B_s(center) and tallies a membership predicate, one
// stream per scale.
template <typename Member>
std::vector<Estimate> tally(const MetricSpace& space, const SampledDensity& ref, const Point& center,
                            const TwistConfig& cfg, Member&& member) {
  std::vector<Estimate> out;
  for (std::size_t idx = 0; idx < cfg.s_schedule.size(); ++idx) {
    Rng rng(derive_seed(cfg.seed, idx));
    std::size_t drawn = 0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < cfg.outer_budget; ++i) {
      const auto p = ref.sample_in_ball(space.norm(), center, cfg.s_schedule[idx], rng, 1000);
      if (!p) continue;
      ++drawn;
      if (member(*p)) ++hits;
    }
    if (drawn == 0)
      throw NumericalError("no reference samples in B_s at s = " + std::to_string(cfg.s_schedule[idx]));
    out.push_back(proportion_interval(hits, drawn));
  }
  return out;
}

TwistReport make_report(TwistMode mode, const std::vector<double>& s, std::vector<Estimate> ratios) {
  TwistReport report;
  report.mode = mode;
  report.s = s;
  report.ratios = std::move(ratios);
  report.verdict = classify_tail(report.ratios, &report.liminf_proxy);
  return report;
}

// Grid of m^n points over the cube around center, clipped to the closed ball
// for the Euclidean norm. Returns the covering radius.
double grid_net(const NormSpec& norm, const Point& center, double r, std::size_t per_axis, std::vector<Point>& out) {
  const auto n = center.size();
  const double spacing = 2.0 * r / static_cast<double>(per_axis - 1);
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  for (;;) {
    Point p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = center[i] - r + spacing * static_cast<double>(digit[i]);
    if (norm.kind == NormKind::euclidean) {
      const double len = (p - center).norm();
      if (len > r) p = center + (r / len) * (p - center);
    }
    out.push_back(std::move(p));
    Eigen::Index i = 0;
    while (i < n && ++digit[i] == per_axis) digit[i++] = 0;
    if (i == n) break;
  }
  return mongelab::norm(norm, Point(Point::Constant(n, 0.5 * spacing)));
}

}  // namespace

void TwistConfig::validate() const {
  check_positive(eps, "twist config: eps");
  if (s_schedule.empty()) throw ValidationError("twist config: empty s schedule");
  for (std::size_t i = 0; i < s_schedule.size(); ++i) {
    check_positive(s_schedule[i], "twist config: s");
    if (i > 0 && !(s_schedule[i] < s_schedule[i - 1]))
      throw ValidationError("twist config: s schedule must be strictly decreasing");
  }
  if (r1) check_positive(*r1, "twist config: r1");
  if (r2) check_positive(*r2, "twist config: r2");
  if (inner_budget < 1 || outer_budget < 1) throw ValidationError("twist config: budgets must be >= 1");
  if (!(margin_lipschitz >= 0.0)) throw ValidationError("twist config: margin_lipschitz must be nonnegative");
}

std::string to_string(TwistMode m) {
  switch (m) {
    case TwistMode::exact: return "exact";
    case TwistMode::optimistic: return "optimistic";
    case TwistMode::conservative: return "conservative";
  }
  return "exact";
}

bool pmtc_member(const MetricSpace& space, const CostFunction& c, const Point& x, const Point& y, const Point& z,
                 double eps, const Point& xp) {
  return c(xp, y) + c(x, z) < c(x, y) + c(xp, z) - eps * space.distance(xp, x);
}

TwistReport pmtc_ratio(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c, const Point& x,
                       const Point& y, const Point& z, const TwistConfig& cfg) {
  cfg.validate();
  if (space.distance(y, z) <= tol::kCoincident)
    return zero_report(TwistMode::exact, cfg.s_schedule, "y = z: the defining inequality is unsatisfiable");
  const double cxy = c(x, y);
  const double cxz = c(x, z);
  return make_report(TwistMode::exact, cfg.s_schedule, tally(space, ref, x, cfg, [&](const Point& xp) {
                       return c(xp, y) + cxz < cxy + c(xp, z) - cfg.eps * space.distance(xp, x);
                     }));
}

LmtcAdversaries::LmtcAdversaries(const MetricSpace& space, const CostFunction& c, Point xbar, Point y, Point z,
                                 double r, std::size_t budget, std::uint64_t seed, double lipschitz)
    : space_(space), c_(c), xbar_(std::move(xbar)), lipschitz_(lipschitz) {
  check_positive(r, "lmtc: adversary radius");
  if (budget < 1) throw ValidationError("lmtc: inner budget must be >= 1");
  const NormSpec& norm = space.norm();
  Rng rng(seed);
  auto draw = [&](const Point& centre, int kind) -> Point {
    switch (kind) {
      case 0: return centre;
      case 1: return sample_sphere(norm, centre, r * kInsideShrink, rng);
      default: return sample_uniform_ball(norm, centre, r, rng);
    }
  };
  // Pair kinds cycle through (boundary, boundary), (boundary, interior),
  // (interior, boundary), (interior, interior) after the centre pair.
  for (std::size_t k = 0; k < budget; ++k) {
    const int ky = k == 0 ? 0 : 1 + static_cast<int>(((k - 1) / 2) % 2);
    const int kz = k == 0 ? 0 : 1 + static_cast<int>((k - 1) % 2);
    sampled_y_.push_back(draw(y, ky));
    sampled_z_.push_back(draw(z, kz));
  }
  for (std::size_t k = 0; k < budget; ++k) {
    sampled_cy_.push_back(c_(xbar_, sampled_y_[k]));
    sampled_cz_.push_back(c_(xbar_, sampled_z_[k]));
  }
  const double n = static_cast<double>(y.size());
  const auto per_axis = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(budget), 1.0 / (2.0 * n)) + 1e-9)));
  covering_ = grid_net(norm, y, r, per_axis, net_y_);
  grid_net(norm, z, r, per_axis, net_z_);
  for (const Point& p : net_y_) net_cy_.push_back(c_(xbar_, p));
  for (const Point& p : net_z_) net_cz_.push_back(c_(xbar_, p));
}

bool LmtcAdversaries::holds(const Point& xp, const Point& yp, double c_xbar_yp, const Point& zp, double c_xbar_zp,
                            double slack) const {
  return c_(xp, yp) + c_xbar_zp + slack < c_xbar_yp + c_(xp, zp);
}

bool LmtcAdversaries::optimistic_member(const Point& xp) const {
  for (std::size_t k = 0; k < sampled_y_.size(); ++k)
    if (!holds(xp, sampled_y_[k], sampled_cy_[k], sampled_z_[k], sampled_cz_[k], 0.0)) return false;
  return true;
}

bool LmtcAdversaries::conservative_member(const Point& xp) const {
  if (!optimistic_member(xp)) return false;
  const double slack = lipschitz_ * space_.distance(xp, xbar_) * covering_;
  // The four-point difference separates into a y' part and a z' part.
  double worst_y = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < net_y_.size(); ++a) worst_y = std::max(worst_y, c_(xp, net_y_[a]) - net_cy_[a]);
  double worst_z = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < net_z_.size(); ++b) worst_z = std::max(worst_z, net_cz_[b] - c_(xp, net_z_[b]));
  return worst_y + worst_z + slack < 0.0;
}

LmtcReport lmtc_ratio(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c, const Point& xbar,
                      const Point& y, const Point& z, const TwistConfig& cfg) {
  cfg.validate();
  const double dyz = space.distance(y, z);
  if (dyz <= tol::kCoincident) throw ValidationError("lmtc: requires y != z");
  LmtcReport report;
  report.r2 = cfg.adversary_radius(dyz);
  if (dyz <= 2.0 * report.r2) {
    const std::string why = "overlapping balls: y' = z' makes the strict inequality impossible";
    report.optimistic = zero_report(TwistMode::optimistic, cfg.s_schedule, why);
    report.conservative = zero_report(TwistMode::conservative, cfg.s_schedule, why);
    return report;
  }
  const LmtcAdversaries adversaries(space, c, xbar, y, z, report.r2, cfg.inner_budget,
                                    derive_seed(cfg.seed, kAdversaryStream), cfg.margin_lipschitz);
  report.sampled_pairs = adversaries.sampled_pairs();
  report.net_pairs = adversaries.net_pairs();
  report.covering_radius = adversaries.covering_radius();

  // Both modes see the same x' draws, so the bracket holds samplewise.
  std::vector<Estimate> optimistic;
  std::vector<Estimate> conservative;
  for (std::size_t idx = 0; idx < cfg.s_schedule.size(); ++idx) {
    Rng rng(derive_seed(cfg.seed, idx));
    std::size_t drawn = 0, opt_hits = 0, cons_hits = 0;
    for (std::size_t i = 0; i < cfg.outer_budget; ++i) {
      const auto p = ref.sample_in_ball(space.norm(), xbar, cfg.s_schedule[idx], rng, 1000);
      if (!p) continue;
      ++drawn;
      if (!adversaries.optimistic_member(*p)) continue;
      ++opt_hits;
      if (adversaries.conservative_member(*p)) ++cons_hits;
    }
    if (drawn == 0)
      throw NumericalError("no reference samples in B_s at s = " + std::to_string(cfg.s_schedule[idx]));
    optimistic.push_back(proportion_interval(opt_hits, drawn));
    conservative.push_back(proportion_interval(cons_hits, drawn));
  }
  report.optimistic = make_report(TwistMode::optimistic, cfg.s_schedule, std::move(optimistic));
  report.conservative = make_report(TwistMode::conservative, cfg.s_schedule, std::move(conservative));
  return report;
}

EpsilonScan pmtc_epsilon_scan(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c,
                              const Point& x, const Point& y, const Point& z, const TwistConfig& cfg) {
  const double dyz = space.distance(y, z);
  EpsilonScan scan;
  for (int k = 1; k <= 8; ++k) {
    TwistConfig local = cfg;
    local.eps = std::ldexp(dyz, -k);
    if (!(local.eps > 0.0)) local.eps = std::ldexp(1.0, -k);
    scan.eps.push_back(local.eps);
    scan.reports.push_back(pmtc_ratio(space, ref, c, x, y, z, local));
    if (scan.reports.back().verdict == Verdict::positive && !scan.largest_positive)
      scan.largest_positive = local.eps;
  }
  return scan;
}

RatioVariation pmtc_variation(const MetricSpace& space, const SampledDensity& ref, const CostFunction& c,
                              const Point& x, const Point& y, const Point& z, double h, const TwistConfig& cfg) {
  check_positive(h, "pmtc_variation: h");
  RatioVariation out;
  out.points.push_back(x);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (const double sign : {-1.0, 1.0}) {
      Point p = x;
      p[i] += sign * h;
      out.points.push_back(std::move(p));
    }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Point& p : out.points) {
    const double v = pmtc_ratio(space, ref, c, p, y, z, cfg).liminf_proxy;
    out.liminf_proxies.push_back(v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.max_difference = hi - lo;
  return out;
}

C1Report c1_probe(const MetricSpace& space, const CostFunction& c, const Point& x, const Point& y, double eps,
                  double r1, double r2, double delta, std::size_t budget, std::uint64_t seed) {
  check_positive(r1, "c1_probe: r1");
  check_positive(r2, "c1_probe: r2");
  check_positive(delta, "c1_probe: delta");
  if (!(eps >= 0.0)) throw ValidationError("c1_probe: eps must be nonnegative");
  if (budget < 1) throw ValidationError("c1_probe: budget must be >= 1");
  const NormSpec& norm = space.norm();
  Rng rng(seed);
  C1Report report;
  report.sup = -1.0;
  for (std::size_t k = 0; k < budget; ++k) {
    const Point xbar = sample_uniform_ball(norm, x, r1, rng);
    const Point ybar = sample_uniform_ball(norm, y, r2, rng);
    const Point xp = sample_uniform_ball(norm, xbar, delta, rng);
    const double d = space.distance(xp, xbar);
    if (!(d > 0.0)) continue;
    const double q = std::abs((c(xp, ybar) - c(xbar, ybar)) - (c(xp, y) - c(xbar, y))) / d;
    ++report.samples;
    if (q > report.sup) {
      report.sup = q;
      report.xbar = xbar;
      report.ybar = ybar;
      report.xp = xp;
    }
  }
  if (report.samples == 0) throw NumericalError("c1_probe: no usable samples");
  report.pass = report.sup < eps;
  return report;
}

NonBranchingReport nonbranching_scan(const MetricSpace& space, const Point& x, const Point& y, const Point& z,
                                     double r, const std::vector<double>& t_schedule, std::size_t triples,
                                     std::uint64_t seed) {
  check_positive(r, "nonbranching_scan: r");
  if (triples < 1) throw ValidationError("nonbranching_scan: need at least one triple");
  if (space.distance(y, z) <= tol::kCoincident) throw ValidationError("nonbranching_scan: requires y != z");
  if (std::abs(space.distance(x, y) - space.distance(x, z)) > tol::kEquidistance)
    throw ValidationError("nonbranching_scan: requires d(x, y) = d(x, z)");
  const NormSpec& norm = space.norm();
  Rng rng(seed);
  NonBranchingReport report;
  double rho = std::numeric_limits<double>::infinity();
  while (report.triples.size() < triples) {
    NonBranchingTriple t;
    t.x = sample_uniform_ball(norm, x, r, rng);
    t.y = sample_uniform_ball(norm, y, r, rng);
    Point zp = sample_uniform_ball(norm, z, r, rng);
    t.d = space.distance(t.x, t.y);
    const double dz = space.distance(t.x, zp);
    if (!(t.d > 0.0) || !(dz > 0.0)) continue;
    t.z_scale = t.d / dz;
    t.z = t.x + t.z_scale * (zp - t.x);
    t.z_left_ball = !space.in_open_ball(z, r, t.z);
    const DerivativeEstimate est = directional_metric_derivative(space, t.x, t.y, t.z, t_schedule);
    t.derivative = est.smallest_t_value;
    const double local = 1.0 + t.derivative / t.d;
    if (local < rho) {
      rho = local;
      report.worst = report.triples.size();
    }
    report.triples.push_back(std::move(t));
  }
  report.rho_hat = std::min(1.0, rho);
  report.positive = report.rho_hat > tol::kRhoPositive;
  return report;
}

NormedCertificate normed_nonbranching_certificate(const NormSpec& n, const Point& x, const Point& y, const Point& z) {
  if (!n.strictly_convex() || !n.differentiable())
    throw ValidationError("certificate: requires a strictly convex C^1 norm, got " + to_string(n.kind));
  const Point xz = x - z;
  const Point yx = y - x;
  const double dxy = norm(n, yx);
  const double dxz = norm(n, xz);
  if (!(dxz > tol::kCoincident)) throw ValidationError("certificate: requires x != z");
  if (!(dxy > tol::kCoincident)) throw ValidationError("certificate: requires x != y");
  if (!(norm(n, Point(y - z)) > tol::kCoincident)) throw ValidationError("certificate: requires y != z");
  const Point grad = norm_gradient(n, xz);
  NormedCertificate out;
  out.value = std::clamp(grad.dot(yx) / dxy, -1.0, 1.0);
  out.gradient_dual = dual_norm(n, grad);
  out.equidistant = std::abs(dxy - dxz) <= tol::kEquidistance;
  return out;
}

double certificate_local_rho(const NormSpec& n, const Point& x, const Point& y, const Point& z, double r,
                             std::size_t samples, std::uint64_t seed) {
  check_positive(r, "certificate_local_rho: r");
  Rng rng(seed);
  double worst = normed_nonbranching_certificate(n, x, y, z).value;
  for (std::size_t k = 0; k < samples; ++k) {
    const Point xp = sample_uniform_ball(n, x, r, rng);
    const Point yp = sample_uniform_ball(n, y, r, rng);
    const Point zp = sample_uniform_ball(n, z, r, rng);
    const double dy = norm(n, Point(yp - xp));
    const double dz = norm(n, Point(zp - xp));
    if (!(dy > 0.0) || !(dz > 0.0)) continue;
    const Point zproj = xp + (dy / dz) * (zp - xp);
    worst = std::min(worst, normed_nonbranching_certificate(n, xp, yp, zproj).value);
  }
  return 1.0 + worst;
}

}  // namespace mongelab
