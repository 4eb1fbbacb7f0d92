#include "mongelab/spaces.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace mongelab {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::lp: return "lp";
    case NormKind::l1: return "l1";
    case NormKind::linf: return "linf";
  }
  return "unknown";
}

NormKind norm_kind_from_string(std::string_view name) {
  if (name == "euclidean" || name == "l2") return NormKind::euclidean;
  if (name == "lp") return NormKind::lp;
  if (name == "l1") return NormKind::l1;
  if (name == "linf") return NormKind::linf;
  throw ValidationError("unknown norm kind '" + std::string(name) + "'");
}

namespace {
void check_dim(int dim) {
  if (dim < 1) throw ValidationError("norm dimension must be a positive integer");
}
}  // namespace

NormSpec NormSpec::euclidean(int dim) {
  check_dim(dim);
  return {NormKind::euclidean, 2.0, dim};
}

NormSpec NormSpec::lp(double p, int dim) {
  check_dim(dim);
  if (!(p > 1.0) || !std::isfinite(p)) throw ValidationError("lp norm requires finite p > 1");
  return {NormKind::lp, p, dim};
}

NormSpec NormSpec::l1(int dim) {
  check_dim(dim);
  return {NormKind::l1, 1.0, dim};
}

NormSpec NormSpec::linf(int dim) {
  check_dim(dim);
  return {NormKind::linf, std::numeric_limits<double>::infinity(), dim};
}

double NormSpec::exponent() const {
  switch (kind) {
    case NormKind::euclidean: return 2.0;
    case NormKind::lp: return p;
    case NormKind::l1: return 1.0;
    case NormKind::linf: return std::numeric_limits<double>::infinity();
  }
  return 2.0;
}

double NormSpec::dual_exponent() const {
  switch (kind) {
    case NormKind::euclidean: return 2.0;
    case NormKind::lp: return p / (p - 1.0);
    case NormKind::l1: return std::numeric_limits<double>::infinity();
    case NormKind::linf: return 1.0;
  }
  return 2.0;
}

Point norm_subgradient(const NormSpec& n, const Point& v) {
  if (v.size() != n.dim) throw ValidationError("norm_subgradient: dimension mismatch");
  if (v.isZero(0.0)) return Point::Zero(v.size());
  if (n.differentiable()) return norm_gradient(n, v);
  if (n.kind == NormKind::l1) {
    Point g(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) g[i] = v[i] > 0 ? 1.0 : (v[i] < 0 ? -1.0 : 0.0);
    return g;
  }
  // linf: dual vector of the lowest-index maximal coordinate.
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  Point g = Point::Zero(v.size());
  g[arg] = v[arg] > 0 ? 1.0 : -1.0;
  return g;
}

MetricSpace::MetricSpace(NormSpec norm) : repr_(norm) { check_dim(norm.dim); }

MetricSpace::MetricSpace(FiniteMetric finite) {
  const auto n = finite.distances.rows();
  if (n == 0 || finite.distances.cols() != n) throw ValidationError("finite metric: matrix must be square and nonempty");
  if (finite.labels.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) finite.labels.push_back(std::to_string(i));
  }
  if (static_cast<Eigen::Index>(finite.labels.size()) != n) throw ValidationError("finite metric: label count mismatch");
  {
    auto sorted = finite.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("finite metric: duplicate labels");
  }
  const Matrix& d = finite.distances;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) throw ValidationError("finite metric: nonzero diagonal");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0.0) throw ValidationError("finite metric: entries must be finite and nonnegative");
      if (d(i, j) != d(j, i)) throw ValidationError("finite metric: matrix is not symmetric");
      if (i != j && d(i, j) == 0.0) throw ValidationError("finite metric: distinct points at distance 0");
    }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k) + tol::kTriangleMatrix)
          throw ValidationError("finite metric: triangle inequality fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
  repr_ = std::move(finite);
}

const NormSpec& MetricSpace::norm() const {
  if (!is_normed()) throw ValidationError("operation requires a normed space");
  return std::get<NormSpec>(repr_);
}

const FiniteMetric& MetricSpace::finite() const {
  if (is_normed()) throw ValidationError("operation requires a finite metric space");
  return std::get<FiniteMetric>(repr_);
}

int MetricSpace::dim() const { return is_normed() ? norm().dim : 1; }

std::size_t MetricSpace::size() const { return finite().labels.size(); }

std::size_t MetricSpace::checked_index(const Point& p) const {
  if (p.size() != 1) throw ValidationError("finite space points are 1-vectors holding an index");
  const double raw = p[0];
  const auto idx = static_cast<long long>(std::llround(raw));
  if (static_cast<double>(idx) != raw || idx < 0 || static_cast<std::size_t>(idx) >= size())
    throw ValidationError("finite space: index out of range");
  return static_cast<std::size_t>(idx);
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  if (is_normed()) {
    const auto& n = std::get<NormSpec>(repr_);
    if (a.size() != n.dim || b.size() != n.dim) throw ValidationError("distance: dimension mismatch");
    return mongelab::norm(n, a - b);
  }
  return std::get<FiniteMetric>(repr_).distances(checked_index(a), checked_index(b));
}

double MetricSpace::distance(std::string_view a, std::string_view b) const {
  return finite().distances(index_of(a), index_of(b));
}

std::size_t MetricSpace::index_of(std::string_view label) const {
  const auto& labels = finite().labels;
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ValidationError("unknown label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

Point point_of_index(std::size_t i) { return Point::Constant(1, static_cast<double>(i)); }

Point MetricSpace::point_of(std::string_view label) const { return point_of_index(index_of(label)); }

std::string MetricSpace::describe() const {
  if (!is_normed()) return "finite(" + std::to_string(size()) + ")";
  const auto& n = norm();
  std::ostringstream os;
  os << to_string(n.kind);
  if (n.kind == NormKind::lp) os << "(p=" << n.p << ")";
  os << " R^" << n.dim;
  return os.str();
}

FiniteMetric parse_finite_metric(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n) || n <= 0) throw ValidationError("finite metric file: first token must be a positive count");
  FiniteMetric fm;
  fm.distances.resize(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      if (!(in >> fm.distances(i, j))) throw ValidationError("finite metric file: expected " + std::to_string(n * n) + " entries");
  std::string extra;
  if (in >> extra) throw ValidationError("finite metric file: trailing content");
  return fm;
}

FiniteMetric load_finite_metric(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open finite metric file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_finite_metric(buffer.str());
}

Geodesic::Geodesic(NormSpec n, Point start, Point end)
    : norm_(n), start_(std::move(start)), end_(std::move(end)), length_(0.0) {
  if (start_.size() != n.dim || end_.size() != n.dim) throw ValidationError("geodesic: dimension mismatch");
  length_ = mongelab::norm(norm_, end_ - start_);
}

Geodesic geodesic(const MetricSpace& space, const Point& a, const Point& b) {
  if (!space.is_normed()) throw ValidationError("geodesic: finite metric spaces have no interpolation");
  return Geodesic(space.norm(), a, b);
}

std::vector<Geodesic> spread_geodesics(const NormSpec& n, const Point& x, double length, int count) {
  if (n.dim != 2) throw ValidationError("spread_geodesics: planar spaces only");
  if (count < 1 || !(length > 0.0)) throw ValidationError("spread_geodesics: need count >= 1 and length > 0");
  std::vector<Geodesic> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / count;
    Point dir(2);
    dir << std::cos(angle), std::sin(angle);
    dir *= length / norm(n, dir);
    out.emplace_back(n, x, x + dir);
  }
  return out;
}

ConeGap cone_gap(const GeodesicCone& cone, const Point& p) {
  if (!(cone.k > 0.0)) throw ValidationError("cone: size k must be positive");
  const auto& n = cone.path.norm_spec();
  if (p.size() != n.dim) throw ValidationError("cone: dimension mismatch");
  const auto objective = [&](double t) { return norm(n, Point(p - cone.path(t))) - t * cone.k; };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol::kConeSearchT) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) <= objective(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  ConeGap best{objective(0.5 * (lo + hi)), 0.5 * (lo + hi)};
  for (const double t : {0.0, 1.0}) {
    const double g = objective(t);
    if (g < best.gap) best = {g, t};
  }
  return best;
}

bool cone_contains(const GeodesicCone& cone, const Point& p, double tol) {
  if (tol < 0.0) throw ValidationError("cone_contains: tol must be nonnegative");
  return cone_gap(cone, p).gap <= tol;
}

std::vector<double> default_derivative_schedule() { return {1e-3, 1e-4, 1e-5}; }

DerivativeEstimate directional_metric_derivative(const MetricSpace& space, const Point& x, const Point& y,
                                                 const Point& z, const std::vector<double>& schedule) {
  const Geodesic path = geodesic(space, x, y);
  if (!(path.length() > 0.0)) throw ValidationError("directional derivative: x = y");
  if (schedule.empty()) throw ValidationError("directional derivative: empty t schedule");
  const double base = space.distance(x, z);
  DerivativeEstimate est;
  for (const double t : schedule) {
    if (!(t > 0.0) || t > 1.0) throw ValidationError("directional derivative: t must lie in (0, 1]");
    est.t.push_back(t);
    est.quotient.push_back((space.distance(path(t), z) - base) / t);
  }
  const auto smallest = std::min_element(est.t.begin(), est.t.end()) - est.t.begin();
  est.smallest_t_value = est.quotient[smallest];

  // Monotone in t (either direction) when sorted by decreasing t.
  std::vector<std::size_t> order(est.t.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return est.t[a] > est.t[b]; });
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const double prev = est.quotient[order[i - 1]];
    const double cur = est.quotient[order[i]];
    up = up && cur >= prev;
    down = down && cur <= prev;
  }
  est.monotone = order.size() >= 2 && (up || down);
  if (est.monotone) {
    const double t1 = est.t[order[order.size() - 2]];
    const double t2 = est.t[order.back()];
    const double q1 = est.quotient[order[order.size() - 2]];
    const double q2 = est.quotient[order.back()];
    est.richardson = (t1 * q2 - t2 * q1) / (t1 - t2);
  }
  return est;
}

}  // namespace mongelab
