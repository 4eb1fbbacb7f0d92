#pragma once

#include "mongelab/core.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mongelab {

enum class NormKind { euclidean, lp, l1, linf };

std::string to_string(NormKind kind);
NormKind norm_kind_from_string(std::string_view name);

struct NormSpec {
  NormKind kind = NormKind::euclidean;
  double p = 2.0;  // only read for NormKind::lp
  int dim = 2;

  static NormSpec euclidean(int dim);
  static NormSpec lp(double p, int dim);
  static NormSpec l1(int dim);
  static NormSpec linf(int dim);

  // Exponent of the norm; +inf for linf.
  double exponent() const;
  // Hoelder conjugate exponent of the dual norm.
  double dual_exponent() const;
  bool strictly_convex() const { return kind == NormKind::euclidean || kind == NormKind::lp; }
  bool differentiable() const { return strictly_convex(); }

  bool operator==(const NormSpec&) const = default;
};

namespace detail {
template <typename Derived>
typename Derived::Scalar lp_value(const Eigen::MatrixBase<Derived>& v, double exponent) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  if (std::isinf(exponent)) return v.cwiseAbs().maxCoeff();
  if (exponent == 1.0) return v.cwiseAbs().sum();
  if (exponent == 2.0) return v.norm();
  // Scale by the max coordinate so large p does not overflow.
  const Scalar scale = v.cwiseAbs().maxCoeff();
  if (scale == Scalar(0)) return Scalar(0);
  Scalar acc(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += pow(abs(v[i]) / scale, exponent);
  return scale * pow(acc, Scalar(1) / exponent);
}
}  // namespace detail

// ||v|| under the given norm.
template <typename Derived>
typename Derived::Scalar norm(const NormSpec& n, const Eigen::MatrixBase<Derived>& v) {
  if (v.size() != n.dim) throw ValidationError("norm: dimension mismatch");
  return detail::lp_value(v, n.exponent());
}

// ||w||_* of a covector under the dual norm.
template <typename Derived>
typename Derived::Scalar dual_norm(const NormSpec& n, const Eigen::MatrixBase<Derived>& w) {
  if (w.size() != n.dim) throw ValidationError("dual_norm: dimension mismatch");
  return detail::lp_value(w, n.dual_exponent());
}

// Thrown by norm_gradient on l1/linf; norm_subgradient() still supplies a
// valid element of the subdifferential.
class NonDifferentiableNorm : public ValidationError {
 public:
  explicit NonDifferentiableNorm(const std::string& what) : ValidationError(what) {}
  bool subgradient_available() const { return true; }
};

// Gradient of g(v) = ||v|| for v != 0 and a C^1 norm:
// component i is sign(v_i)|v_i|^(p-1) / ||v||^(p-1).
template <typename Derived>
VectorX<typename Derived::Scalar> norm_gradient(const NormSpec& n, const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  if (v.size() != n.dim) throw ValidationError("norm_gradient: dimension mismatch");
  if (!n.differentiable())
    throw NonDifferentiableNorm("norm_gradient: " + to_string(n.kind) + " is not differentiable; use norm_subgradient");
  const Scalar len = norm(n, v);
  if (len == Scalar(0)) throw ValidationError("norm_gradient: v = 0 is a kink of the norm");
  if (n.kind == NormKind::euclidean) return v / len;
  const double p = n.p;
  VectorX<Scalar> g(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar ratio = abs(v[i]) / len;
    const Scalar sign = v[i] > 0 ? Scalar(1) : (v[i] < 0 ? Scalar(-1) : Scalar(0));
    g[i] = sign * pow(ratio, p - 1.0);
  }
  return g;
}

// An element of the subdifferential of ||.|| at v (any norm); for C^1 norms
// it coincides with norm_gradient.
Point norm_subgradient(const NormSpec& n, const Point& v);

struct FiniteMetric {
  std::vector<std::string> labels;
  Matrix distances;
};

// Either R^n under a norm, or an explicit finite metric. Construction
// validates symmetry, zero diagonal, nonnegativity and the triangle inequality.
class MetricSpace {
 public:
  explicit MetricSpace(NormSpec norm);
  explicit MetricSpace(FiniteMetric finite);

  bool is_normed() const { return std::holds_alternative<NormSpec>(repr_); }
  const NormSpec& norm() const;
  const FiniteMetric& finite() const;
  // Coordinate dimension; 1 for finite spaces (points carry an index).
  int dim() const;
  std::size_t size() const;  // number of points of a finite space

  double distance(const Point& a, const Point& b) const;
  double distance(std::string_view a, std::string_view b) const;

  std::size_t index_of(std::string_view label) const;
  Point point_of(std::string_view label) const;

  // Open ball membership d(center, p) < r.
  bool in_open_ball(const Point& center, double r, const Point& p) const { return distance(center, p) < r; }
  // Closed ball membership d(center, p) <= r.
  bool in_closed_ball(const Point& center, double r, const Point& p) const { return distance(center, p) <= r; }

  std::string describe() const;

 private:
  std::size_t checked_index(const Point& p) const;
  std::variant<NormSpec, FiniteMetric> repr_;
};

// The 1-vector encoding atom i of a finite space.
Point point_of_index(std::size_t i);

// Plain text matrix: first token n, then n rows of n distances.
FiniteMetric parse_finite_metric(std::string_view text);
FiniteMetric load_finite_metric(const std::string& path);

// Constant-speed affine segment t -> (1-t) a + t b in a normed space.
class Geodesic {
 public:
  Geodesic(NormSpec norm, Point start, Point end);

  Point operator()(double t) const { return (1.0 - t) * start_ + t * end_; }
  const Point& start() const { return start_; }
  const Point& end() const { return end_; }
  const NormSpec& norm_spec() const { return norm_; }
  double length() const { return length_; }

 private:
  NormSpec norm_;
  Point start_;
  Point end_;
  double length_;
};

// Errors on finite spaces, where no interpolation is defined.
Geodesic geodesic(const MetricSpace& space, const Point& a, const Point& b);

// Union over t in [0, 1] of the closed balls of radius t*k around gamma(t).
struct GeodesicCone {
  Geodesic path;
  double k;
};

// `count` evenly spread straight geodesics from x in the plane, each of the
// given length.
std::vector<Geodesic> spread_geodesics(const NormSpec& n, const Point& x, double length, int count);

// min over t in [0,1] of d(p, gamma(t)) - t*k, by ternary search on the convex
// objective; also returns the minimizing t.
struct ConeGap {
  double gap;
  double t;
};
ConeGap cone_gap(const GeodesicCone& cone, const Point& p);
bool cone_contains(const GeodesicCone& cone, const Point& p, double tol = 0.0);

struct DerivativeEstimate {
  std::vector<double> t;
  std::vector<double> quotient;  // (d(gamma(t), z) - d(x, z)) / t
  double smallest_t_value = 0.0;
  bool monotone = false;
  // Two-point Richardson refinement on the two smallest t; only present when
  // the quotient table is monotone. Never a claim about the true limit.
  std::optional<double> richardson;
};

// One-sided difference quotients of t -> d(gamma(t), z) along the canonical
// geodesic x -> y.
DerivativeEstimate directional_metric_derivative(const MetricSpace& space, const Point& x, const Point& y,
                                                 const Point& z, const std::vector<double>& schedule);

std::vector<double> default_derivative_schedule();

}  // namespace mongelab
