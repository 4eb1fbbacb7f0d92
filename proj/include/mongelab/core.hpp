#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mongelab {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// A point of R^n. Points of a finite metric space are 1-vectors holding the
// atom index.
using Point = VectorX<double>;
using Matrix = MatrixX<double>;

// Every numerical comparison threshold used by the library.
namespace tol {
inline constexpr double kMassFloor = 1e-12;        // plan entries below are dropped
inline constexpr double kMarginal = 1e-9;          // row/column sum agreement
inline constexpr double kWeightSum = 1e-12;        // probability weights sum to one
inline constexpr double kOptimality = 1e-9;        // zero reduced cost / equal cost
inline constexpr double kPivotRelative = 1e-12;    // simplex entering threshold, relative to max |c|
inline constexpr double kCycleDefect = 1e-9;       // c-cyclical monotonicity violation
inline constexpr double kConeSearchT = 1e-10;      // ternary search resolution in t
inline constexpr double kEquidistance = 1e-9;      // |d(x,y) - d(x,z)| for non-branching triples
inline constexpr double kTriangleSlack = 1e-8;     // D >= -d(x,y) - slack
inline constexpr double kRhoPositive = 1e-6;       // rho-hat must exceed this to count as positive
inline constexpr double kZeroRatioUpper = 1e-3;    // ratio upper CI bound for a "zero" verdict
inline constexpr double kCoincident = 1e-12;       // gamma(0) == x, x == y checks
inline constexpr double kTriangleMatrix = 1e-12;   // finite metric triangle inequality
inline constexpr double kBigMFactor = 1e6;         // +inf cost surrogate is this times (max finite + 1)
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed config, dimension mismatch, violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that the numerics cannot handle: infeasible transport
// problem, zero-mass ball, iteration limit.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// splitmix64 finalizer; derives independent task seeds from (base, index).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace mongelab
