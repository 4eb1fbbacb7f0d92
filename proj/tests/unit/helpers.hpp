#pragma once

#include "mongelab/core.hpp"

#include <initializer_list>

namespace testing {

inline mongelab::Point pt(std::initializer_list<double> xs) {
  mongelab::Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const double x : xs) p[i++] = x;
  return p;
}

// Columns are the given points.
inline mongelab::Matrix cols(std::initializer_list<mongelab::Point> ps) {
  mongelab::Matrix m(ps.begin()->size(), static_cast<Eigen::Index>(ps.size()));
  Eigen::Index k = 0;
  for (const auto& p : ps) m.col(k++) = p;
  return m;
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace testing
