#pragma once

#include <span>

#include <Eigen/Core>

#include "gupheat/core.hpp"

namespace gupheat {

/// Ordinary least-squares slope of y against x.
inline double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("fit_slope needs two equally sized series with >= 2 points");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::ArrayXd> xs(x.data(), n);
  const Eigen::Map<const Eigen::ArrayXd> ys(y.data(), n);
  const Eigen::ArrayXd dx = xs - xs.mean();
  const double sxx = dx.square().sum();
  if (!(sxx > 0.0)) throw DomainError("fit_slope needs at least two distinct x values");
  return (dx * (ys - ys.mean())).sum() / sxx;
}

}  // namespace gupheat
