#pragma once

#include <cstddef>
#include <functional>

#include "gupheat/core.hpp"

namespace gupheat {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_subdivisions = 2000;
  // Below this y the Debye integrands switch to their Taylor forms.
  double y_small_threshold = 1e-3;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const QuadratureResult& result, double target);
  const QuadratureResult& result() const { return result_; }

 private:
  QuadratureResult result_;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [a, b].
/// The panel with the largest error estimate is bisected until the summed
/// error drops below max(abs_tol, rel_tol |I|) or max_subdivisions panels
/// exist. Never throws on non-convergence; check `converged`.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& config = {});

/// Same, but throws QuadratureError when the tolerance is not met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& config = {});

}  // namespace gupheat
