#pragma once

// Power series sum_{j>=1} j^p x^j and the two correction sums built from them.
// Every kernel is templated on the scalar so tests can rerun them in long double.

#include <cmath>
#include <cstddef>
#include <string>

#include "gupheat/core.hpp"

namespace gupheat {

template <typename Scalar>
struct SeriesValue {
  Scalar value{0};
  std::size_t terms_used = 0;  // 0 for closed-form evaluation
  bool converged = true;
};

/// Smallest reduced argument (delta or y) accepted by the exponential-argument
/// sums; below it the closed forms lose too much to cancellation.
inline constexpr double kMinSeriesArgument = 1e-6;

namespace detail {

// Closed forms in terms of x and one_minus_x = 1 - x, so callers with
// x = exp(-delta) can supply 1 - x = -expm1(-delta) without cancellation.
template <typename Scalar>
Scalar power_sum_closed(int p, Scalar x, Scalar one_minus_x) {
  const Scalar d = one_minus_x;
  switch (p) {
    case 1: return x / (d * d);
    case 2: return x * (Scalar(1) + x) / (d * d * d);
    case 3: return x * (Scalar(1) + Scalar(4) * x + x * x) / (d * d * d * d);
    default: throw DomainError("power_sum supports p in {1, 2, 3}, got " + std::to_string(p));
  }
}

template <typename Scalar>
void require_series_argument(Scalar arg, const char* name) {
  using std::isfinite;
  if (!(arg >= Scalar(kMinSeriesArgument)) || !isfinite(arg)) {
    throw DomainError(std::string(name) + " must be finite and >= 1e-6");
  }
}

}  // namespace detail

/// sum_{j>=1} j^p x^j for p in {1, 2, 3} and 0 <= x < 1.
template <typename Scalar>
SeriesValue<Scalar> power_sum(int p, Scalar x) {
  if (!(x >= Scalar(0)) || !(x < Scalar(1))) {
    throw DomainError("power_sum requires 0 <= x < 1");
  }
  return {detail::power_sum_closed(p, x, Scalar(1) - x), 0, true};
}

/// power_sum(p, exp(-arg)) evaluated without forming 1 - exp(-arg) directly.
template <typename Scalar>
Scalar power_sum_exp(int p, Scalar arg) {
  using std::exp;
  using std::expm1;
  if (!(arg > Scalar(0))) throw DomainError("power_sum_exp requires a positive argument");
  return detail::power_sum_closed(p, exp(-arg), -expm1(-arg));
}

/// Sums term(1), term(2), ... until |term(j)| < tol * |partial sum| (or < tol
/// when the partial sum is still zero). Hitting max_terms leaves converged false.
template <typename Scalar = double, typename Term>
SeriesValue<Scalar> truncated_sum(Term&& term, Scalar tol = Scalar(1e-14),
                                  std::size_t max_terms = 1'000'000) {
  using std::abs;
  if (!(tol > Scalar(0))) throw DomainError("truncated_sum requires tol > 0");
  if (max_terms < 1) throw DomainError("truncated_sum requires max_terms >= 1");

  SeriesValue<Scalar> out{Scalar(0), 0, false};
  for (std::size_t j = 1; j <= max_terms; ++j) {
    const Scalar t = static_cast<Scalar>(term(static_cast<long long>(j)));
    out.value += t;
    out.terms_used = j;
    const Scalar scale = out.value == Scalar(0) ? Scalar(1) : abs(out.value);
    if (abs(t) < tol * scale) {
      out.converged = true;
      break;
    }
  }
  return out;
}

/// sum_j (2/delta - j) j^2 exp(-j delta), the series inside the Einstein GUP
/// heat-capacity correction.
template <typename Scalar>
Scalar einstein_inner_sum(Scalar delta) {
  detail::require_series_argument(delta, "delta");
  return Scalar(2) / delta * power_sum_exp(2, delta) - power_sum_exp(3, delta);
}

/// sum_j (2 - y j) j^2 exp(-j y), the series inside the Debye GUP correction.
template <typename Scalar>
Scalar debye_inner_sum(Scalar y) {
  detail::require_series_argument(y, "y");
  return Scalar(2) * power_sum_exp(2, y) - y * power_sum_exp(3, y);
}

}  // namespace gupheat
