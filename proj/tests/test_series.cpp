#include <doctest.h>

#include <cmath>

#include "gupheat/series.hpp"
#include "oracles/reference.hpp"

using namespace gupheat;

TEST_CASE("power_sum closed forms") {
  CHECK(power_sum(1, 0.0).value == 0.0);
  CHECK(power_sum(1, 0.5).value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(power_sum(3, 0.5).value == doctest::Approx(26.0).epsilon(1e-15));
  CHECK(power_sum(2, 0.5).converged);
  CHECK(power_sum(2, 0.5).terms_used == 0);
  CHECK_THROWS_AS(power_sum(1, 1.0), DomainError);
  CHECK_THROWS_AS(power_sum(1, -0.1), DomainError);
  CHECK_THROWS_AS(power_sum(4, 0.1), DomainError);
}

// The truncation oracle stops once a term drops under tol times the partial
// sum, leaving a tail of roughly tol * x / (1 - x). At x = 0.99 a tol of 1e-14
// would leave ~1e-12 behind, so the oracle runs at 1e-16.
TEST_CASE("closed forms agree with truncated sums and the long double reference") {
  for (int p = 1; p <= 3; ++p) {
    for (int i = 1; i <= 99; ++i) {
      const double x = 0.01 * i;
      const double closed = power_sum(p, x).value;
      const auto trunc = truncated_sum(
          [&](long long j) { return std::pow(static_cast<double>(j), p) * std::pow(x, static_cast<double>(j)); },
          1e-16, 1'000'000);
      CAPTURE(p);
      CAPTURE(x);
      REQUIRE(trunc.converged);
      CHECK(std::abs(closed - trunc.value) / closed < 1e-12);
      const double exact = static_cast<double>(ref::power_sum(p, x));
      CHECK(std::abs(closed - exact) / exact < 1e-12);
    }
  }
}

TEST_CASE("the default truncation tolerance leaves a tail bounded by tol / (1 - x)") {
  for (int p = 1; p <= 3; ++p) {
    for (double x : {0.01, 0.1, 0.5, 0.9, 0.99}) {
      const auto t = truncated_sum(
          [&](long long j) { return std::pow(static_cast<double>(j), p) * std::pow(x, static_cast<double>(j)); });
      const double closed = power_sum(p, x).value;
      CHECK(t.converged);
      CHECK(std::abs(closed - t.value) / closed < 2e-14 / (1.0 - x));
    }
  }
}

TEST_CASE("power sums in long double") {
  const long double v = power_sum(3, 0.5L).value;
  CHECK(std::fabs(v - 26.0L) < 1e-16L);
}

TEST_CASE("truncated_sum edge cases") {
  const auto geo = truncated_sum([](long long j) { return j * std::pow(0.5, static_cast<double>(j)); });
  CHECK(geo.converged);
  CHECK(geo.value == doctest::Approx(2.0).epsilon(1e-13));

  const auto div = truncated_sum([](long long j) { return static_cast<double>(j * j); }, 1e-14, 100);
  CHECK_FALSE(div.converged);
  CHECK(div.terms_used == 100);
  CHECK(div.value == 338350.0);

  const auto zero = truncated_sum([](long long) { return 0.0; });
  CHECK(zero.converged);
  CHECK(zero.value == 0.0);

  CHECK_THROWS_AS(truncated_sum([](long long) { return 1.0; }, 0.0), DomainError);
  CHECK_THROWS_AS(truncated_sum([](long long) { return 1.0; }, 1e-14, 0), DomainError);
}

TEST_CASE("einstein_inner_sum") {
  const double d50 = einstein_inner_sum(50.0);
  CHECK(d50 < 0.0);
  CHECK(d50 == doctest::Approx((2.0 / 50.0 - 1.0) * std::exp(-50.0)).epsilon(1e-12));

  const double d1 = einstein_inner_sum(1.0);
  const double want = static_cast<double>(
      ref::exp_series([](ref::real j) { return (2.0L - j) * j * j; }, 1.0L));
  CHECK(d1 == doctest::Approx(want).epsilon(1e-13));

  const double small = einstein_inner_sum(0.01);
  CHECK(small < 0.0);
  CHECK(small == doctest::Approx(-2.0 / std::pow(0.01, 4)).epsilon(0.01));

  CHECK_THROWS_AS(einstein_inner_sum(0.0), DomainError);
  CHECK_THROWS_AS(einstein_inner_sum(-1.0), DomainError);
  CHECK_THROWS_AS(einstein_inner_sum(1e-7), DomainError);
}

TEST_CASE("einstein_inner_sum is negative on [0.01, 100]") {
  for (int i = 0; i <= 400; ++i) {
    const double delta = std::pow(10.0, -2.0 + 4.0 * i / 400.0);
    CAPTURE(delta);
    CHECK(einstein_inner_sum(delta) < 0.0);
  }
}

TEST_CASE("debye_inner_sum") {
  const double want = static_cast<double>(
      ref::exp_series([](ref::real j) { return (2.0L - j) * j * j; }, 1.0L));
  CHECK(debye_inner_sum(1.0) == doctest::Approx(want).epsilon(1e-13));

  const double y = 1e-3;
  CHECK(debye_inner_sum(y) == doctest::Approx(-2.0 / (y * y * y)).epsilon(1e-3));
  CHECK(debye_inner_sum(100.0) == doctest::Approx(-98.0 * std::exp(-100.0)).epsilon(1e-12));

  for (int i = 1; i <= 100; ++i) {
    const double yy = 1e-4 * i;
    CAPTURE(yy);
    CHECK(std::abs(std::pow(yy, 5) * debye_inner_sum(yy)) < 3.0 * yy * yy);
  }
  CHECK_THROWS_AS(debye_inner_sum(0.0), DomainError);
}
