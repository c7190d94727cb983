#include <doctest.h>

#include <cmath>

#include "phasewave/quadratic.hpp"
#include "test_helpers.hpp"

using namespace phasewave;

TEST_CASE("quadratic roots satisfy vieta for random coefficients") {
  using phasewave::testing::uniform;
  for (int trial = 0; trial < 500; ++trial) {
    const Complex a(uniform(0.2, 3.0), uniform(-1.0, 1.0));
    const Complex b(uniform(-5.0, 5.0), uniform(-5.0, 5.0));
    const Complex c(uniform(-5.0, 5.0), uniform(-5.0, 5.0));
    const auto [r1, r2] = solve_quadratic(a, b, c);
    const double scale = std::max({1.0, std::abs(b / a), std::abs(c / a)});
    CHECK(std::abs(r1 + r2 + b / a) < 1e-12 * scale);
    CHECK(std::abs(r1 * r2 - c / a) < 1e-12 * scale);
    CHECK(std::abs(r1) >= std::abs(r2));
  }
}

TEST_CASE("no cancellation when the roots are far apart") {
  // Roots 1e8 and 1e-8: the naive formula would destroy the small root.
  const auto [big, small] = solve_quadratic(1.0, -(1e8 + 1e-8), 1.0);
  CHECK(big.real() == doctest::Approx(1e8).epsilon(1e-14));
  CHECK(small.real() == doctest::Approx(1e-8).epsilon(1e-14));
}

TEST_CASE("pure imaginary pair") {
  const auto [r1, r2] = solve_quadratic(1.0, 0.0, 9.0);
  CHECK(r1.real() == 0.0);
  CHECK(std::abs(r1.imag()) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(r1 == -r2);
}
