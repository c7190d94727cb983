#pragma once

#include <cmath>
#include <complex>
#include <utility>

namespace phasewave {

using Complex = std::complex<double>;

/// Roots of a*x^2 + b*x + c with complex coefficients, largest magnitude
/// first. Uses the q = -(b + sgn * sqrt(disc))/2 formulation so the smaller
/// root comes out of Vieta (c/q) instead of a cancelling subtraction.
inline std::pair<Complex, Complex> solve_quadratic(Complex a, Complex b, Complex c) {
  const Complex disc = b * b - 4.0 * a * c;
  Complex s = std::sqrt(disc);
  // Pick the sqrt branch aligned with b so b + s does not cancel.
  if (std::real(std::conj(b) * s) < 0.0) s = -s;
  const Complex q = -0.5 * (b + s);
  Complex r1, r2;
  if (std::abs(q) > 0.0) {
    r1 = q / a;
    r2 = c / q;
  } else {  // b == 0 and c == 0 up to rounding
    r1 = std::sqrt(-c / a);
    r2 = -r1;
  }
  if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
  return {r1, r2};
}

/// Real-coefficient convenience wrapper; roots still returned as complex.
inline std::pair<Complex, Complex> solve_quadratic(double a, double b, double c) {
  return solve_quadratic(Complex(a, 0.0), Complex(b, 0.0), Complex(c, 0.0));
}

}  // namespace phasewave
