#pragma once

#include <stdexcept>

namespace lamespiral {
namespace specfun {

/// Closed forms of both sides of the fundamental arc-length/area identity
/// for exponent n:
///   spiral_quarter_length = int_0^1 dr / sqrt(1 - r^{2n})
///                         = Gamma(1/2n)^2 / (2^{2-1/n} n Gamma(1/n))
///   lame_quadrant_area    = int_0^1 (1 - x^{2n})^{1/(2n)} dx
///                         = Gamma(1/2n)^2 / (4 n Gamma(1/n))
/// The ratio spiral/area is 2^{1/n} by construction.
struct ClosedFormPair {
    double spiral_quarter_length;
    double lame_quadrant_area;
};

/// Gamma(x) for x in (0, 170], Lanczos approximation (g = 607/128, 15
/// coefficients). Relative error <= 1e-13 across the domain.
/// Throws std::domain_error for x <= 0, std::overflow_error for x > 170.
double gamma(double x);

/// B(x, y) = Gamma(x) Gamma(y) / Gamma(x+y), x, y > 0.
/// Switches to log-gamma differences when x + y > 30.
double beta(double x, double y);

ClosedFormPair closed_forms(double n);

/// varpi_alpha = 2 int_0^1 dr / sqrt(1 - r^alpha): arc length of the
/// principal leaf of the spiral with n = alpha/2. varpi_2 = pi.
double varpi(double alpha_exp);

namespace detail {
// ln Gamma(x), x > 0; same Lanczos core, no overflow cutoff.
double log_gamma(double x);
}  // namespace detail

}  // namespace specfun
}  // namespace lamespiral
