#pragma once

#include <cmath>
#include <stdexcept>

namespace lamespiral {
namespace curves {

/// One family of the exponent-parametrized curves: the sinusoidal spiral
/// r^n = cos(n theta), the Lame curve x^{2n} + y^{2n} = 1, and the policle
/// r^4 = n sin^2(n theta) / (1 - cos^{2n}(n theta)).
///
/// n may be any positive real; features that need the full closed curve
/// (multi-leaf assembly, global symmetry) additionally require integer_n.
struct CurveFamily {
    double n;
    bool integer_n;

    explicit CurveFamily(double exponent) : n(exponent) {
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::domain_error("CurveFamily: exponent n must be a positive real");
        integer_n = (n == std::round(n));
    }
};

struct PolarPoint {
    double r = 0.0;      // radius, >= 0
    double theta = 0.0;  // radians
};

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

/// |x/a|^alpha + |y/b|^alpha = 1 with positive real exponent and semi-axes.
struct Superellipse {
    double alpha_exp;
    double a;
    double b;

    Superellipse(double alpha_exp_, double a_, double b_)
        : alpha_exp(alpha_exp_), a(a_), b(b_) {
        if (!(alpha_exp > 0.0) || !(a > 0.0) || !(b > 0.0))
            throw std::domain_error("Superellipse: exponent and semi-axes must be positive");
    }
};

enum class CurveKind { Spiral, Lame, Policle };

/// Spiral radius cos(n theta)^{1/n}. Throws std::domain_error between leaves
/// (cos(n theta) < 0); a hard error rather than NaN so bad angles cannot
/// poison downstream quadrature.
double spiral_radius(const CurveFamily& fam, double theta);

/// Principal-leaf inverse: theta = arccos(r^n)/n in [0, pi/(2n)] for r in [0,1].
double spiral_theta_from_radius(const CurveFamily& fam, double r);

/// |x|^{2n} + |y|^{2n} - 1 (even powers, so any quadrant and real n work).
double lame_implicit(const CurveFamily& fam, const PlanePoint& p);

/// Polar radius of the Lame curve: (cos^{2n} + sin^{2n})^{-1/(2n)}.
/// Ranges over [1, 2^{1/2 - 1/(2n)}].
double lame_polar_radius(const CurveFamily& fam, double theta);

/// First-quadrant parametrization (cos^{1/n}(nt), sin^{1/n}(nt)), t in [0, pi/(2n)].
PlanePoint lame_param_point(const CurveFamily& fam, double t);

/// Policle radius, the positive fourth root of n sin^2(n theta)/(1 - cos^{2n}(n theta)).
/// The 0/0 points theta = k pi/n are removable; the limit value 1 is returned there.
double policle_radius(const CurveFamily& fam, double theta);

/// Point of the selected curve on the ray at angle theta.
PolarPoint radial_projection(double theta, CurveKind target, const CurveFamily& fam);

namespace detail {
// n sin^2(n theta) / (1 - cos^{2n}(n theta)), evaluated stably everywhere.
// Shared by policle_radius and the policle sector-area integrand (= r^4).
double policle_fourth_power(const CurveFamily& fam, double theta);
}  // namespace detail

}  // namespace curves
}  // namespace lamespiral
