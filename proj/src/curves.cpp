#include "lamespiral/curves.hpp"

#include <algorithm>
#include <cmath>

namespace lamespiral {
namespace curves {

namespace {
// Tolerance band for "on the leaf boundary": cos(n theta) lands a few ulps
// negative when theta is mathematically a leaf tip.
constexpr double kBoundarySlack = 1e-12;
}  // namespace

double spiral_radius(const CurveFamily& fam, double theta) {
    double c = std::cos(fam.n * theta);
    if (c < 0.0) {
        if (c < -kBoundarySlack)
            throw std::domain_error("spiral_radius: cos(n*theta) < 0, angle lies between leaves");
        c = 0.0;
    }
    return std::pow(c, 1.0 / fam.n);
}

double spiral_theta_from_radius(const CurveFamily& fam, double r) {
    if (!(r >= 0.0) || r > 1.0)
        throw std::domain_error("spiral_theta_from_radius: radius must lie in [0, 1]");
    const double rn = std::min(std::pow(r, fam.n), 1.0);
    return std::acos(rn) / fam.n;
}

double lame_implicit(const CurveFamily& fam, const PlanePoint& p) {
    const double two_n = 2.0 * fam.n;
    return std::pow(std::fabs(p.x), two_n) + std::pow(std::fabs(p.y), two_n) - 1.0;
}

double lame_polar_radius(const CurveFamily& fam, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double sum = std::pow(c * c, fam.n) + std::pow(s * s, fam.n);
    return std::pow(sum, -1.0 / (2.0 * fam.n));
}

PlanePoint lame_param_point(const CurveFamily& fam, double t) {
    const double t_max = M_PI / (2.0 * fam.n);
    if (t < -kBoundarySlack || t > t_max + kBoundarySlack)
        throw std::domain_error("lame_param_point: parameter outside [0, pi/(2n)]");
    const double c = std::max(std::cos(fam.n * t), 0.0);
    const double s = std::max(std::sin(fam.n * t), 0.0);
    return PlanePoint{std::pow(c, 1.0 / fam.n), std::pow(s, 1.0 / fam.n)};
}

namespace detail {

double policle_fourth_power(const CurveFamily& fam, double theta) {
    const double sn = std::sin(fam.n * theta);
    const double q = sn * sn;
    if (q == 0.0) return 1.0;  // removable 0/0, limit value
    // 1 - cos^{2n} = 1 - (1 - q)^n, kept exact through the cancellation.
    const double den = (q >= 1.0) ? 1.0 : -std::expm1(fam.n * std::log1p(-q));
    return fam.n * q / den;
}

}  // namespace detail

double policle_radius(const CurveFamily& fam, double theta) {
    return std::pow(detail::policle_fourth_power(fam, theta), 0.25);
}

PolarPoint radial_projection(double theta, CurveKind target, const CurveFamily& fam) {
    switch (target) {
        case CurveKind::Spiral:
            return PolarPoint{spiral_radius(fam, theta), theta};
        case CurveKind::Lame:
            return PolarPoint{lame_polar_radius(fam, theta), theta};
        case CurveKind::Policle:
            return PolarPoint{policle_radius(fam, theta), theta};
    }
    throw std::logic_error("radial_projection: unknown curve kind");
}

}  // namespace curves
}  // namespace lamespiral
