#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamespiral/curves.hpp"

namespace lamespiral {
namespace quadrature {

struct QuadratureConfig {
    double target_rel_tol = 1e-12;
    int max_level = 12;        // tanh-sinh refinement cap
    int max_subdivisions = 200;  // adaptive Gauss-Kronrod cap

    void validate() const {
        if (!(target_rel_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: target_rel_tol must be > 0");
        if (max_level < 1 || max_subdivisions < 1)
            throw std::invalid_argument("QuadratureConfig: refinement caps must be >= 1");
    }
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Quadrature failed to reach the requested tolerance within its caps.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrand returned NaN/Inf at a node that matters.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independently computed routes disagree beyond tolerance.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrand for the tanh-sinh rule. Besides the abscissa x it receives the
/// exact offsets from the interval endpoints, dist_a = x - a (>= 0) and
/// dist_b = x - b (<= 0), which stay meaningful when x itself rounds to an
/// endpoint. Integrands with endpoint singularities must use the offsets
/// (e.g. 1 - x^p = -expm1(p * log1p(dist_b)) for b = 1); in double precision
/// the plain f(x) form cannot do better than ~1e-8 on such kernels.
using DeIntegrand = std::function<double(double x, double dist_a, double dist_b)>;

/// Tanh-sinh (double-exponential) rule on (a, b). Handles integrands with
/// algebraic endpoint singularities up to and including (b-x)^{-1/2}.
/// error_estimate is the difference of the last two refinement levels.
IntegralResult integrate_de(const DeIntegrand& f, double a, double b,
                            const QuadratureConfig& cfg = {});

/// Convenience overload for integrands that do not need the endpoint offsets.
IntegralResult integrate_de(const std::function<double(double)>& f, double a, double b,
                            const QuadratureConfig& cfg = {});

/// Adaptive Gauss-Kronrod 7-15 with bisection, for smooth integrands.
IntegralResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                            const QuadratureConfig& cfg = {});

/// Arc length of the sinusoidal spiral between radii r1 <= r2:
/// int_{r1}^{r2} dr / sqrt(1 - r^{2n}).
double spiral_arc_length(const curves::CurveFamily& fam, double r1, double r2,
                         const QuadratureConfig& cfg = {});

/// int_0^1 (1 - x^{2n})^{1/(2n)} dx, the first-quadrant area of the Lame curve.
double lame_quadrant_area(const curves::CurveFamily& fam,
                          const QuadratureConfig& cfg = {});

/// Radial sector area of the Lame curve over [0, alpha], alpha in [0, pi/4]:
/// (1/2) int_0^{tan alpha} dv / (1 + v^{2n})^{1/n}. Other octants by symmetry.
double lame_sector_area(const curves::CurveFamily& fam, double alpha,
                        const QuadratureConfig& cfg = {});

/// Radial sector area of the policle over [0, alpha], alpha in [0, pi/(2n)].
double policle_sector_area(const curves::CurveFamily& fam, double alpha,
                           const QuadratureConfig& cfg = {});

/// Superellipse area 2^{1-2/alpha} varpi_alpha a b. Also evaluates the direct
/// quadrature 4ab int_0^1 (1-u^alpha)^{1/alpha} du and throws ConsistencyError
/// if the two disagree beyond 100x the target tolerance.
double superellipse_area(const curves::Superellipse& se,
                         const QuadratureConfig& cfg = {});

/// Cross-check route for int_0^1 dr/sqrt(1-r^{2n}) via the substitution
/// r = sin^{1/n}(nu): int_0^{pi/(2n)} sin^{1/n}(nu)/sin(nu) du.
double spiral_quarter_length_substituted(const curves::CurveFamily& fam,
                                         const QuadratureConfig& cfg = {});

enum class ProfileKind { SpiralArcLength, LameSectorArea };

struct ProfilePoint {
    double parameter;   // theta (spiral) or alpha (Lame sector)
    double cumulative;  // arc length from theta=0 / sector area from alpha=0
};

/// Strictly monotone cumulative table over one half-leaf (spiral arc length,
/// theta in [0, pi/(2n)]) or one octant (Lame sector area, alpha in [0, pi/4]).
/// Chebyshev-spaced parameters, clustered at the singular end. samples >= 16.
std::vector<ProfilePoint> cumulative_profile(ProfileKind kind,
                                             const curves::CurveFamily& fam,
                                             int samples,
                                             const QuadratureConfig& cfg = {});

}  // namespace quadrature
}  // namespace lamespiral
