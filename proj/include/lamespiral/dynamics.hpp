#pragma once

#include <cstdint>
#include <vector>

#include "lamespiral/curves.hpp"
#include "lamespiral/quadrature.hpp"

namespace lamespiral {
namespace dynamics {

/// Physical parameters of the orbiting particle. For motion on the Lame
/// curve the force constant derives as C = (2n-1) m h^2.
struct ForceParams {
    double mass;
    double angular_momentum;  // specific angular momentum h
    double force_constant;

    ForceParams(double m, double h, double c)
        : mass(m), angular_momentum(h), force_constant(c) {
        if (!(m > 0.0) || !(h > 0.0) || !(c > 0.0))
            throw std::domain_error("ForceParams: mass, angular momentum and force constant must be positive");
    }

    static ForceParams for_lame_orbit(const curves::CurveFamily& fam, double m, double h) {
        return ForceParams(m, h, (2.0 * fam.n - 1.0) * m * h * h);
    }
};

struct MotionState {
    double time = 0.0;
    curves::PlanePoint position;
    double vx = 0.0;
    double vy = 0.0;
};

/// One sample of the paired motions: keplerian on the Lame curve, uniform on
/// the spiral. traversed_length = 2^{1+1/n} swept_area up to solver tolerance.
struct DualFrame {
    double time = 0.0;
    curves::PolarPoint lame_point;
    curves::PolarPoint spiral_point;
    double swept_area = 0.0;        // Lame sector area since t = 0
    double traversed_length = 0.0;  // spiral arc length since t = 0
};

/// (P_i, Q_j): octant of the Lame curve (1..8) paired with half-leaf of the
/// spiral (1..2n).
struct SchedulePair {
    int octant_index;
    int halfleaf_index;
};

/// Newtonian simulation aborted (invariant breach or step-size underflow).
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Keplerian angle-vs-time solver on the Lame curve: theta(t) such that the
/// swept sector area equals (h/2) t. One octant profile (256 samples, exact
/// slopes dA/dtheta = r^2/2) inverted by monotone Hermite interpolation plus
/// safeguarded Newton; the full curve is assembled by dihedral symmetry.
class KeplerLameMotion {
public:
    KeplerLameMotion(const curves::CurveFamily& fam, const ForceParams& fp,
                     const quadrature::QuadratureConfig& cfg = {});

    double theta_at(double t) const;
    double octant_area() const { return octant_area_; }
    double octant_time() const;  // 2 A_oct / h
    const curves::CurveFamily& family() const { return fam_; }

private:
    double invert_octant(double area_target) const;  // [0, A_oct] -> [0, pi/4]

    curves::CurveFamily fam_;
    ForceParams fp_;
    std::vector<double> alpha_, area_, slope_;
    double octant_area_;
};

/// Uniform-speed position on the full spiral, starting from (1, 0) and
/// threading the 2n half-leaves in sweep order. Arc length inverted through
/// a Hermite table of r(s) with exact slopes dr/ds = -sqrt(1 - r^{2n}).
class SpiralUniformMotion {
public:
    explicit SpiralUniformMotion(const curves::CurveFamily& fam,
                                 const quadrature::QuadratureConfig& cfg = {});

    curves::PolarPoint position_at(double s) const;
    double half_leaf_length() const { return half_leaf_length_; }

private:
    double radius_at_arc(double s_in_halfleaf) const;

    curves::CurveFamily fam_;
    std::vector<double> s_, r_, drds_;
    double half_leaf_length_;
};

/// theta(t) for keplerian motion on the Lame curve (integer n, t >= 0).
/// Convenience wrapper; grids should construct a KeplerLameMotion once.
double lame_kepler_theta(const curves::CurveFamily& fam, double t, const ForceParams& fp);

/// Spiral position after traversing arc length s >= 0 from (1, 0).
curves::PolarPoint spiral_uniform_position(const curves::CurveFamily& fam, double s);

/// The spiral point (R, beta) matched to the Lame sector [0, alpha].
curves::PolarPoint corresponding_spiral_point(const curves::CurveFamily& fam, double alpha);

/// frames equally spaced samples of the paired motions over [0, t_end].
/// Spiral speed is fixed at 2^{1+1/n} (h/2) so octant and half-leaf
/// boundaries are crossed simultaneously. swept_area is recomputed per frame
/// by direct quadrature, independent of the inversion tables.
std::vector<DualFrame> dual_motion(const curves::CurveFamily& fam, const ForceParams& fp,
                                   double t_end, int frames,
                                   const quadrature::QuadratureConfig& cfg = {});

/// The lcm(8, 2n)-long cycle of (P_i, Q_j) pairs: pair k = (k mod 8 + 1, k mod 2n + 1).
std::vector<SchedulePair> cycle_schedule(const curves::CurveFamily& fam);

/// Central force compelling keplerian motion on the Lame curve (n > 1):
/// F(r) = -C r^{4n-3} w^{2n-2}, w = sin(theta) cos(theta). Negative values
/// attract toward the origin. n = 1 is rejected as degenerate (a circular
/// orbit is compatible with any attractive central force).
double central_force_general(const curves::CurveFamily& fam, double r, double theta,
                             const ForceParams& fp);

/// Closed-form force laws in r alone, n in {2,3,4,5}:
///   n=2: C r (1 - r^4)
///   n=3: -C (1 - r^6)^2 / r^3
///   n=4: C r (sqrt(2 r^8 + 2) - 2 r^4)^3
///   n=5: -C (sqrt(5 r^10 + 20) - 5 r^5)^4 / r^3
/// Each is proportional to the general law on the curve (constants absorbed
/// into C differ per n: 1/2, 1/9, 1/8, 1/10000).
double central_force_explicit(int n, double r, double force_constant);

/// |u + u''_FD - (2n-1) w^{2n-2} / u^{4n-1}| with u = (cos^{2n} + sin^{2n})^{1/(2n)}
/// and u'' a five-point central finite difference with step fd_step.
double binet_residual(const curves::CurveFamily& fam, double theta, double fd_step);

/// Newtonian integration of the central-force orbit from (1, 0) with velocity
/// (0, h), adaptive embedded Runge-Kutta 5(4). Every accepted step must stay
/// on the curve (|x^{2n}+y^{2n}-1| <= 1e-6) and conserve angular momentum to
/// 1e-9 relative, else the run aborts with diagnostics.
std::vector<MotionState> simulate_central_force(const curves::CurveFamily& fam,
                                                const ForceParams& fp,
                                                double t_end, double rel_tol);

}  // namespace dynamics
}  // namespace lamespiral
