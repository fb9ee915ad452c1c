#include "lamespiral/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "lamespiral/relations.hpp"

namespace lamespiral {
namespace dynamics {

namespace {

// Cubic Hermite on a sorted grid with prescribed slopes. Our tables carry
// exact analytic slopes of smooth monotone data, so no limiter is needed;
// monotonicity is asserted by the unit tests instead.
double hermite_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& ms, double x, double* deriv = nullptr) {
    const int n = static_cast<int>(xs.size());
    int i = static_cast<int>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
    i = std::clamp(i, 0, n - 2);
    const double h = xs[i + 1] - xs[i];
    const double s = (x - xs[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    const double val = ys[i] * h00 + h * ms[i] * h10 + ys[i + 1] * h01 + h * ms[i + 1] * h11;
    if (deriv) {
        *deriv = (ys[i] * (6.0 * s2 - 6.0 * s) + ys[i + 1] * (6.0 * s - 6.0 * s2)) / h +
                 ms[i] * (3.0 * s2 - 4.0 * s + 1.0) + ms[i + 1] * (3.0 * s2 - 2.0 * s);
    }
    return val;
}

constexpr int kProfileSamples = 256;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return std::string(buf);
}

double wrap_two_pi(double theta) {
    double t = std::fmod(theta, 2.0 * M_PI);
    if (t < 0.0) t += 2.0 * M_PI;
    return t;
}

void require_integer_n(const curves::CurveFamily& fam, const char* who) {
    if (!fam.integer_n)
        throw std::domain_error(std::string(who) + ": full-curve motion requires integer n");
}

// Full-curve swept sector area of the Lame curve from theta = 0, by direct
// quadrature on the folded octant (independent of the inversion tables).
double swept_area_geometric(const curves::CurveFamily& fam, double theta,
                            double octant_area, const quadrature::QuadratureConfig& cfg) {
    const double oct = M_PI / 4.0;
    double k = std::floor(theta / oct);
    double phi = theta - k * oct;
    if (phi < 0.0) {
        phi = 0.0;
    } else if (phi > oct) {
        phi = oct;
    }
    const long ki = static_cast<long>(k);
    if (ki % 2 == 0)
        return ki * octant_area + quadrature::lame_sector_area(fam, phi, cfg);
    return (ki + 1) * octant_area - quadrature::lame_sector_area(fam, oct - phi, cfg);
}

}  // namespace

KeplerLameMotion::KeplerLameMotion(const curves::CurveFamily& fam, const ForceParams& fp,
                                   const quadrature::QuadratureConfig& cfg)
    : fam_(fam), fp_(fp) {
    require_integer_n(fam, "KeplerLameMotion");
    const auto prof =
        quadrature::cumulative_profile(quadrature::ProfileKind::LameSectorArea, fam,
                                       kProfileSamples, cfg);
    alpha_.reserve(prof.size());
    area_.reserve(prof.size());
    slope_.reserve(prof.size());
    for (const auto& p : prof) {
        alpha_.push_back(p.parameter);
        area_.push_back(p.cumulative);
        const double r = curves::lame_polar_radius(fam_, p.parameter);
        slope_.push_back(0.5 * r * r);  // dA/dtheta
    }
    octant_area_ = area_.back();
}

double KeplerLameMotion::octant_time() const {
    return 2.0 * octant_area_ / fp_.angular_momentum;
}

double KeplerLameMotion::invert_octant(double area_target) const {
    const double a = std::clamp(area_target, 0.0, octant_area_);
    int i = static_cast<int>(std::upper_bound(area_.begin(), area_.end(), a) - area_.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(area_.size()) - 2);
    double lo = alpha_[i], hi = alpha_[i + 1];
    double th = lo + (hi - lo) * (a - area_[i]) / (area_[i + 1] - area_[i]);
    for (int iter = 0; iter < 60; ++iter) {
        double da;
        const double f = hermite_eval(alpha_, area_, slope_, th, &da) - a;
        if (std::fabs(f) <= 4.0 * std::numeric_limits<double>::epsilon() * octant_area_)
            break;
        if (f > 0.0) {
            hi = th;
        } else {
            lo = th;
        }
        double next = (da > 0.0) ? th - f / da : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == th) break;
        th = next;
    }
    return th;
}

double KeplerLameMotion::theta_at(double t) const {
    if (!(t >= 0.0))
        throw std::domain_error("KeplerLameMotion: time must be nonnegative");
    const double area_target = 0.5 * fp_.angular_momentum * t;
    double k = std::floor(area_target / octant_area_);
    double rem = area_target - k * octant_area_;
    if (rem < 0.0) {
        rem = 0.0;
    } else if (rem > octant_area_) {
        rem = octant_area_;
    }
    const long long ki = static_cast<long long>(k);
    const double oct = M_PI / 4.0;
    if (ki % 2 == 0) return ki * oct + invert_octant(rem);
    return (ki + 1) * oct - invert_octant(octant_area_ - rem);
}

SpiralUniformMotion::SpiralUniformMotion(const curves::CurveFamily& fam,
                                         const quadrature::QuadratureConfig& cfg)
    : fam_(fam) {
    require_integer_n(fam, "SpiralUniformMotion");
    const auto prof =
        quadrature::cumulative_profile(quadrature::ProfileKind::SpiralArcLength, fam,
                                       kProfileSamples, cfg);
    const int n_pts = static_cast<int>(prof.size());
    s_.reserve(n_pts);
    r_.reserve(n_pts);
    drds_.reserve(n_pts);
    for (int i = 0; i < n_pts; ++i) {
        const double r =
            (i == 0) ? 1.0 : (i == n_pts - 1 ? 0.0 : curves::spiral_radius(fam_, prof[i].parameter));
        s_.push_back(prof[i].cumulative);
        r_.push_back(r);
        // dr/ds = -sqrt(1 - r^{2n}), computed through the cancellation
        double om;
        if (r > 0.5) {
            om = -std::expm1(2.0 * fam_.n * std::log1p(r - 1.0));
        } else {
            om = 1.0 - std::pow(r, 2.0 * fam_.n);
        }
        drds_.push_back(-std::sqrt(std::max(om, 0.0)));
    }
    half_leaf_length_ = s_.back();
}

double SpiralUniformMotion::radius_at_arc(double s_in_halfleaf) const {
    const double s = std::clamp(s_in_halfleaf, 0.0, half_leaf_length_);
    return std::clamp(hermite_eval(s_, r_, drds_, s), 0.0, 1.0);
}

curves::PolarPoint SpiralUniformMotion::position_at(double s) const {
    if (!(s >= 0.0))
        throw std::domain_error("SpiralUniformMotion: arc length must be nonnegative");
    const double len = half_leaf_length_;
    const long long two_n = 2 * static_cast<long long>(std::llround(fam_.n));
    long long j = static_cast<long long>(std::floor(s / len));
    double srem = s - static_cast<double>(j) * len;
    if (srem <= 0.0 && j > 0) {  // land boundary points on the incoming half-leaf
        j -= 1;
        srem = len;
    }
    srem = std::clamp(srem, 0.0, len);
    const long long jm = j % two_n;
    const long long n_leaves = two_n / 2;
    double r, theta;
    if (jm % 2 == 0) {
        // leaf center -> origin, ascending angle
        r = radius_at_arc(srem);
        const double leaf_center = 2.0 * M_PI * static_cast<double>(jm / 2) / fam_.n;
        theta = leaf_center + curves::spiral_theta_from_radius(fam_, r);
    } else {
        // origin -> next leaf center, approached from below
        r = radius_at_arc(len - srem);
        const long long leaf = ((jm + 1) / 2) % n_leaves;
        const double leaf_center = 2.0 * M_PI * static_cast<double>(leaf) / fam_.n;
        theta = leaf_center - curves::spiral_theta_from_radius(fam_, r);
    }
    return curves::PolarPoint{r, wrap_two_pi(theta)};
}

double lame_kepler_theta(const curves::CurveFamily& fam, double t, const ForceParams& fp) {
    return KeplerLameMotion(fam, fp).theta_at(t);
}

curves::PolarPoint spiral_uniform_position(const curves::CurveFamily& fam, double s) {
    return SpiralUniformMotion(fam).position_at(s);
}

curves::PolarPoint corresponding_spiral_point(const curves::CurveFamily& fam, double alpha) {
    const relations::SiegelTriple st = relations::sector_to_arc(fam, alpha);
    return curves::PolarPoint{st.r_param, st.beta};
}

std::vector<DualFrame> dual_motion(const curves::CurveFamily& fam, const ForceParams& fp,
                                   double t_end, int frames,
                                   const quadrature::QuadratureConfig& cfg) {
    require_integer_n(fam, "dual_motion");
    if (frames < 2)
        throw std::domain_error("dual_motion: need at least 2 frames");
    if (!(t_end > 0.0))
        throw std::domain_error("dual_motion: t_end must be positive");

    const KeplerLameMotion kepler(fam, fp, cfg);
    const SpiralUniformMotion spiral(fam, cfg);
    const double speed =
        std::exp2(1.0 + 1.0 / fam.n) * 0.5 * fp.angular_momentum;
    const double octant_area = quadrature::lame_sector_area(fam, M_PI / 4.0, cfg);
    const double leaf_len = spiral.half_leaf_length();
    const double perimeter = 2.0 * std::round(fam.n) * leaf_len;

    std::vector<DualFrame> out;
    out.reserve(frames);
    for (int k = 0; k < frames; ++k) {
        const double t = t_end * static_cast<double>(k) / (frames - 1);
        const double theta = kepler.theta_at(t);
        DualFrame fr;
        fr.time = t;
        fr.lame_point = curves::PolarPoint{curves::lame_polar_radius(fam, theta), theta};
        fr.traversed_length = speed * t;
        // the paired particle starts at the leaf tip and reaches (1, 0) when
        // the first octant is swept: its arc coordinate runs backward from L_q
        double sigma = std::fmod(leaf_len - fr.traversed_length, perimeter);
        if (sigma < 0.0) sigma += perimeter;
        fr.spiral_point = spiral.position_at(sigma);
        fr.swept_area = swept_area_geometric(fam, theta, octant_area, cfg);
        out.push_back(fr);
    }
    return out;
}

std::vector<SchedulePair> cycle_schedule(const curves::CurveFamily& fam) {
    require_integer_n(fam, "cycle_schedule");
    const int two_n = 2 * static_cast<int>(std::llround(fam.n));
    const int len = std::lcm(8, two_n);
    std::vector<SchedulePair> out;
    out.reserve(len);
    for (int k = 0; k < len; ++k)
        out.push_back(SchedulePair{k % 8 + 1, k % two_n + 1});
    return out;
}

double central_force_general(const curves::CurveFamily& fam, double r, double theta,
                             const ForceParams& fp) {
    if (fam.n == 1.0)
        throw std::domain_error(
            "central_force_general: n = 1 is degenerate (a circular orbit is "
            "compatible with any attractive central force)");
    if (!(fam.n > 1.0))
        throw std::domain_error("central_force_general: requires n > 1");
    if (!(r >= 0.0))
        throw std::domain_error("central_force_general: radius must be nonnegative");
    const double w = std::sin(theta) * std::cos(theta);
    return -fp.force_constant * std::pow(r, 4.0 * fam.n - 3.0) * std::pow(w * w, fam.n - 1.0);
}

double central_force_explicit(int n, double r, double force_constant) {
    if (!(r > 0.0))
        throw std::domain_error("central_force_explicit: radius must be positive");
    const double c = force_constant;
    switch (n) {
        case 2: {
            const double r4 = r * r * r * r;
            return c * r * (1.0 - r4);
        }
        case 3: {
            const double r3 = r * r * r;
            const double d = 1.0 - r3 * r3;
            return -c * d * d / r3;
        }
        case 4: {
            const double r4 = r * r * r * r;
            const double d = std::sqrt(2.0 * r4 * r4 + 2.0) - 2.0 * r4;
            return c * r * d * d * d;
        }
        case 5: {
            const double r5 = std::pow(r, 5.0);
            const double d = std::sqrt(5.0 * r5 * r5 + 20.0) - 5.0 * r5;
            const double d2 = d * d;
            return -c * d2 * d2 / (r * r * r);
        }
        default:
            throw std::domain_error("central_force_explicit: closed forms exist for n in {2,3,4,5}");
    }
}

double binet_residual(const curves::CurveFamily& fam, double theta, double fd_step) {
    if (!(fam.n > 1.0))
        throw std::domain_error("binet_residual: requires n > 1");
    if (!(fd_step > 0.0))
        throw std::domain_error("binet_residual: step must be positive");
    // evaluated in extended precision: at step 1e-3 the pure truncation term
    // for n = 5 already sits at ~9.9e-9, so double-rounding noise in the five
    // stencil values (amplified by 64/(12 h^2)) would swamp the result
    const long double n = fam.n;
    auto u = [n](long double th) -> long double {
        const long double c = std::cos(th);
        const long double s = std::sin(th);
        return std::pow(std::pow(c * c, n) + std::pow(s * s, n), 1.0L / (2.0L * n));
    };
    const long double h = fd_step;
    const long double th = theta;
    const long double u0 = u(th);
    const long double upp = (-u(th - 2.0L * h) + 16.0L * u(th - h) - 30.0L * u0 +
                             16.0L * u(th + h) - u(th + 2.0L * h)) /
                            (12.0L * h * h);
    const long double w = std::sin(th) * std::cos(th);
    const long double rhs =
        (2.0L * n - 1.0L) * std::pow(w * w, n - 1.0L) / std::pow(u0, 4.0L * n - 1.0L);
    return static_cast<double>(std::fabs(u0 + upp - rhs));
}

std::vector<MotionState> simulate_central_force(const curves::CurveFamily& fam,
                                                const ForceParams& fp,
                                                double t_end, double rel_tol) {
    if (!(fam.n > 1.0))
        throw std::domain_error("simulate_central_force: requires n > 1");
    if (!(t_end > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("simulate_central_force: t_end and rel_tol must be positive");

    // Dormand-Prince 5(4)
    static const double a21 = 1.0 / 5.0;
    static const double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static const double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static const double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static const double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static const double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static const double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    using State = std::array<double, 4>;  // x, y, vx, vy
    auto deriv = [&](const State& y) -> State {
        const double r = std::hypot(y[0], y[1]);
        const double th = std::atan2(y[1], y[0]);
        const double f = central_force_general(fam, r, th, fp);
        const double am = f / (fp.mass * r);
        return State{y[2], y[3], am * y[0], am * y[1]};
    };

    const double h_spec = fp.angular_momentum;
    const double atol = rel_tol * 1e-2;
    const double h_min = 1e-14 * t_end;

    State y{1.0, 0.0, 0.0, h_spec};
    double t = 0.0;
    double h = 1e-4 * t_end;
    double err_old = 1e-4;
    State k1 = deriv(y);

    std::vector<MotionState> out;
    auto record = [&](double time, const State& st) {
        const double curve = std::fabs(
            curves::lame_implicit(fam, curves::PlanePoint{st[0], st[1]}));
        const double am = st[0] * st[3] - st[1] * st[2];
        const double drift = std::fabs(am - h_spec) / h_spec;
        if (curve > 1e-6)
            throw SimulationError("simulate_central_force: left the curve at t = " +
                                  sci(time) + " (residual " + sci(curve) + ")");
        if (drift > 1e-9)
            throw SimulationError("simulate_central_force: angular momentum drift " +
                                  sci(drift) + " at t = " + sci(time));
        out.push_back(MotionState{time, curves::PlanePoint{st[0], st[1]}, st[2], st[3]});
    };
    record(0.0, y);

    while (t < t_end) {
        if (h < h_min)
            throw SimulationError("simulate_central_force: step size underflow at t = " +
                                  sci(t));
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }
        State y2, y3, y4, y5, y6, y7;
        for (int i = 0; i < 4; ++i) y2[i] = y[i] + h * a21 * k1[i];
        const State k2 = deriv(y2);
        for (int i = 0; i < 4; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const State k3 = deriv(y3);
        for (int i = 0; i < 4; ++i)
            y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const State k4 = deriv(y4);
        for (int i = 0; i < 4; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const State k5 = deriv(y5);
        for (int i = 0; i < 4; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        const State k6 = deriv(y6);
        for (int i = 0; i < 4; ++i)
            y7[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                a76 * k6[i]);
        const State k7 = deriv(y7);  // FSAL

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y7[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / 4.0);

        if (err <= 1.0) {
            t = last ? t_end : t + h;
            y = y7;
            k1 = k7;
            record(t, y);
            err_old = std::max(err, 1e-4);
        }
        const double fac =
            std::clamp(0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.7 / 5.0) *
                           std::pow(err_old, 0.4 / 5.0),
                       0.2, 5.0);
        h *= fac;
    }
    return out;
}

}  // namespace dynamics
}  // namespace lamespiral
