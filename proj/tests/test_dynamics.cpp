#include <doctest.h>

#include <cmath>
#include <random>

#include "lamespiral/dynamics.hpp"
#include "lamespiral/quadrature.hpp"
#include "lamespiral/specfun.hpp"

using namespace lamespiral;
using curves::CurveFamily;
namespace dyn = lamespiral::dynamics;
namespace quad = lamespiral::quadrature;

namespace {

// Full-curve swept Lame sector area by direct quadrature, used as an
// independent check of the inversion machinery.
double swept_area_oracle(const CurveFamily& fam, double theta) {
    const double oct = M_PI / 4.0;
    const double a_oct = quad::lame_sector_area(fam, oct);
    const long k = static_cast<long>(std::floor(theta / oct));
    const double phi = std::clamp(theta - k * oct, 0.0, oct);
    if (k % 2 == 0) return k * a_oct + quad::lame_sector_area(fam, phi);
    return (k + 1) * a_oct - quad::lame_sector_area(fam, oct - phi);
}

}  // namespace

TEST_CASE("ForceParams validation and derived constant") {
    CHECK_THROWS_AS(dyn::ForceParams(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(dyn::ForceParams(1.0, -1.0, 1.0), std::domain_error);
    const auto fp = dyn::ForceParams::for_lame_orbit(CurveFamily(3.0), 2.0, 0.5);
    CHECK(fp.force_constant == doctest::Approx(5.0 * 2.0 * 0.25).epsilon(1e-15));
}

TEST_CASE("keplerian angle: octant waypoints and full revolution") {
    const CurveFamily fam(2.0);
    const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 1.0);
    const dyn::KeplerLameMotion motion(fam, fp);
    const double t_oct = motion.octant_time();

    CHECK(motion.theta_at(0.0) == 0.0);
    CHECK(motion.theta_at(t_oct) == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    CHECK(motion.theta_at(8.0 * t_oct) == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
    CHECK_THROWS_AS(motion.theta_at(-1.0), std::domain_error);

    double prev = -1.0;
    for (int i = 0; i <= 64; ++i) {
        const double th = motion.theta_at(8.0 * t_oct * i / 64.0);
        CHECK(th > prev);
        prev = th;
    }
}

TEST_CASE("kepler property: swept area tracks (h/2) t") {
    for (double n : {2.0, 3.0}) {
        const CurveFamily fam(n);
        const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 0.7);
        const dyn::KeplerLameMotion motion(fam, fp);
        const double period = 8.0 * motion.octant_time();
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> pick(0.0, period);
        for (int i = 0; i < 100; ++i) {
            const double t = pick(rng);
            const double th = motion.theta_at(t);
            const double want = 0.5 * fp.angular_momentum * t;
            const double got = swept_area_oracle(fam, th);
            CAPTURE(n);
            CAPTURE(t);
            CHECK(std::fabs(got - want) <= 1e-9 * std::max(want, 1.0));
        }
    }
}

TEST_CASE("uniform spiral motion: waypoints") {
    const CurveFamily fam(3.0);
    const dyn::SpiralUniformMotion motion(fam);
    const double leaf_half = motion.half_leaf_length();
    CHECK(std::fabs(leaf_half - specfun::closed_forms(3.0).spiral_quarter_length) <= 1e-10);

    auto p = motion.position_at(0.0);
    CHECK(p.r == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.theta == doctest::Approx(0.0));

    p = motion.position_at(leaf_half);
    CHECK(p.r <= 1e-12);
    CHECK(p.theta == doctest::Approx(M_PI / 6.0).epsilon(1e-12));

    // full perimeter is n * varpi = 2n half-leaves
    p = motion.position_at(6.0 * leaf_half);
    CHECK(p.r == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::fabs(std::remainder(p.theta, 2.0 * M_PI)) <= 1e-12);

    // second half-leaf ends at the next leaf center
    p = motion.position_at(2.0 * leaf_half);
    CHECK(p.r == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.theta == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(motion.position_at(-0.5), std::domain_error);
}

TEST_CASE("uniform spiral motion: arc length is faithful and speed constant") {
    const CurveFamily fam(2.0);
    const dyn::SpiralUniformMotion motion(fam);
    const double leaf_half = motion.half_leaf_length();

    // radius at arc s must invert the cumulative arc length
    for (int i = 1; i < 24; ++i) {
        const double s = leaf_half * i / 24.0;
        const auto p = motion.position_at(s);
        const double back = quad::spiral_arc_length(fam, p.r, 1.0);
        CAPTURE(s);
        CHECK(std::fabs(back - s) <= 1e-9);
    }

    // central-difference speed ~ 1 inside a half-leaf
    const double ds = 1e-6 * leaf_half;
    for (int i = 1; i < 20; ++i) {
        const double s = leaf_half * (0.03 + 0.94 * i / 20.0);
        const auto pm = motion.position_at(s - ds);
        const auto pp = motion.position_at(s + ds);
        const double xm = pm.r * std::cos(pm.theta), ym = pm.r * std::sin(pm.theta);
        const double xp = pp.r * std::cos(pp.theta), yp = pp.r * std::sin(pp.theta);
        const double speed = std::hypot(xp - xm, yp - ym) / (2.0 * ds);
        CAPTURE(s);
        CHECK(speed == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("free-function wrappers agree with the motion classes") {
    const CurveFamily fam(2.0);
    const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 1.0);
    const dyn::KeplerLameMotion kep(fam, fp);
    const double t = 0.37 * kep.octant_time();
    CHECK(dyn::lame_kepler_theta(fam, t, fp) == doctest::Approx(kep.theta_at(t)).epsilon(1e-14));
    const dyn::SpiralUniformMotion uni(fam);
    const auto a = dyn::spiral_uniform_position(fam, 0.3);
    const auto b = uni.position_at(0.3);
    CHECK(a.r == doctest::Approx(b.r).epsilon(1e-14));
    CHECK(a.theta == doctest::Approx(b.theta).epsilon(1e-14));
}

TEST_CASE("corresponding_spiral_point") {
    const CurveFamily two(2.0);
    auto p = dyn::corresponding_spiral_point(two, 0.0);
    CHECK(p.r == 0.0);
    CHECK(p.theta == doctest::Approx(M_PI / 4.0).epsilon(1e-15));
    p = dyn::corresponding_spiral_point(two, M_PI / 4.0);
    CHECK(p.r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(p.theta) <= 1e-7);
    p = dyn::corresponding_spiral_point(two, M_PI / 8.0);
    CHECK(p.r == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(p.theta == doctest::Approx(0.5 * std::acos(1.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("dual motion frames satisfy the arc/area correspondence") {
    const CurveFamily fam(3.0);
    const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 1.0);
    const dyn::KeplerLameMotion ref(fam, fp);
    const double t_end = 24.0 * ref.octant_time();  // one full paired cycle
    const auto frames = dyn::dual_motion(fam, fp, t_end, 97);
    REQUIRE(frames.size() == 97);

    const double factor = std::exp2(1.0 + 1.0 / 3.0);
    for (const auto& fr : frames) {
        CAPTURE(fr.time);
        CHECK(std::fabs(fr.traversed_length - factor * fr.swept_area) <= 1e-8);
    }

    // t = 0: Lame particle at (1, 0), spiral particle at the leaf tip
    CHECK(frames.front().lame_point.r == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(frames.front().lame_point.theta == 0.0);
    CHECK(frames.front().spiral_point.r <= 1e-12);
    CHECK(frames.front().spiral_point.theta == doctest::Approx(M_PI / 6.0).epsilon(1e-12));

    // one full cycle returns both particles to their starts
    CHECK(frames.back().lame_point.theta == doctest::Approx(6.0 * M_PI).epsilon(1e-11));
    CHECK(frames.back().spiral_point.r <= 1e-9);

    CHECK_THROWS_AS(dyn::dual_motion(CurveFamily(2.5), fp, 1.0, 8), std::domain_error);
    CHECK_THROWS_AS(dyn::dual_motion(fam, fp, 1.0, 1), std::domain_error);
}

TEST_CASE("dual frames land on the corresponding spiral points (first octant)") {
    const CurveFamily fam(3.0);
    const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 1.0);
    const dyn::KeplerLameMotion ref(fam, fp);
    const auto frames = dyn::dual_motion(fam, fp, ref.octant_time(), 9);
    for (size_t k = 1; k + 1 < frames.size(); ++k) {
        const double alpha = frames[k].lame_point.theta;  // within [0, pi/4] here
        const auto want = dyn::corresponding_spiral_point(fam, alpha);
        CAPTURE(alpha);
        CHECK(std::fabs(frames[k].spiral_point.r - want.r) <= 1e-8);
        CHECK(std::fabs(frames[k].spiral_point.theta - want.theta) <= 1e-8);
    }
}

TEST_CASE("dual motion boundary crossing at t_oct") {
    const CurveFamily fam(3.0);
    const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 1.0);
    const dyn::KeplerLameMotion ref(fam, fp);
    // frames chosen so one lands exactly on the octant boundary
    const auto frames = dyn::dual_motion(fam, fp, 2.0 * ref.octant_time(), 3);
    const auto& mid = frames[1];
    CHECK(mid.lame_point.theta == doctest::Approx(M_PI / 4.0).epsilon(1e-11));
    CHECK(mid.spiral_point.r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cycle_schedule") {
    const auto s3 = dyn::cycle_schedule(CurveFamily(3.0));
    REQUIRE(s3.size() == 24);
    CHECK(s3[0].octant_index == 1);
    CHECK(s3[0].halfleaf_index == 1);
    CHECK(s3[6].octant_index == 7);
    CHECK(s3[6].halfleaf_index == 1);
    CHECK(s3[8].octant_index == 1);
    CHECK(s3[8].halfleaf_index == 3);
    CHECK(s3[23].octant_index == 8);
    CHECK(s3[23].halfleaf_index == 6);

    const auto s2 = dyn::cycle_schedule(CurveFamily(2.0));
    REQUIRE(s2.size() == 8);
    CHECK(s2[4].octant_index == 5);
    CHECK(s2[4].halfleaf_index == 1);

    const auto s1 = dyn::cycle_schedule(CurveFamily(1.0));
    REQUIRE(s1.size() == 8);
    for (int k = 0; k < 8; ++k) CHECK(s1[k].halfleaf_index == k % 2 + 1);

    CHECK_THROWS_AS(dyn::cycle_schedule(CurveFamily(2.5)), std::domain_error);
}

TEST_CASE("central_force_general") {
    const dyn::ForceParams unit(1.0, 1.0, 1.0);
    const CurveFamily two(2.0);
    CHECK(dyn::central_force_general(two, std::pow(2.0, 0.25), M_PI / 4.0, unit) ==
          doctest::Approx(-std::pow(2.0, 1.25) / 4.0).epsilon(1e-13));
    CHECK(dyn::central_force_general(two, 0.7, 0.0, unit) == 0.0);
    CHECK(dyn::central_force_general(CurveFamily(3.0), 1.0, 0.0, unit) == 0.0);
    CHECK_THROWS_AS(dyn::central_force_general(CurveFamily(1.0), 1.0, 0.3, unit),
                    std::domain_error);
    CHECK_THROWS_AS(dyn::central_force_general(CurveFamily(0.5), 1.0, 0.3, unit),
                    std::domain_error);
}

TEST_CASE("central_force_explicit values") {
    CHECK(dyn::central_force_explicit(3, 1.0, 1.0) == 0.0);
    CHECK(dyn::central_force_explicit(2, std::pow(2.0, 0.25), 1.0) ==
          doctest::Approx(-std::pow(2.0, 0.25)).epsilon(1e-13));
    CHECK_THROWS_AS(dyn::central_force_explicit(6, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(dyn::central_force_explicit(2, 0.0, 1.0), std::domain_error);
}

TEST_CASE("general/explicit force ratio is constant on the curve") {
    const dyn::ForceParams unit(1.0, 1.0, 1.0);
    const double expected_ratio[4] = {0.5, 1.0 / 9.0, 0.125, 1e-4};
    for (int n = 2; n <= 5; ++n) {
        const CurveFamily fam(static_cast<double>(n));
        const int count = 50;
        std::vector<double> ratios(count);
        for (int i = 0; i < count; ++i) {
            const double theta = 0.05 + (M_PI / 2.0 - 0.1) * i / (count - 1);
            const double r = curves::lame_polar_radius(fam, theta);
            ratios[i] = dyn::central_force_general(fam, r, theta, unit) /
                        dyn::central_force_explicit(n, r, 1.0);
        }
        double mean = 0.0;
        for (double v : ratios) mean += v;
        mean /= count;
        double var = 0.0;
        for (double v : ratios) var += (v - mean) * (v - mean);
        var /= count;
        const double spread = std::sqrt(var) / std::fabs(mean);
        CAPTURE(n);
        CHECK(spread <= 1e-10);
        CHECK(mean == doctest::Approx(expected_ratio[n - 2]).epsilon(1e-10));
        if (n == 2) CHECK(std::fabs(mean - 0.5) <= 1e-12);
        if (n == 3) CHECK(std::fabs(mean - 1.0 / 9.0) <= 1e-12);
    }
}

TEST_CASE("binet residual is small on and off the axes") {
    CHECK(dyn::binet_residual(CurveFamily(2.0), M_PI / 4.0, 1e-3) <= 1e-8);
    CHECK(dyn::binet_residual(CurveFamily(3.0), 0.7, 1e-3) <= 1e-8);
    CHECK(dyn::binet_residual(CurveFamily(2.0), 0.0, 1e-3) <= 1e-8);
    for (double n : {2.0, 3.0, 4.0, 5.0}) {
        const CurveFamily fam(n);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i)
            worst = std::max(worst, dyn::binet_residual(fam, M_PI / 2.0 * i / 99.0, 1e-3));
        CAPTURE(n);
        CHECK(worst <= 1e-8);
    }
    CHECK_THROWS_AS(dyn::binet_residual(CurveFamily(1.0), 0.3, 1e-3), std::domain_error);
}

TEST_CASE("newtonian simulation stays on the curve and closes the orbit") {
    const CurveFamily fam(2.0);
    const auto fp = dyn::ForceParams::for_lame_orbit(fam, 1.0, 1.0);
    const double area_total = 4.0 * quad::lame_quadrant_area(fam);
    const double period = 2.0 * area_total / fp.angular_momentum;

    const auto traj = dyn::simulate_central_force(fam, fp, period, 1e-12);
    REQUIRE(traj.size() > 10);
    CHECK(traj.front().position.x == 1.0);
    CHECK(traj.front().vy == 1.0);
    CHECK(traj.back().time == doctest::Approx(period).epsilon(1e-14));

    double worst_curve = 0.0, worst_am = 0.0;
    for (const auto& st : traj) {
        worst_curve = std::max(worst_curve,
                               std::fabs(curves::lame_implicit(fam, st.position)));
        const double am = st.position.x * st.vy - st.position.y * st.vx;
        worst_am = std::max(worst_am, std::fabs(am - 1.0));
    }
    CHECK(worst_curve <= 1e-6);
    CHECK(worst_am <= 1e-9);
    CHECK(std::hypot(traj.back().position.x - 1.0, traj.back().position.y) <= 1e-5);

    CHECK_THROWS_AS(dyn::simulate_central_force(CurveFamily(1.0), fp, 1.0, 1e-10),
                    std::domain_error);
}
