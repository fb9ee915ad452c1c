#include "lamespiral/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "lamespiral/specfun.hpp"

namespace lamespiral {
namespace quadrature {

namespace {

constexpr double kDeTMax = 6.0;

// Gauss-Kronrod 7-15 abscissae/weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkPanel {
    double a, b;
    double value;
    double err;
    double resabs;
    bool operator<(const GkPanel& o) const { return err < o.err; }
};

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return std::string(buf);
}

GkPanel gk15_panel(const std::function<double(double)>& f, double a, double b,
                   long& evals) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(c);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kXgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        const double fsum = fv1[j] + fv2[j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    evals += 15;
    if (!std::isfinite(resk))
        throw EvaluationError("integrate_gk: integrand returned NaN/Inf");
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    resasc *= std::fabs(hl);
    resabs *= std::fabs(hl);
    double err = std::fabs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return GkPanel{a, b, resk * hl, err, resabs};
}

// 1 - x^p to full relative precision near x = 1. x - 1 is rebuilt from the
// nearer endpoint and its exact offset; going through the rounded x would
// lose the offset entirely once the interval is much narrower than ulp(1).
double one_minus_pow(double x, double p, double dist_a, double dist_b, double a, double b) {
    if (x <= 0.0) return 1.0;
    if (x <= 0.5) return 1.0 - std::pow(x, p);
    const double dx1 = (-dist_b <= dist_a) ? (b - 1.0) + dist_b : (a - 1.0) + dist_a;
    return -std::expm1(p * std::log1p(dx1));
}

}  // namespace

IntegralResult integrate_de(const DeIntegrand& f, double a, double b,
                            const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_de: requires finite a <= b");
    if (a == b) return IntegralResult{0.0, 0.0, 0};

    const double width = b - a;
    const double hw = 0.5 * width;
    long evals = 0;

    auto term = [&](double t, double& abs_term) -> double {
        const double u = 0.5 * M_PI * std::sinh(t);
        const double cu = std::cosh(u);
        const double w = hw * 0.5 * M_PI * std::cosh(t) / (cu * cu);
        if (!(w > 1e-280)) return 0.0;  // tail underflow, contribution negligible
        const double e2u = std::exp(-2.0 * std::fabs(u));
        const double off = hw * 2.0 * e2u / (1.0 + e2u);  // distance to near endpoint
        if (off == 0.0) return 0.0;
        // both offsets derive from the interval width, never from the rounded
        // abscissa: x absorbs up to ulp(1)/2, which would wreck narrow
        // intervals and the dx-to-1 reconstruction in singular kernels
        double x, da, db;
        if (t >= 0.0) {
            db = -off;
            da = width - off;
            x = b - off;
        } else {
            da = off;
            db = off - width;
            x = a + off;
        }
        const double fv = f(x, da, db);
        ++evals;
        if (!std::isfinite(fv))
            throw EvaluationError("integrate_de: integrand returned NaN/Inf at x near " + sci(x));
        abs_term += std::fabs(w * fv);
        return w * fv;
    };

    double h = 1.0;
    double abs_sum = 0.0;
    double sum = term(0.0, abs_sum);
    for (int k = 1; k * h <= kDeTMax; ++k)
        sum += term(k * h, abs_sum) + term(-k * h, abs_sum);
    double prev = sum * h;
    double prev_abs = abs_sum * h;
    double err = std::fabs(prev);

    for (int level = 1; level <= cfg.max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        double abs_add = 0.0;
        for (int k = 1; k * h <= kDeTMax; k += 2)
            add += term(k * h, abs_add) + term(-k * h, abs_add);
        const double cur = 0.5 * prev + h * add;
        const double cur_abs = 0.5 * prev_abs + h * abs_add;
        err = std::fabs(cur - prev);
        if (level >= 2 &&
            (err <= cfg.target_rel_tol * std::fabs(cur) || err <= 1e-15 * cur_abs))
            return IntegralResult{cur, err, evals};
        prev = cur;
        prev_abs = cur_abs;
    }
    throw ConvergenceError("integrate_de: no convergence at max_level=" +
                           std::to_string(cfg.max_level) + " (last level difference " +
                           sci(err) + ")");
}

IntegralResult integrate_de(const std::function<double(double)>& f, double a, double b,
                            const QuadratureConfig& cfg) {
    // Deep nodes round onto the endpoints; nudge them one ulp inside so an
    // endpoint-singular f stays evaluable. Accuracy is then limited to ~1e-8
    // for inverse-sqrt singularities; the offset-aware overload has no such
    // limit. NaN/Inf at interior points still reports as EvaluationError.
    return integrate_de(
        [&f, a, b](double x, double, double) {
            if (x == b) x = std::nextafter(b, a);
            if (x == a) x = std::nextafter(a, b);
            return f(x);
        },
        a, b, cfg);
}

IntegralResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                            const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_gk: requires finite a <= b");
    if (a == b) return IntegralResult{0.0, 0.0, 0};

    long evals = 0;
    std::priority_queue<GkPanel> panels;
    panels.push(gk15_panel(f, a, b, evals));
    double total = panels.top().value;
    double total_err = panels.top().err;
    double total_abs = panels.top().resabs;
    int splits = 0;

    while (true) {
        const double floor = 50.0 * std::numeric_limits<double>::epsilon() * total_abs;
        if (total_err <= std::max(cfg.target_rel_tol * std::fabs(total), floor))
            break;
        if (splits >= cfg.max_subdivisions)
            throw ConvergenceError("integrate_gk: subdivision cap " +
                                   std::to_string(cfg.max_subdivisions) +
                                   " reached, error " + sci(total_err));
        GkPanel worst = panels.top();
        panels.pop();
        total -= worst.value;
        total_err -= worst.err;
        total_abs -= worst.resabs;
        const double mid = 0.5 * (worst.a + worst.b);
        GkPanel left = gk15_panel(f, worst.a, mid, evals);
        GkPanel right = gk15_panel(f, mid, worst.b, evals);
        total += left.value + right.value;
        total_err += left.err + right.err;
        total_abs += left.resabs + right.resabs;
        panels.push(left);
        panels.push(right);
        ++splits;
    }
    return IntegralResult{total, total_err, evals};
}

double spiral_arc_length(const curves::CurveFamily& fam, double r1, double r2,
                         const QuadratureConfig& cfg) {
    if (!(r1 >= 0.0) || !(r2 >= r1) || r2 > 1.0)
        throw std::domain_error("spiral_arc_length: requires 0 <= r1 <= r2 <= 1");
    if (r1 == r2) return 0.0;
    const double two_n = 2.0 * fam.n;
    auto kern = [two_n, r1, r2](double x, double da, double db) {
        return 1.0 / std::sqrt(one_minus_pow(x, two_n, da, db, r1, r2));
    };
    return integrate_de(DeIntegrand(kern), r1, r2, cfg).value;
}

double lame_quadrant_area(const curves::CurveFamily& fam, const QuadratureConfig& cfg) {
    const double two_n = 2.0 * fam.n;
    const double inv = 1.0 / two_n;
    auto f = [two_n, inv](double x, double da, double db) {
        return std::pow(one_minus_pow(x, two_n, da, db, 0.0, 1.0), inv);
    };
    return integrate_de(DeIntegrand(f), 0.0, 1.0, cfg).value;
}

double lame_sector_area(const curves::CurveFamily& fam, double alpha,
                        const QuadratureConfig& cfg) {
    if (alpha < -1e-12 || alpha > M_PI / 4.0 + 1e-12)
        throw std::domain_error("lame_sector_area: alpha outside [0, pi/4]");
    alpha = std::clamp(alpha, 0.0, M_PI / 4.0);
    if (alpha == 0.0) return 0.0;
    const double t_upper = std::tan(alpha);
    const double two_n = 2.0 * fam.n;
    const double inv_n = 1.0 / fam.n;
    auto f = [two_n, inv_n](double v) {
        return std::exp(-inv_n * std::log1p(std::pow(v, two_n)));
    };
    return 0.5 * integrate_gk(f, 0.0, t_upper, cfg).value;
}

double policle_sector_area(const curves::CurveFamily& fam, double alpha,
                           const QuadratureConfig& cfg) {
    const double upper = M_PI / (2.0 * fam.n);
    if (alpha < -1e-12 || alpha > upper + 1e-12)
        throw std::domain_error("policle_sector_area: alpha outside [0, pi/(2n)]");
    alpha = std::clamp(alpha, 0.0, upper);
    if (alpha == 0.0) return 0.0;
    auto f = [&fam](double th) {
        return 0.5 * std::sqrt(curves::detail::policle_fourth_power(fam, th));
    };
    return integrate_gk(f, 0.0, alpha, cfg).value;
}

double superellipse_area(const curves::Superellipse& se, const QuadratureConfig& cfg) {
    const double closed =
        std::exp2(1.0 - 2.0 / se.alpha_exp) * specfun::varpi(se.alpha_exp) * se.a * se.b;
    const double direct =
        4.0 * se.a * se.b * lame_quadrant_area(curves::CurveFamily(se.alpha_exp / 2.0), cfg);
    const double rel = std::fabs(closed - direct) / std::max(std::fabs(closed), std::fabs(direct));
    if (rel > 100.0 * cfg.target_rel_tol)
        throw ConsistencyError("superellipse_area: closed form " + std::to_string(closed) +
                               " and quadrature " + std::to_string(direct) +
                               " disagree (rel " + std::to_string(rel) + ")");
    return closed;
}

double spiral_quarter_length_substituted(const curves::CurveFamily& fam,
                                         const QuadratureConfig& cfg) {
    const double n = fam.n;
    const double p = 1.0 / n - 1.0;
    auto f = [n, p](double u) { return std::pow(std::sin(n * u), p); };
    return integrate_de(std::function<double(double)>(f), 0.0, M_PI / (2.0 * n), cfg).value;
}

std::vector<ProfilePoint> cumulative_profile(ProfileKind kind,
                                             const curves::CurveFamily& fam,
                                             int samples, const QuadratureConfig& cfg) {
    if (samples < 16)
        throw std::domain_error("cumulative_profile: samples must be >= 16");
    const double span =
        (kind == ProfileKind::SpiralArcLength) ? M_PI / (2.0 * fam.n) : M_PI / 4.0;
    std::vector<ProfilePoint> table(samples);
    for (int i = 0; i < samples; ++i) {
        // Chebyshev-Lobatto spacing: clusters at both ends, in particular at
        // the singular end of the arc-length parametrization.
        const double p = 0.5 * span * (1.0 - std::cos(M_PI * i / (samples - 1)));
        double cum;
        if (kind == ProfileKind::SpiralArcLength) {
            // the last node is the leaf tip: r = 0 exactly, not cos^{1/n} of a
            // rounded pi/2, which for n > 1 would miss a visible arc piece
            const double r = (i == samples - 1) ? 0.0 : curves::spiral_radius(fam, p);
            cum = spiral_arc_length(fam, r, 1.0, cfg);
        } else {
            cum = lame_sector_area(fam, p, cfg);
        }
        table[i] = ProfilePoint{p, cum};
    }
    table.front() = ProfilePoint{0.0, 0.0};
    for (int i = 1; i < samples; ++i)
        if (!(table[i].cumulative > table[i - 1].cumulative))
            throw ConvergenceError("cumulative_profile: table not strictly monotone");
    return table;
}

}  // namespace quadrature
}  // namespace lamespiral
