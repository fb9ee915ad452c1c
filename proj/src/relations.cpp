#include "lamespiral/relations.hpp"

#include <algorithm>
#include <cmath>

#include "lamespiral/specfun.hpp"

namespace lamespiral {
namespace relations {

RelationReport make_report(std::string name, double lhs, double rhs, double tol) {
    RelationReport rep;
    rep.name = std::move(name);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.abs_err = std::fabs(lhs - rhs);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    rep.rel_err = (scale > 0.0) ? rep.abs_err / scale : 0.0;
    rep.tol = tol;
    rep.pass = (rep.abs_err <= tol) || (rep.rel_err <= tol);
    return rep;
}

SiegelTriple siegel_map(const curves::CurveFamily& fam, double t_param) {
    if (!(t_param >= 0.0) || t_param > 1.0)
        throw std::domain_error("siegel_map: T must lie in [0, 1]");
    const double n = fam.n;
    const double tn = std::pow(t_param, n);
    const double rn = std::clamp(2.0 * tn / (1.0 + tn * tn), 0.0, 1.0);
    const double r = std::pow(rn, 1.0 / n);
    const double beta = std::acos(rn) / n;
    return SiegelTriple{t_param, r, beta};
}

SiegelTriple sector_to_arc(const curves::CurveFamily& fam, double alpha) {
    if (alpha < 0.0 || alpha > M_PI / 4.0 + 1e-12)
        throw std::domain_error("sector_to_arc: alpha outside [0, pi/4]");
    return siegel_map(fam, std::min(std::tan(alpha), 1.0));
}

RelationReport verify_fundamental(const curves::CurveFamily& fam,
                                  const quadrature::QuadratureConfig& cfg, double tol) {
    const double lhs = quadrature::spiral_arc_length(fam, 0.0, 1.0, cfg);
    const double rhs = std::exp2(1.0 / fam.n) * quadrature::lame_quadrant_area(fam, cfg);
    return make_report("fundamental", lhs, rhs, tol);
}

RelationReport verify_siegel(const curves::CurveFamily& fam, double t_param,
                             const quadrature::QuadratureConfig& cfg, double tol) {
    const SiegelTriple st = siegel_map(fam, t_param);
    const double lhs = quadrature::spiral_arc_length(fam, 0.0, st.r_param, cfg);
    // a = (1/2) int_0^T dv/(1+v^{2n})^{1/n} is the Lame sector area at
    // alpha = arctan T, so the right side is 2^{1/n} * 2a.
    const double a = quadrature::lame_sector_area(fam, std::atan(t_param), cfg);
    const double rhs = std::exp2(1.0 / fam.n) * 2.0 * a;
    return make_report("siegel", lhs, rhs, tol);
}

RelationReport verify_sector_arc(const curves::CurveFamily& fam, double alpha,
                                 const quadrature::QuadratureConfig& cfg, double tol) {
    const SiegelTriple st = sector_to_arc(fam, alpha);
    const double lhs = quadrature::spiral_arc_length(fam, 0.0, st.r_param, cfg);
    const double rhs =
        std::exp2(1.0 + 1.0 / fam.n) * quadrature::lame_sector_area(fam, alpha, cfg);
    return make_report("sector-arc", lhs, rhs, tol);
}

RelationReport verify_superellipse_area(const curves::Superellipse& se,
                                        const quadrature::QuadratureConfig& cfg,
                                        double tol) {
    const double lhs = 4.0 * se.a * se.b *
                       quadrature::lame_quadrant_area(curves::CurveFamily(se.alpha_exp / 2.0), cfg);
    const double rhs =
        std::exp2(1.0 - 2.0 / se.alpha_exp) * specfun::varpi(se.alpha_exp) * se.a * se.b;
    return make_report("superellipse-area", lhs, rhs, tol);
}

RelationReport verify_policle(const curves::CurveFamily& fam, double alpha,
                              const quadrature::QuadratureConfig& cfg, double tol) {
    const double upper = M_PI / (2.0 * fam.n);
    if (!(alpha > 0.0) || alpha > upper + 1e-12)
        throw std::domain_error("verify_policle: alpha outside (0, pi/(2n)]");
    // C sits at radius R2 = cos(n alpha) on the spiral; l runs from C to (1,0).
    const double r2 = std::clamp(std::cos(fam.n * std::min(alpha, upper)), 0.0, 1.0);
    const double lhs = quadrature::spiral_arc_length(fam, r2, 1.0, cfg);
    const double rhs =
        2.0 * std::sqrt(fam.n) * quadrature::policle_sector_area(fam, alpha, cfg);
    return make_report("policle", lhs, rhs, tol);
}

}  // namespace relations
}  // namespace lamespiral
