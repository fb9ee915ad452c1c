#pragma once

#include <string>

#include "lamespiral/curves.hpp"
#include "lamespiral/quadrature.hpp"

namespace lamespiral {
namespace relations {

/// Matched parameters of the sector/arc correspondence:
///   T = tan(alpha) in [0,1],  R^n = 2T^n/(1 + T^{2n}),  beta = arccos(R^n)/n.
/// R >= T on [0,1] with equality only at the endpoints.
struct SiegelTriple {
    double t_param;
    double r_param;
    double beta;
};

/// One verified identity. pass holds iff abs_err <= tol or rel_err <= tol;
/// the absolute branch matters for identities passing through zero.
struct RelationReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 1e-9;
    bool pass = false;
};

RelationReport make_report(std::string name, double lhs, double rhs, double tol = 1e-9);

SiegelTriple siegel_map(const curves::CurveFamily& fam, double t_param);

/// T = tan(alpha) for alpha in [0, pi/4].
SiegelTriple sector_to_arc(const curves::CurveFamily& fam, double alpha);

/// int_0^1 dr/sqrt(1-r^{2n})  vs  2^{1/n} int_0^1 (1-x^{2n})^{1/(2n)} dx.
RelationReport verify_fundamental(const curves::CurveFamily& fam,
                                  const quadrature::QuadratureConfig& cfg = {},
                                  double tol = 1e-9);

/// int_0^R dr/sqrt(1-r^{2n})  vs  2^{1/n} int_0^T dv/(1+v^{2n})^{1/n}.
RelationReport verify_siegel(const curves::CurveFamily& fam, double t_param,
                             const quadrature::QuadratureConfig& cfg = {},
                             double tol = 1e-9);

/// Spiral arc over the polar sector [beta, pi/(2n)]  vs  2^{1+1/n} x the
/// Lame sector area over [0, alpha].
RelationReport verify_sector_arc(const curves::CurveFamily& fam, double alpha,
                                 const quadrature::QuadratureConfig& cfg = {},
                                 double tol = 1e-9);

/// Direct quadrature of the superellipse area vs the closed form.
RelationReport verify_superellipse_area(const curves::Superellipse& se,
                                        const quadrature::QuadratureConfig& cfg = {},
                                        double tol = 1e-9);

/// Spiral arc from radius cos(n alpha) to 1  vs  2 sqrt(n) x the policle
/// sector area over [0, alpha], alpha in (0, pi/(2n)].
RelationReport verify_policle(const curves::CurveFamily& fam, double alpha,
                              const quadrature::QuadratureConfig& cfg = {},
                              double tol = 1e-9);

}  // namespace relations
}  // namespace lamespiral
