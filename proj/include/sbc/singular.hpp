#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sbc/cubature.hpp"

namespace sbc {

namespace radial {
struct None {};
struct GeneralizedSB {
    double alpha = 1.0;
};
struct GaussJacobi {};
}  // namespace radial

using RadialStrategy = std::variant<radial::None, radial::GeneralizedSB, radial::GaussJacobi>;

enum class TTransform { None, R1, R2, R3 };

struct SingularSpec {
    Point2 xc;
    double beta = 1.0;
    RadialStrategy radial = radial::GaussJacobi{};
    TTransform t_transform = TTransform::None;
};

/// Integrand g(x) / |x - xc|^beta with g smooth.
struct SplitIntegrand {
    ScalarField g;
    double beta = 1.0;
};

/// Smallest integer alpha with alpha (2 - beta) a positive integer.
int select_alpha(double beta);

Point2 gsb_map(const CurvedTriangle& tri, double alpha, double xi, double t);
double gsb_jacobian(const CurvedTriangle& tri, double alpha, double xi, double t);

/// eta = alpha (2 - beta) - 1; throws when eta <= -1.
double radial_exponent(double beta, double alpha);

/// Edge-parameter change of variables tau -> tau~ for a segment at signed distance ell.
struct TTransformMap {
    TTransform which = TTransform::R1;
    double ell = 1.0;
    double lo = 0.0;  // tau~(tau1)
    double hi = 0.0;  // tau~(tau2)

    double forward(double tau) const;
    double inverse(double tau_tilde) const;
    /// d tau / d tau~ at tau~.
    double dtau(double tau_tilde) const;
};

/// Throws invalid_argument when ell == 0 or which == None.
TTransformMap t_transform_bounds(const PolygonEdgeData& edge, TTransform which);

struct SingularDiagnostics {
    std::vector<std::string> warnings;
};

/// Rule whose weights absorb |x - xc|^-beta and the radial Jacobian: sum w g(x) approximates the integral.
/// For beta >= 2 (xc outside) the radial rule runs outward from each edge, so g is also sampled outside r.
/// That cap contributes an angle-measure term per edge: R2 integrates it spectrally, R3 only algebraically
/// when an edge passes close to xc.
CubatureRule generate_singular_rule(const Region& r, const SingularSpec& spec, int n_xi, int n_t,
                                    SingularDiagnostics* diag = nullptr, Execution exec = Execution::Parallel);

/// f.beta must equal spec.beta.
double integrate_singular(const Region& r, const SplitIntegrand& f, const SingularSpec& spec, int n_xi, int n_t,
                          SingularDiagnostics* diag = nullptr, Execution exec = Execution::Parallel);

/// Winding-number containment for polygons; points within tol of an edge count as inside.
bool polygon_contains_closed(const Region& r, Point2 p, double tol);

}  // namespace sbc
