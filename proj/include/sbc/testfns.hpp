#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sbc/cubature.hpp"

namespace sbc {

/// Bivariate polynomial as a list of monomials c x^i y^j.
class Polynomial {
public:
    struct Term {
        double coef;
        int i;
        int j;
    };

    Polynomial() = default;
    explicit Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

    const std::vector<Term>& terms() const { return terms_; }
    double operator()(Point2 p) const;
    int degree() const;
    /// Terms of total degree k only.
    Polynomial homogeneous_part(int k) const;

private:
    std::vector<Term> terms_;
};

struct SingularInfo {
    Point2 xc;
    double beta;
    ScalarField numerator;  // f = numerator / |x - xc|^beta
};

struct NamedFunction {
    std::string name;
    std::string description;
    ScalarField field;
    std::optional<Polynomial> polynomial;
    std::optional<double> homogeneous_degree;
    std::optional<SingularInfo> singular;
};

struct NamedGeometry {
    std::string name;
    std::string description;
    std::function<Region()> make;
};

const std::vector<NamedFunction>& builtin_functions();
const std::vector<NamedGeometry>& builtin_geometries();

/// Throws NotFoundError listing the registered names.
const NamedFunction& lookup_function(const std::string& name);
const NamedGeometry& lookup_geometry(const std::string& name);
std::variant<const NamedFunction*, const NamedGeometry*> lookup(const std::string& name);

/// Polygon from vertices (counterclockwise), as segments.
Region polygon(const std::vector<Point2>& vertices);
/// Translate the bounding-box minimum to the origin and scale by 1 / max(width, height).
Region franke_rescaled(const Region& r);

// X-FEM crack-tip integrands.

enum class XfemElement { Omega1, Omega2 };

/// sqrt(r) sin(theta / 2) about the crack tip, theta in [-pi, pi].
double crack_enrichment(Point2 x, Point2 tip);

/// Bilinear shape functions on [-1,1]^2: N1..N4 at (xi, eta).
std::array<double, 4> bilinear_shape(double xi, double eta);

/// Newton inversion of the bilinear map; returns (xi, eta).
Vec2 inverse_bilinear(const std::array<Point2, 4>& nodes, Point2 x);

struct XfemProblem {
    std::array<Point2, 4> nodes;
    Point2 tip;
    /// Element boundary with vertices inserted where the crack ray theta = pi meets it.
    Region region;
    /// K_IJ integrands, index 4 * I + J.
    std::vector<ScalarField> integrands;
    /// sqrt(|x - tip|) times the integrand; smooth inside each wedge seen from the tip.
    std::vector<ScalarField> numerators;
    double beta = 0.5;
};

/// Crack tip at (dx, 1/2): dx to the right of the shared edge x = 0, at mid-height.
XfemProblem xfem_integrands(XfemElement element, double dx);

}  // namespace sbc
