#pragma once

#include "sbc/cubature.hpp"

namespace sbc {

/// Positively homogeneous field: h(lambda x) = lambda^q h(x).
class HomogeneousField {
public:
    /// Spot-checks homogeneity on 16 pseudo-random (x, lambda) pairs; throws invalid_argument on mismatch
    /// or when q <= -2.
    HomogeneousField(ScalarField h, double q);

    double operator()(Point2 x) const { return h_(x); }
    double degree() const { return q_; }
    const ScalarField& field() const { return h_; }

private:
    ScalarField h_;
    double q_;
};

/// (1/(2+q)) sum_i int h(c_i) (c_i . c_i'^perp) dt with n_t Gauss-Legendre points per curve.
double hni_integrate(const Region& r, const HomogeneousField& hf, int n_t);

/// (1/(2+q)) sum_i ell_i int_edge h ds; all curves must be segments.
double polygon_hni(const Region& r, const HomogeneousField& hf, int n_t);

}  // namespace sbc
