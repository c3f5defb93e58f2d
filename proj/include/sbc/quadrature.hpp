#pragma once

#include <cstddef>
#include <vector>

namespace sbc {

/// One-dimensional Gauss rule on [0,1] for the weight xi^eta.
struct Rule1D {
    std::vector<double> nodes;    // strictly increasing, inside (0,1)
    std::vector<double> weights;  // positive, weight function absorbed
    double eta = 0.0;

    std::size_t size() const { return nodes.size(); }
};

/// Tensor product of two 1-D rules. Flattened index k = it * |xi| + ixi.
struct Rule2D {
    Rule1D xi_rule;
    Rule1D t_rule;

    std::size_t size() const { return xi_rule.size() * t_rule.size(); }
    double xi(std::size_t k) const { return xi_rule.nodes[k % xi_rule.size()]; }
    double t(std::size_t k) const { return t_rule.nodes[k / xi_rule.size()]; }
    double weight(std::size_t k) const {
        return xi_rule.weights[k % xi_rule.size()] * t_rule.weights[k / xi_rule.size()];
    }
};

/// n-point Gauss-Legendre rule on [0,1]; exact to degree 2n-1.
Rule1D gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [0,1] with weight xi^eta, eta > -1.
Rule1D gauss_jacobi_unit(int n, double eta);

/// Memoized variants; thread-safe, return the same values as the direct calls.
const Rule1D& cached_gauss_legendre(int n);
const Rule1D& cached_gauss_jacobi_unit(int n, double eta);

Rule2D tensor(const Rule1D& xi, const Rule1D& t);

}  // namespace sbc
