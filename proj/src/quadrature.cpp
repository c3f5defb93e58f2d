#include "sbc/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace sbc {

namespace {

// Recurrence and Newton run in long double; near the endpoints 1 - x^2 and the
// derivative lose several digits in double.
using Wide = long double;

struct JacobiEval {
    Wide pn;   // P_n^{(a,b)}(x)
    Wide pn1;  // P_{n-1}^{(a,b)}(x)
    Wide dpn;  // d/dx P_n^{(a,b)}(x)
};

// Three-term recurrence on [-1,1] with weight (1-x)^a (1+x)^b.
JacobiEval jacobi_recurrence(int n, Wide a, Wide b, Wide x) {
    const Wide ab = a + b;
    Wide p_prev = 1.0L;
    Wide p = 0.5L * (a - b + (2.0L + ab) * x);
    for (int j = 2; j <= n; ++j) {
        const Wide p_prev2 = p_prev;
        p_prev = p;
        const Wide s = 2.0L * j + ab;
        const Wide c1 = 2.0L * j * (j + ab) * (s - 2.0L);
        const Wide c2 = (s - 1.0L) * (a * a - b * b + s * (s - 2.0L) * x);
        const Wide c3 = 2.0L * (j - 1 + a) * (j - 1 + b) * s;
        p = (c2 * p_prev - c3 * p_prev2) / c1;
    }
    const Wide s = 2.0L * n + ab;
    const Wide dp = (n * (a - b - s * x) * p + 2.0L * (n + a) * (n + b) * p_prev) / (s * (1.0L - x) * (1.0L + x));
    return {p, p_prev, dp};
}

// Gauss-Jacobi for weight (1+x)^b on [-1,1], returned mapped to xi = (1+x)/2 with
// weight xi^b on [0,1], nodes in decreasing order.
void jacobi_nodes(int n, double b_in, std::vector<double>& x, std::vector<double>& w) {
    constexpr Wide a = 0.0L;
    const Wide b = b_in, ab = a + b;
    std::vector<Wide> z_all(n, 0.0L), w_all(n, 0.0L);
    if (n == 1) z_all[0] = (b - a) / (2.0L + ab);
    for (int k = 0; k < n; ++k) {
        Wide z = z_all[k];
        if (n > 1) {
            // Chebyshev-type asymptotic guess; roots come out in decreasing order.
            const Wide theta = std::numbers::pi_v<Wide> * (4.0L * (k + 1) - 1.0L + 2.0L * a) / (4.0L * n + 2.0L * ab + 2.0L);
            z = std::cos(theta);
            for (int it = 0; it < 100; ++it) {
                const JacobiEval e = jacobi_recurrence(n, a, b, z);
                // Deflate the roots already found so Newton cannot revisit them.
                Wide defl = 0.0L;
                for (int j = 0; j < k; ++j) defl += 1.0L / (z - z_all[j]);
                const Wide dz = e.pn / (e.dpn - e.pn * defl);
                z -= dz;
                if (std::abs(dz) < 1e-18L) break;
            }
        }
        const JacobiEval e = jacobi_recurrence(n, a, b, z);
        z_all[k] = z;
        // Up to a constant shared by all nodes; fixed below by the zeroth moment.
        w_all[k] = 1.0L / (e.dpn * e.pn1);
    }
    Wide total = 0.0L;
    for (Wide v : w_all) total += v;
    const Wide mass = 1.0L / (b + 1.0L);
    x.resize(n);
    w.resize(n);
    for (int k = 0; k < n; ++k) {
        x[k] = static_cast<double>(0.5L * (1.0L + z_all[k]));
        w[k] = static_cast<double>(w_all[k] * (mass / total));
    }
}

}  // namespace

Rule1D gauss_jacobi_unit(int n, double eta) {
    if (n < 1) throw std::invalid_argument("quadrature order must be >= 1, got " + std::to_string(n));
    if (!(eta > -1.0))
        throw std::invalid_argument("Gauss-Jacobi exponent must exceed -1 (weight not integrable)");
    std::vector<double> x, w;
    jacobi_nodes(n, eta, x, w);
    Rule1D r;
    r.eta = eta;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;  // ascending in xi
        r.nodes[k] = x[src];
        r.weights[k] = w[src];
    }
    return r;
}

Rule1D gauss_legendre(int n) { return gauss_jacobi_unit(n, 0.0); }

namespace {

struct RuleCache {
    std::mutex mu;
    std::map<std::pair<int, double>, std::unique_ptr<Rule1D>> rules;

    const Rule1D& get(int n, double eta) {
        std::lock_guard lock(mu);
        auto& slot = rules[{n, eta}];
        if (!slot) slot = std::make_unique<Rule1D>(gauss_jacobi_unit(n, eta));
        return *slot;
    }
};

RuleCache& cache() {
    static RuleCache c;
    return c;
}

}  // namespace

const Rule1D& cached_gauss_legendre(int n) { return cached_gauss_jacobi_unit(n, 0.0); }

const Rule1D& cached_gauss_jacobi_unit(int n, double eta) {
    if (n < 1) throw std::invalid_argument("quadrature order must be >= 1, got " + std::to_string(n));
    if (!(eta > -1.0))
        throw std::invalid_argument("Gauss-Jacobi exponent must exceed -1 (weight not integrable)");
    return cache().get(n, eta);
}

Rule2D tensor(const Rule1D& xi, const Rule1D& t) { return Rule2D{xi, t}; }

}  // namespace sbc
