#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <vector>

namespace sbc {

enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). With Execution::Parallel the iterations are
/// spread over OpenMP threads. If any iteration throws, the exception of the
/// lowest index is rethrown, so error reporting does not depend on scheduling.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    std::exception_ptr first;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::Parallel && count > 1)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(sbc_for_each_index)
            {
                if (static_cast<std::size_t>(i) < first_index) {
                    first_index = static_cast<std::size_t>(i);
                    first = std::current_exception();
                }
            }
        }
    }
    if (first) std::rethrow_exception(first);
}

/// Neumaier-compensated sum in index order; deterministic.
inline double compensated_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        const double t = s + x;
        c += (std::abs(s) >= std::abs(x)) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

}  // namespace sbc
