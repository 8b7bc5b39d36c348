#pragma once

#include <cstddef>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton {

// n points covering [lo, hi] with both endpoints included.
inline std::vector<double> closed_grid(std::size_t n, double lo, double hi) {
    if (n == 0) throw InputError("closed_grid: empty grid");
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) g[k] = lo + step * static_cast<double>(k);
    return g;
}

// n points covering one period [0, period), endpoint excluded. Exactness of
// the cosine/sine projections in cosine_fit requires this grid with n >= 3.
inline std::vector<double> periodic_grid(std::size_t n, double period) {
    if (n == 0) throw InputError("periodic_grid: empty grid");
    std::vector<double> g(n);
    const double step = period / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = step * static_cast<double>(k);
    return g;
}

} // namespace biphoton
