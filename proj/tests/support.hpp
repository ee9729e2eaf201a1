#pragma once

// Test-side numerical helpers, kept independent of the library quadrature so
// the checks exercise a second computational route.

#include <cmath>
#include <functional>

namespace testutil {

// composite Simpson rule with n (even) panels
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * h / 3.0;
}

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testutil
