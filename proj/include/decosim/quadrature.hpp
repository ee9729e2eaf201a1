#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace decosim {

struct QuadratureControls {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Integrand = std::function<double(double)>;

// Adaptive 15-point Gauss-Kronrod subdivision on [a, b].
double integrate(const Integrand& f, double a, double b, const QuadratureControls& ctl = {});

// Same, seeded with interior breakpoints (sorted, clipped to (a, b)).
double integrate(const Integrand& f, double a, double b, std::vector<double> breakpoints,
                 const QuadratureControls& ctl = {});

// Integrates a decaying (possibly oscillatory) integrand over [a, inf).
// Works in geometrically growing blocks; when osc_scale > 0 the integrand is
// assumed to oscillate like cos(osc_scale * x) and block widths are capped so
// each block stays resolvable within the subdivision budget. Stops once two
// consecutive blocks contribute less than a quarter of the target tolerance.
double integrate_decaying_tail(const Integrand& f, double a, double osc_scale,
                               const QuadratureControls& ctl = {});

}  // namespace decosim
