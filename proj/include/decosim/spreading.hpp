#pragma once

#include <vector>

#include "decosim/model.hpp"
#include "decosim/quadrature.hpp"

namespace decosim {

// Mean-square displacement split into its thermal and driven parts.
struct SpreadingResult {
    double t = 0.0;
    double s_d = 0.0;
    double s_0 = 0.0;
    double s_total = 0.0;
};

// Stationary autocorrelation <f(t')f(t'')> of the engineered force, as a
// function of the lag. Even by construction (evaluated at |lag|).
struct CorrelationKernel {
    enum class Kind { delta, exponential, tabulated };

    Kind kind = Kind::delta;
    double g = 0.0;      // delta strength, and the area of the exponential
    double tau_c = 0.0;  // exponential correlation time
    std::vector<double> lags;    // tabulated: nonnegative, strictly increasing
    std::vector<double> values;  // zero beyond the last lag

    static CorrelationKernel delta(double strength);
    static CorrelationKernel exponential(double area, double correlation_time);
    static CorrelationKernel tabulated(std::vector<double> lags, std::vector<double> values);

    double operator()(double lag) const;  // not meaningful for Kind::delta
};

// Driven mean-square displacement for white noise of strength g.
//
// Closed form (gamma > 0, omega0 > 0): the overdamped branch follows by
// sin -> sinh continuation and near the critical point a Taylor expansion in
// omega1^2 avoids the 0/0 cancellation.
double msd_driven_closed(double t, const OscillatorParams& osc, const BathParams& bath, double g);

// Dissipationless limit (g/(2 m^2 omega0^2)) t (1 - sin(2 omega0 t)/(2 omega0 t)).
double msd_driven_nodissip(double t, const OscillatorParams& osc, double g);

// Defining integral g Int_0^t G^2, by adaptive quadrature over the closed-form
// Green function. Valid for any damping, including gamma = 0.
double msd_driven_quadrature(double t, const OscillatorParams& osc, const BathParams& bath,
                             double g, const QuadratureControls& ctl = {1e-14, 1e-11, 2000});

// Double integral Int Int G(t-t') G(t-t'') k(t'-t'') dt' dt'' by iterated
// adaptive quadrature; the delta kernel reduces to the single integral.
double msd_driven_general(double t, const OscillatorParams& osc, const BathParams& bath,
                          const CorrelationKernel& kernel,
                          const QuadratureControls& ctl = {1e-12, 1e-8, 2000});

// Position autocorrelation of the thermal motion,
// C0(t) = (hbar/pi) Int_0^inf Im alpha(w) coth(hbar w / 2 kB T) cos(w t) dw.
// Requires gamma > 0 and omega0 > 0; at T = 0 the coth factor is 1.
double thermal_correlation(double t, const OscillatorParams& osc, const BathParams& bath,
                           const Units& units = {},
                           const QuadratureControls& ctl = {1e-10, 1e-9, 2000});

// Thermal mean-square displacement s0(t), computed from the direct
// (1 - cos w t) form of the fluctuation-dissipation integral.
double msd_thermal(double t, const OscillatorParams& osc, const BathParams& bath,
                   const Units& units = {}, const QuadratureControls& ctl = {1e-10, 1e-9, 2000});

// Same quantity via 2 (C0(0) - C0(t)); the two routes agree within combined
// quadrature tolerances.
double msd_thermal_via_correlation(double t, const OscillatorParams& osc, const BathParams& bath,
                                   const Units& units = {},
                                   const QuadratureControls& ctl = {1e-10, 1e-9, 2000});

// s(t) = s0(t) + s_d(t). With gamma = 0 there is no fluctuation force, so the
// thermal part is identically zero and the driven part uses the
// dissipationless form.
SpreadingResult msd_total(double t, const OscillatorParams& osc, const BathParams& bath, double g,
                          const Units& units = {});

// Free-particle packet width w^2(t) = sigma^2 + (hbar t)^2/(2 m sigma)^2 + s0.
// Only the dissipationless branch is supported: omega0 and gamma must be 0.
double free_packet_width(double t, const OscillatorParams& osc, const BathParams& bath,
                         const CatParams& cat, double s0, const Units& units = {});

}  // namespace decosim
