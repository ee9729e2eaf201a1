#pragma once

#include <complex>

#include "decosim/model.hpp"
#include "decosim/quadrature.hpp"

namespace decosim {

// Mode frequency of the damped oscillator, tagged by branch:
//   underdamped -> value = omega1 = sqrt(omega0^2 - gamma^2/4)
//   overdamped  -> value = kappa  = sqrt(gamma^2/4 - omega0^2)
//   critical    -> value = 0
struct ModeFrequency {
    DampingRegime branch;
    double value;
};

// Linear response function 1 / (K - m w^2 - i m gamma w), evaluated just
// above the real axis. Throws std::domain_error at a pole (gamma = 0 with
// w^2 = omega0^2, which covers the free undamped particle at w = 0).
std::complex<double> alpha(double omega, const OscillatorParams& osc, const BathParams& bath);

ModeFrequency omega1(const OscillatorParams& osc, const BathParams& bath);

// Impulse response (displacement per unit impulse) for t >= 0.
double green_closed(double t, const OscillatorParams& osc, const BathParams& bath);

// Impulse response by numerical inversion of the response function,
// (2/pi) Int_0^inf Im alpha(w) sin(w t) dw. Requires t > 0 and gamma > 0
// (absolute integrability). Integrates to the cutoff max(10 omega0, 20/t,
// 10 gamma); past it, an analytic power-law bound decides whether the
// oscillatory tail still matters and block extension picks it up if so.
double green_numeric(double t, const OscillatorParams& osc, const BathParams& bath,
                     const QuadratureControls& ctl = {1e-11, 1e-9, 2000});

}  // namespace decosim
