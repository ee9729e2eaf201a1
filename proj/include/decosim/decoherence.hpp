#pragma once

#include "decosim/model.hpp"

namespace decosim {

// Attenuation of the interference term, stored as the (nonnegative) exponent
// so a = exp(-exponent) holds by construction.
struct AttenuationPoint {
    double t = 0.0;
    double exponent = 0.0;
    double a = 1.0;
};

// The two-packet probability density split into its pieces:
// P = p1 + p2 + interference (the interference amplitude before the
// oscillatory phase factor).
struct CatDensityParts {
    double p1 = 0.0;
    double p2 = 0.0;
    double interference = 0.0;
};

CatDensityParts cat_density_parts(double x, const CatParams& cat);

// |psi(x, 0)|^2 of the normalized two-packet superposition.
double cat_probability(double x, const CatParams& cat);

// a = exp{- s_d d^2 / (8 sigma^2 (sigma^2 + s_d))}; the engineered-noise case
// in the dissipationless, zero-temperature regime (the caller asserts it).
AttenuationPoint attenuation_engineered(double t, const CatParams& cat, double s_d);

// Free-particle form a = exp{- s0 d^2 / (8 sigma^2 w^2)}.
AttenuationPoint attenuation_free(double t, const CatParams& cat, double s0, double w2);

// Decay scale of the long-time exponential law, 16 sigma^4 m^2 omega0^2 / (d^2 g).
double tau0(const OscillatorParams& osc, const CatParams& cat, double g);

// a = exp{-(t/tau0)(1 - sin(2 omega0 t)/(2 omega0 t))}, the linearized regime.
AttenuationPoint attenuation_scaled(double t, const OscillatorParams& osc, const CatParams& cat,
                                    double g);

enum class AsymptoticKind { small_time, long_time };

// small_time: exp{-g d^2 t^3 / (24 m^2 sigma^4)}; long_time: exp{-t/tau0}.
AttenuationPoint attenuation_asymptotic(double t, const OscillatorParams& osc,
                                        const CatParams& cat, double g, AsymptoticKind kind);

struct RootControls {
    double rel_tol = 1e-10;
    int max_doublings = 200;
};

enum class DecoherenceStatus { converged, never_decoheres };

struct DecoherenceTimes {
    double tau0 = 0.0;
    double tau_d = 0.0;  // NaN when the plateau never reaches 1/e
    DecoherenceStatus status = DecoherenceStatus::converged;
};

// Smallest t with a(t) <= 1/e for the engineered-noise attenuation with the
// dissipationless spreading, found by bracket doubling plus bisection. The
// exponent is nondecreasing and saturates at d^2/(8 sigma^2); when that
// plateau stays at or below 1 the superposition never decoheres, which is an
// explicit result state rather than an error.
DecoherenceTimes decoherence_time(const OscillatorParams& osc, const CatParams& cat, double g,
                                  const RootControls& ctl = {});

}  // namespace decosim
