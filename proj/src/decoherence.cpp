#include "decosim/decoherence.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "decosim/spreading.hpp"

namespace decosim {

namespace {

AttenuationPoint from_exponent(double t, double exponent) {
    AttenuationPoint p;
    p.t = t;
    p.exponent = exponent;
    p.a = std::exp(-exponent);
    return p;
}

double one_minus_sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 0.1) {
        const double x2 = x * x;
        return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return 1.0 - std::sin(x) / x;
}

}  // namespace

CatDensityParts cat_density_parts(double x, const CatParams& cat) {
    const double sigma2 = cat.sigma * cat.sigma;
    const double overlap = std::exp(-cat.d * cat.d / (8.0 * sigma2));
    const double norm2 =
        1.0 / (std::sqrt(8.0 * std::numbers::pi * sigma2) * (1.0 + overlap));
    const double xp = x - 0.5 * cat.d;
    const double xm = x + 0.5 * cat.d;
    CatDensityParts parts;
    parts.p1 = norm2 * std::exp(-xp * xp / (2.0 * sigma2));
    parts.p2 = norm2 * std::exp(-xm * xm / (2.0 * sigma2));
    parts.interference = 2.0 * norm2 * std::exp(-(xp * xp + xm * xm) / (4.0 * sigma2));
    return parts;
}

double cat_probability(double x, const CatParams& cat) {
    const CatDensityParts parts = cat_density_parts(x, cat);
    return parts.p1 + parts.p2 + parts.interference;
}

AttenuationPoint attenuation_engineered(double t, const CatParams& cat, double s_d) {
    if (s_d < 0.0) throw std::invalid_argument("s_d must be >= 0");
    const double sigma2 = cat.sigma * cat.sigma;
    const double exponent = s_d * cat.d * cat.d / (8.0 * sigma2 * (sigma2 + s_d));
    return from_exponent(t, exponent);
}

AttenuationPoint attenuation_free(double t, const CatParams& cat, double s0, double w2) {
    if (s0 < 0.0) throw std::invalid_argument("s0 must be >= 0");
    if (!(w2 > 0.0)) throw std::invalid_argument("w2 must be > 0");
    const double sigma2 = cat.sigma * cat.sigma;
    return from_exponent(t, s0 * cat.d * cat.d / (8.0 * sigma2 * w2));
}

double tau0(const OscillatorParams& osc, const CatParams& cat, double g) {
    if (!(g > 0.0)) throw std::domain_error("g must be > 0");
    const double sigma2 = cat.sigma * cat.sigma;
    return 16.0 * sigma2 * sigma2 * osc.m * osc.m * osc.omega0 * osc.omega0 / (cat.d * cat.d * g);
}

AttenuationPoint attenuation_scaled(double t, const OscillatorParams& osc, const CatParams& cat,
                                    double g) {
    if (!(osc.omega0 > 0.0)) throw std::domain_error("omega0 must be > 0");
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    const double exponent = t / tau0(osc, cat, g) * one_minus_sinc(2.0 * osc.omega0 * t);
    return from_exponent(t, exponent);
}

AttenuationPoint attenuation_asymptotic(double t, const OscillatorParams& osc,
                                        const CatParams& cat, double g, AsymptoticKind kind) {
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (kind == AsymptoticKind::small_time) {
        const double sigma2 = cat.sigma * cat.sigma;
        const double exponent =
            g * cat.d * cat.d * t * t * t / (24.0 * osc.m * osc.m * sigma2 * sigma2);
        return from_exponent(t, exponent);
    }
    return from_exponent(t, t / tau0(osc, cat, g));
}

DecoherenceTimes decoherence_time(const OscillatorParams& osc, const CatParams& cat, double g,
                                  const RootControls& ctl) {
    if (!(g > 0.0)) throw std::domain_error("g must be > 0");
    if (!(osc.omega0 > 0.0)) throw std::domain_error("omega0 must be > 0");

    DecoherenceTimes result;
    result.tau0 = tau0(osc, cat, g);

    const double sigma2 = cat.sigma * cat.sigma;
    const double plateau_exponent = cat.d * cat.d / (8.0 * sigma2);
    // separations within rounding of the threshold d = 2 sqrt(2) sigma only
    // reach 1/e asymptotically
    if (plateau_exponent <= 1.0 + 1e-12) {
        result.status = DecoherenceStatus::never_decoheres;
        result.tau_d = std::numeric_limits<double>::quiet_NaN();
        return result;
    }

    const auto exponent = [&](double t) {
        return attenuation_engineered(t, cat, msd_driven_nodissip(t, osc, g)).exponent;
    };

    double hi = result.tau0;
    int doublings = 0;
    while (exponent(hi) < 1.0) {
        hi *= 2.0;
        if (++doublings > ctl.max_doublings) {
            throw std::runtime_error("decoherence-time bracket did not close");
        }
    }
    double lo = 0.0;
    while (hi - lo > ctl.rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (exponent(mid) < 1.0 ? lo : hi) = mid;
    }
    result.tau_d = 0.5 * (lo + hi);
    return result;
}

}  // namespace decosim
