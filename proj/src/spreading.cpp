#include "decosim/spreading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "decosim/response.hpp"

namespace decosim {

CorrelationKernel CorrelationKernel::delta(double strength) {
    if (!(strength >= 0.0)) throw std::invalid_argument("g must be >= 0");
    CorrelationKernel k;
    k.kind = Kind::delta;
    k.g = strength;
    return k;
}

CorrelationKernel CorrelationKernel::exponential(double area, double correlation_time) {
    if (!(area >= 0.0)) throw std::invalid_argument("g must be >= 0");
    if (!(correlation_time > 0.0)) throw std::invalid_argument("tau_c must be > 0");
    CorrelationKernel k;
    k.kind = Kind::exponential;
    k.g = area;
    k.tau_c = correlation_time;
    return k;
}

CorrelationKernel CorrelationKernel::tabulated(std::vector<double> lags, std::vector<double> values) {
    if (lags.size() != values.size() || lags.empty()) {
        throw std::invalid_argument("kernel table must be nonempty with matching lengths");
    }
    if (lags.front() != 0.0) throw std::invalid_argument("kernel table must start at lag 0");
    for (std::size_t i = 1; i < lags.size(); ++i) {
        if (!(lags[i] > lags[i - 1])) {
            throw std::invalid_argument("kernel table lags must be strictly increasing");
        }
    }
    CorrelationKernel k;
    k.kind = Kind::tabulated;
    k.lags = std::move(lags);
    k.values = std::move(values);
    return k;
}

double CorrelationKernel::operator()(double lag) const {
    const double x = std::abs(lag);
    switch (kind) {
        case Kind::delta:
            throw std::logic_error("delta kernel has no pointwise value");
        case Kind::exponential:
            return g / (2.0 * tau_c) * std::exp(-x / tau_c);
        case Kind::tabulated: {
            if (x >= lags.back()) return x == lags.back() ? values.back() : 0.0;
            const auto it = std::upper_bound(lags.begin(), lags.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - lags.begin());
            const double w = (x - lags[i - 1]) / (lags[i] - lags[i - 1]);
            return values[i - 1] + w * (values[i] - values[i - 1]);
        }
    }
    return 0.0;
}

namespace {

// 1 - sin(x)/x without cancellation near x = 0.
double one_minus_sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 0.1) {
        const double x2 = x * x;
        return x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return 1.0 - std::sin(x) / x;
}

void require_driven_closed_domain(const OscillatorParams& osc, const BathParams& bath) {
    if (!(osc.omega0 > 0.0)) throw std::domain_error("omega0 must be > 0 for the closed form");
    if (!(bath.gamma > 0.0)) {
        throw std::domain_error("gamma must be > 0 for the closed form; use the dissipationless form");
    }
}

}  // namespace

double msd_driven_closed(double t, const OscillatorParams& osc, const BathParams& bath, double g) {
    require_driven_closed_domain(osc, bath);
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (t == 0.0 || g == 0.0) return 0.0;

    const double m = osc.m;
    const double w0sq = osc.omega0 * osc.omega0;
    const double gamma = bath.gamma;
    const double u = w0sq - 0.25 * gamma * gamma;  // omega1^2, either sign
    const double prefactor = g / (4.0 * m * m * gamma * w0sq);
    const double decay = std::exp(-gamma * t);
    const double growth = -std::expm1(-gamma * t);  // 1 - e^(-gamma t)

    if (std::abs(u) <= 1e-5 * w0sq) {
        // near-critical: expand the bracket/u quotient in powers of u
        const double t2 = t * t;
        const double p0 = gamma * gamma * t2 + 2.0 * gamma * t;
        const double p1 = -(gamma * gamma * t2 * t2 / 3.0 + 4.0 * gamma * t * t2 / 3.0);
        const double p2 = 2.0 * gamma * gamma * t2 * t2 * t2 / 45.0 + 4.0 * gamma * t2 * t2 * t / 15.0;
        const double p3 = -(gamma * gamma * t2 * t2 * t2 * t2 / 315.0 +
                            8.0 * gamma * t2 * t2 * t2 * t / 315.0);
        const double series = p0 + u * (p1 + u * (p2 + u * p3));
        return prefactor * (2.0 * growth - decay * series);
    }
    if (u > 0.0) {
        const double w1 = std::sqrt(u);
        const double s = std::sin(w1 * t);
        const double bracket = 2.0 * u * growth -
                               decay * (gamma * gamma * s * s + gamma * w1 * std::sin(2.0 * w1 * t));
        return prefactor * bracket / u;
    }
    // overdamped: exp(-gamma t) sinh^2 and sinh terms in overflow-safe form
    const double kappa = std::sqrt(-u);
    const double up = std::exp((kappa - 0.5 * gamma) * t);
    const double dn = std::exp(-(kappa + 0.5 * gamma) * t);
    const double sinh2 = 0.25 * (up - dn) * (up - dn);        // e^(-gamma t) sinh^2(kappa t)
    const double sinh_double = 0.5 * (up * up - dn * dn);     // e^(-gamma t) sinh(2 kappa t)
    const double bracket = 2.0 * kappa * kappa * growth -
                           (gamma * gamma * sinh2 + gamma * kappa * sinh_double);
    return prefactor * bracket / (kappa * kappa);
}

double msd_driven_nodissip(double t, const OscillatorParams& osc, double g) {
    if (!(osc.omega0 > 0.0)) throw std::domain_error("omega0 must be > 0");
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (t == 0.0) return 0.0;
    const double w0 = osc.omega0;
    return g / (2.0 * osc.m * osc.m * w0 * w0) * t * one_minus_sinc(2.0 * w0 * t);
}

double msd_driven_quadrature(double t, const OscillatorParams& osc, const BathParams& bath,
                             double g, const QuadratureControls& ctl) {
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (t == 0.0 || g == 0.0) return 0.0;

    std::vector<double> breaks;
    const ModeFrequency w1 = omega1(osc, bath);
    if (w1.branch == DampingRegime::underdamped) {
        const double half_period = std::numbers::pi / w1.value;
        for (double s = half_period; s < t && breaks.size() < 64; s += half_period) {
            breaks.push_back(s);
        }
    }
    const auto integrand = [&](double s) {
        const double G = green_closed(s, osc, bath);
        return g * G * G;
    };
    return integrate(integrand, 0.0, t, std::move(breaks), ctl);
}

double msd_driven_general(double t, const OscillatorParams& osc, const BathParams& bath,
                          const CorrelationKernel& kernel, const QuadratureControls& ctl) {
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (t == 0.0) return 0.0;
    if (kernel.kind == CorrelationKernel::Kind::delta) {
        return msd_driven_quadrature(t, osc, bath, kernel.g);
    }

    QuadratureControls inner = ctl;
    inner.rel_tol = 0.1 * ctl.rel_tol;
    inner.abs_tol = 0.1 * ctl.abs_tol;

    // after u = t - t', the kernel couples lags u - u'; split the inner
    // integral at the diagonal where |u - u'| has its kink / boundary layer
    const auto outer = [&](double u) {
        const double layer =
            kernel.kind == CorrelationKernel::Kind::exponential ? 7.0 * kernel.tau_c : 0.0;
        std::vector<double> breaks = {u};
        if (layer > 0.0) {
            breaks.push_back(u - layer);
            breaks.push_back(u + layer);
        }
        const auto inner_f = [&](double up) {
            return green_closed(up, osc, bath) * kernel(u - up);
        };
        return green_closed(u, osc, bath) * integrate(inner_f, 0.0, t, std::move(breaks), inner);
    };
    return integrate(outer, 0.0, t, ctl);
}

namespace {

double coth_factor(double omega, double kT, double hbar) {
    if (kT <= 0.0) return 1.0;
    const double x = hbar * omega / (2.0 * kT);
    if (x < 1e-4) return 1.0 / x + x / 3.0;
    if (x > 30.0) return 1.0;
    return 1.0 / std::tanh(x);
}

// shared panel seeding for the fluctuation-dissipation integrals: a log-spaced
// ramp resolving the w -> 0 region, splits bracketing the resonance, then a
// block-extended tail past the cutoff
double fd_integral(const Integrand& f, double t, const OscillatorParams& osc,
                   const BathParams& bath, const QuadratureControls& ctl) {
    const double w0 = osc.omega0;
    const double cutoff = std::max({10.0 * w0, 10.0 * bath.gamma, t > 0.0 ? 20.0 / t : 0.0});
    std::vector<double> breaks;
    for (double w = w0 * 1e-6; w <= w0 * 0.011; w *= 10.0) breaks.push_back(w);
    const ModeFrequency w1 = omega1(osc, bath);
    if (w1.branch == DampingRegime::underdamped) {
        breaks.push_back(w1.value - 5.0 * bath.gamma);
        breaks.push_back(w1.value + 5.0 * bath.gamma);
    }
    breaks.push_back(w0);
    double total = integrate(f, 0.0, cutoff, std::move(breaks), ctl);
    total += integrate_decaying_tail(f, cutoff, t, ctl);
    return total;
}

void require_thermal_domain(const OscillatorParams& osc, const BathParams& bath) {
    if (!(bath.gamma > 0.0)) throw std::domain_error("gamma must be > 0 for the thermal integral");
    if (!(osc.omega0 > 0.0)) throw std::domain_error("omega0 must be > 0 for the thermal integral");
}

}  // namespace

double thermal_correlation(double t, const OscillatorParams& osc, const BathParams& bath,
                           const Units& units, const QuadratureControls& ctl) {
    require_thermal_domain(osc, bath);
    const double kT = units.kB * bath.temperature;
    const auto f = [&](double w) {
        return alpha(w, osc, bath).imag() * coth_factor(w, kT, units.hbar) * std::cos(w * t);
    };
    return units.hbar / std::numbers::pi * fd_integral(f, t, osc, bath, ctl);
}

double msd_thermal(double t, const OscillatorParams& osc, const BathParams& bath,
                   const Units& units, const QuadratureControls& ctl) {
    require_thermal_domain(osc, bath);
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (t == 0.0) return 0.0;
    const double kT = units.kB * bath.temperature;
    const auto f = [&](double w) {
        const double half = std::sin(0.5 * w * t);
        return alpha(w, osc, bath).imag() * coth_factor(w, kT, units.hbar) * 2.0 * half * half;
    };
    return 2.0 * units.hbar / std::numbers::pi * fd_integral(f, t, osc, bath, ctl);
}

double msd_thermal_via_correlation(double t, const OscillatorParams& osc, const BathParams& bath,
                                   const Units& units, const QuadratureControls& ctl) {
    return 2.0 * (thermal_correlation(0.0, osc, bath, units, ctl) -
                  thermal_correlation(t, osc, bath, units, ctl));
}

SpreadingResult msd_total(double t, const OscillatorParams& osc, const BathParams& bath, double g,
                          const Units& units) {
    SpreadingResult r;
    r.t = t;
    if (g > 0.0) {
        r.s_d = bath.gamma > 0.0 ? msd_driven_closed(t, osc, bath, g)
                                 : msd_driven_nodissip(t, osc, g);
    }
    if (bath.gamma > 0.0) {
        r.s_0 = msd_thermal(t, osc, bath, units);
    }
    r.s_total = r.s_d + r.s_0;
    return r;
}

double free_packet_width(double t, const OscillatorParams& osc, const BathParams& bath,
                         const CatParams& cat, double s0, const Units& units) {
    if (osc.omega0 != 0.0) throw std::domain_error("free-particle width requires omega0 = 0");
    if (bath.gamma != 0.0) {
        throw std::domain_error("dissipative free-particle width is unsupported (gamma must be 0)");
    }
    if (s0 < 0.0) throw std::invalid_argument("s0 must be >= 0");
    const double sigma2 = cat.sigma * cat.sigma;
    const double quantum = units.hbar * t / (2.0 * osc.m * cat.sigma);
    return sigma2 + quantum * quantum + s0;
}

}  // namespace decosim
