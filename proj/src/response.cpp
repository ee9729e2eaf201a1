#include "decosim/response.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace decosim {

std::complex<double> alpha(double omega, const OscillatorParams& osc, const BathParams& bath) {
    const double re = osc.force_constant() - osc.m * omega * omega;
    const double im = -osc.m * bath.gamma * omega;
    const double norm = re * re + im * im;
    if (norm == 0.0) {
        throw std::domain_error("response function is singular at this frequency");
    }
    return {re / norm, -im / norm};
}

ModeFrequency omega1(const OscillatorParams& osc, const BathParams& bath) {
    const DampingRegime branch = damping_regime(osc, bath);
    switch (branch) {
        case DampingRegime::underdamped:
            return {branch, std::sqrt(osc.omega0 * osc.omega0 - 0.25 * bath.gamma * bath.gamma)};
        case DampingRegime::overdamped:
            return {branch, std::sqrt(0.25 * bath.gamma * bath.gamma - osc.omega0 * osc.omega0)};
        case DampingRegime::critical:
            return {branch, 0.0};
    }
    return {branch, 0.0};
}

double green_closed(double t, const OscillatorParams& osc, const BathParams& bath) {
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    const ModeFrequency w = omega1(osc, bath);
    const double gamma = bath.gamma;
    switch (w.branch) {
        case DampingRegime::underdamped:
            return std::exp(-0.5 * gamma * t) * std::sin(w.value * t) / (osc.m * w.value);
        case DampingRegime::critical:
            return std::exp(-0.5 * gamma * t) * t / osc.m;
        case DampingRegime::overdamped: {
            // exp(-gamma t/2) sinh(kappa t) / (m kappa), written so that both
            // exponents stay negative (kappa < gamma/2)
            const double up = std::exp((w.value - 0.5 * gamma) * t);
            const double dn = std::exp(-(w.value + 0.5 * gamma) * t);
            return (up - dn) / (2.0 * osc.m * w.value);
        }
    }
    return 0.0;
}

double green_numeric(double t, const OscillatorParams& osc, const BathParams& bath,
                     const QuadratureControls& ctl) {
    if (t <= 0.0) throw std::domain_error("t must be > 0");
    if (bath.gamma <= 0.0) {
        throw std::domain_error("gamma must be > 0 for the numerical inverse transform");
    }

    const double two_over_pi = 2.0 / std::numbers::pi;
    const auto integrand = [&](double w) {
        return two_over_pi * alpha(w, osc, bath).imag() * std::sin(w * t);
    };

    const double cutoff = std::max({10.0 * osc.omega0, 20.0 / t, 10.0 * bath.gamma});
    std::vector<double> breaks;
    const ModeFrequency w1 = omega1(osc, bath);
    if (w1.branch == DampingRegime::underdamped) {
        breaks = {w1.value - 5.0 * bath.gamma, w1.value + 5.0 * bath.gamma};
    }

    double total = integrate(integrand, 0.0, cutoff, breaks, ctl);
    const double target = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total));
    // |Im alpha| <= ~gamma/(m w^3) past the cutoff; when even the bound that
    // ignores the sin(w t) cancellation is negligible, the tail can be dropped
    const double tail_bound = 1.05 * two_over_pi * bath.gamma / (2.0 * osc.m * cutoff * cutoff);
    if (tail_bound > 0.5 * target) {
        QuadratureControls tail_ctl = ctl;
        tail_ctl.abs_tol = 0.5 * target;
        tail_ctl.rel_tol = 0.0;
        total += integrate_decaying_tail(integrand, cutoff, t, tail_ctl);
    }
    return total;
}

}  // namespace decosim
