#include "decosim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace decosim {

double DeterministicDrive::operator()(double t) const {
    switch (kind) {
        case DriveKind::none:
            return 0.0;
        case DriveKind::sinusoid:
            return amplitude * std::sin(frequency * t + phase);
        case DriveKind::constant:
            return amplitude;
    }
    return 0.0;
}

std::vector<double> TimeGrid::samples() const {
    std::vector<double> out(static_cast<std::size_t>(n_steps) + 1);
    for (std::int64_t i = 0; i <= n_steps; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<double>(i) * t_max / static_cast<double>(n_steps);
    }
    return out;
}

DampingRegime damping_regime(const OscillatorParams& osc, const BathParams& bath) {
    const double split = 2.0 * osc.omega0;
    if (std::abs(bath.gamma - split) <= kCriticalWindow * osc.omega0) {
        return DampingRegime::critical;
    }
    return bath.gamma < split ? DampingRegime::underdamped : DampingRegime::overdamped;
}

const char* to_string(DampingRegime regime) {
    switch (regime) {
        case DampingRegime::underdamped:
            return "underdamped";
        case DampingRegime::critical:
            return "critical";
        case DampingRegime::overdamped:
            return "overdamped";
    }
    return "?";
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

ParameterSet validate(const ParameterSet& params) {
    require(finite(params.units.hbar) && params.units.hbar > 0.0, "hbar must be > 0");
    require(finite(params.units.kB) && params.units.kB > 0.0, "kB must be > 0");
    require(finite(params.osc.m) && params.osc.m > 0.0, "m must be > 0");
    require(finite(params.osc.omega0) && params.osc.omega0 >= 0.0, "omega0 must be >= 0");
    require(finite(params.bath.gamma) && params.bath.gamma >= 0.0, "gamma must be >= 0");
    require(finite(params.bath.temperature) && params.bath.temperature >= 0.0,
            "temperature must be >= 0");
    require(finite(params.drive.g) && params.drive.g >= 0.0, "g must be >= 0");
    require(finite(params.drive.deterministic.amplitude), "drive amplitude must be finite");
    require(finite(params.drive.deterministic.frequency), "drive frequency must be finite");
    require(finite(params.drive.deterministic.phase), "drive phase must be finite");
    require(finite(params.cat.d) && params.cat.d > 0.0, "d must be > 0");
    require(finite(params.cat.sigma) && params.cat.sigma > 0.0, "sigma must be > 0");
    require(finite(params.grid.t_max) && params.grid.t_max > 0.0, "t_max must be > 0");
    require(params.grid.n_steps >= 1, "n_steps must be >= 1");
    return params;
}

}  // namespace decosim
