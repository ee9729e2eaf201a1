#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace decosim {

// Natural-unit scales. Defaults make every example dimensionless.
struct Units {
    double hbar = 1.0;
    double kB = 1.0;
};

// Trapped particle: mass and natural frequency. omega0 = 0 denotes a free
// particle so the response/spreading code paths share one parameterization.
struct OscillatorParams {
    double m = 1.0;
    double omega0 = 1.0;

    double force_constant() const { return m * omega0 * omega0; }
};

// Intrinsic reservoir with Ohmic (memoryless) friction.
struct BathParams {
    double gamma = 0.0;
    double temperature = 0.0;
};

enum class DriveKind { none, sinusoid, constant };

// Deterministic component of the external force.
struct DeterministicDrive {
    DriveKind kind = DriveKind::none;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;

    double operator()(double t) const;
};

// Engineered external force: white-noise strength g (force^2 * time) plus an
// optional deterministic part.
struct DriveParams {
    double g = 0.0;
    DeterministicDrive deterministic;
};

// Initial two-packet superposition: separation d and packet width sigma.
struct CatParams {
    double d = 4.0;
    double sigma = 1.0;
};

// Uniform sampling grid t_i = i * t_max / n_steps, i = 0..n_steps.
struct TimeGrid {
    double t_max = 10.0;
    std::int64_t n_steps = 1000;

    std::vector<double> samples() const;
};

struct ParameterSet {
    Units units;
    OscillatorParams osc;
    BathParams bath;
    DriveParams drive;
    CatParams cat;
    TimeGrid grid;
};

enum class DampingRegime { underdamped, critical, overdamped };

// Branch selection with a relative window around gamma = 2*omega0 where the
// closed forms would suffer catastrophic cancellation.
inline constexpr double kCriticalWindow = 1e-8;

DampingRegime damping_regime(const OscillatorParams& osc, const BathParams& bath);

const char* to_string(DampingRegime regime);

// Checks every invariant above, throwing std::invalid_argument naming the
// first violated field. Returns the set unchanged, so validation is
// idempotent.
ParameterSet validate(const ParameterSet& params);

}  // namespace decosim
