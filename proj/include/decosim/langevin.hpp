#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "decosim/model.hpp"
#include "decosim/quadrature.hpp"

namespace decosim {

enum class InitialCondition { point, thermal_gaussian };

struct McConfig {
    std::int64_t n_traj = 100000;
    double dt = 1e-3;
    std::uint64_t master_seed = 42;
    InitialCondition initial = InitialCondition::point;

    // draw the thermal impulse separately from the engineered one so the
    // fluctuation-work estimator can see it alone
    bool track_thermal_work = false;
    double work_equil_time = -1.0;  // < 0: use 10/gamma

    // window for the per-trajectory least-squares energy slope
    double fit_t_min = 0.0;
    double fit_t_max = std::numeric_limits<double>::infinity();

    int n_threads = 0;  // 0: hardware concurrency; never affects the results
};

struct SampleStats {
    double t = 0.0;
    double mean_x = 0.0, se_x = 0.0;
    double msd = 0.0, se_msd = 0.0;            // from each trajectory's x(0)
    double var_x = 0.0, se_var_x = 0.0;        // centered on the ensemble mean
    double mean_energy = 0.0, se_energy = 0.0;
    double work_rate = 0.0, se_work_rate = 0.0;  // thermal power over the interval
};

struct EnsembleStats {
    std::vector<SampleStats> samples;
    std::int64_t n_traj = 0;

    // ensemble mean/standard error of the per-trajectory least-squares
    // energy slope over the configured window
    double energy_slope = 0.0;
    double energy_slope_se = 0.0;
    double fit_t_min = 0.0, fit_t_max = 0.0;
    int fit_points = 0;

    // ensemble mean/standard error of the per-trajectory time-averaged
    // thermal work rate past the equilibration prefix
    double work_rate_avg = 0.0;
    double work_rate_avg_se = 0.0;
    double work_equil_time = 0.0;
    std::int64_t work_steps_per_traj = 0;
};

// Validates the Monte Carlo configuration against the physical parameters
// (dt * omega0 <= 0.01 and dt * gamma <= 0.01, positive counts, ...).
void validate_mc(const McConfig& mc, const OscillatorParams& osc, const BathParams& bath,
                 const std::vector<double>& sample_times);

// Ensemble of semi-implicit Euler trajectories of
//   x' = v,  m v' = -m gamma v - K x + noise + deterministic drive,
// with a per-step Gaussian impulse of variance (g + 2 m gamma kB T) dt.
// Trajectory i draws from an independent SplitMix64 stream derived from
// (master_seed, i); statistics are reduced in a fixed order, so the results
// are bitwise independent of the worker count.
EnsembleStats simulate_ensemble(const OscillatorParams& osc, const BathParams& bath,
                                const DriveParams& drive, const McConfig& mc,
                                const std::vector<double>& sample_times,
                                const Units& units = {});

struct EnergyGrowth {
    double slope = 0.0;
    double slope_se = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

// Least-squares slope of <E(t)> over the window. The slope uncertainty is the
// ensemble standard error of the per-trajectory slopes when the window matches
// the one configured at simulation time; otherwise it falls back to
// propagating the per-sample errors, which ignores cross-time correlation.
EnergyGrowth estimate_energy_growth(
    const EnsembleStats& stats, double t_min = 0.0,
    double t_max = std::numeric_limits<double>::infinity());

struct WorkRate {
    double power = 0.0;
    double power_se = 0.0;
};

// Ensemble-and-time average of the thermal impulse times the midpoint
// velocity after the equilibration prefix (>= 10/gamma).
WorkRate estimate_work_rate(const EnsembleStats& stats, const BathParams& bath);

struct VarianceDecomposition {
    std::vector<double> t;
    std::vector<double> mean_path, mean_se;
    std::vector<double> centered_msd, centered_se;
};

// Ensemble mean trajectory and the variance about it.
VarianceDecomposition variance_decomposition(const OscillatorParams& osc, const BathParams& bath,
                                             const DriveParams& drive, const McConfig& mc,
                                             const std::vector<double>& sample_times,
                                             const Units& units = {});

// Response of the mean motion to the deterministic drive,
// Int_0^t G(t - s) f(s) ds, by adaptive quadrature.
double mean_path_convolution(double t, const OscillatorParams& osc, const BathParams& bath,
                             const DeterministicDrive& drive,
                             const QuadratureControls& ctl = {1e-12, 1e-10, 2000});

}  // namespace decosim
