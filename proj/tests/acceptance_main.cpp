// Acceptance suite: runs every product-level criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "decosim/commands.hpp"
#include "decosim/decoherence.hpp"
#include "decosim/langevin.hpp"
#include "decosim/spreading.hpp"

using namespace decosim;

namespace {

const OscillatorParams kOsc{1.0, 1.0};
const Units kUnits{};

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const char* label, bool pass, const std::string& detail, double seconds) {
    std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", id, label,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

// criterion 1: closed form vs defining integral, < 1e-9 relative, < 10 s
void criterion_closed_vs_quadrature() {
    Timer timer;
    double worst = 0.0;
    for (const double gamma : {0.1, 0.5, 1.9, 2.0 - 1e-6, 2.0 + 1e-6, 3.0}) {
        const BathParams bath{gamma, 0.0};
        for (int i = 1; i <= 1000; ++i) {
            const double t = 10.0 * i / 1000.0;
            const double closed = msd_driven_closed(t, kOsc, bath, 1.0);
            const double quad = msd_driven_quadrature(t, kOsc, bath, 1.0);
            worst = std::max(worst, std::abs(closed - quad) / std::max(closed, 1e-300));
        }
    }
    const double seconds = timer.seconds();
    report(1, "closed-form spreading vs defining integral",
           worst < 1e-9 && seconds < 10.0, fmt("max rel %.2e", worst), seconds);
}

// criterion 2: weak-damping limit and the dissipationless anchor, < 1 s
void criterion_dissipationless_limit() {
    Timer timer;
    const BathParams weak{1e-6, 0.0};
    double worst = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double t = 10.0 * i / 1000.0;
        const double closed = msd_driven_closed(t, kOsc, weak, 1.0);
        const double limit = msd_driven_nodissip(t, kOsc, 1.0);
        worst = std::max(worst, std::abs(closed - limit) / limit);
    }
    const double anchor = msd_driven_nodissip(std::numbers::pi, kOsc, 1.0);
    const bool anchor_ok = std::abs(anchor - std::numbers::pi / 2.0) < 1e-15;
    const double seconds = timer.seconds();
    report(2, "dissipationless limit of the closed form",
           worst < 1e-5 && anchor_ok && seconds < 1.0, fmt("max rel %.2e", worst), seconds);
}

struct McRuns {
    EnsembleStats damped;
    EnsembleStats free_run;
    std::vector<double> times;
    std::vector<double> check_times;
};

McRuns run_reference_ensembles() {
    McRuns runs;
    for (double t : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, std::numbers::pi, 3.5, 4.0, 4.5, 5.0}) {
        runs.times.push_back(t);
    }
    runs.check_times = {1.0, 2.0, std::numbers::pi, 5.0};

    McConfig mc;
    mc.n_traj = 100000;
    mc.dt = 1e-3;
    mc.master_seed = 42;
    runs.damped = simulate_ensemble(kOsc, {0.5, 0.0}, {1.0, {}}, mc, runs.times, kUnits);
    runs.free_run = simulate_ensemble(kOsc, {0.0, 0.0}, {1.0, {}}, mc, runs.times, kUnits);
    return runs;
}

std::size_t sample_index(const std::vector<double>& times, double t) {
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] == t) return k;
    }
    return times.size();
}

// criterion 3: ensemble MSD vs both closed forms at t in {1, 2, 5, pi}, < 60 s
void criterion_monte_carlo_msd(const McRuns& runs, double seconds) {
    double worst_z = 0.0;
    for (double t : runs.check_times) {
        const std::size_t k = sample_index(runs.times, t);
        const SampleStats& damped = runs.damped.samples[k];
        const SampleStats& free_run = runs.free_run.samples[k];
        worst_z = std::max(worst_z, std::abs((damped.msd - msd_driven_closed(t, kOsc, {0.5, 0.0}, 1.0)) /
                                             damped.se_msd));
        worst_z = std::max(worst_z,
                           std::abs((free_run.msd - msd_driven_nodissip(t, kOsc, 1.0)) /
                                    free_run.se_msd));
    }
    report(3, "Monte Carlo ensemble MSD vs closed forms",
           worst_z <= 3.0 && seconds < 60.0, fmt("max |z| %.2f", worst_z), seconds);
}

// criterion 4: linear energy growth at rate g/(2m) with R^2 > 0.999, < 60 s
void criterion_energy_growth(const McRuns& runs, double seconds) {
    Timer timer;
    const EnergyGrowth fit = estimate_energy_growth(runs.free_run);
    const double z = (fit.slope - 0.5) / fit.slope_se;
    report(4, "linear energy growth of the driven particle",
           std::abs(z) <= 3.0 && fit.r_squared > 0.999 && seconds + timer.seconds() < 60.0,
           fmt("slope z %.2f, R^2 %.6f", z, fit.r_squared), seconds + timer.seconds());
}

// criterion 5: fluctuation work rate kB T gamma, < 60 s
void criterion_work_rate() {
    Timer timer;
    McConfig mc;
    mc.n_traj = 2000;
    mc.dt = 1e-3;
    mc.master_seed = 42;
    mc.initial = InitialCondition::thermal_gaussian;
    mc.track_thermal_work = true;
    const BathParams bath{0.5, 1.0};
    const EnsembleStats stats = simulate_ensemble(kOsc, bath, {0.0, {}}, mc, {30.0, 60.0}, kUnits);
    const WorkRate rate = estimate_work_rate(stats, bath);
    const double z = (rate.power - 0.5) / rate.power_se;
    const double seconds = timer.seconds();
    report(5, "fluctuation work rate kB*T*gamma", std::abs(z) <= 3.0 && seconds < 60.0,
           fmt("power %.4f, z %.2f", rate.power, z), seconds);
}

// criterion 6: a non-random force shifts the mean without adding spread
void criterion_nonrandom_force(const McRuns& runs) {
    Timer timer;
    const DeterministicDrive sinusoid{DriveKind::sinusoid, 1.0, 0.7, 0.0};
    McConfig mc;
    mc.n_traj = 100000;
    mc.dt = 1e-3;
    mc.master_seed = 45;
    const EnsembleStats driven =
        simulate_ensemble(kOsc, {0.0, 0.0}, {1.0, sinusoid}, mc, runs.times, kUnits);

    double worst_z = 0.0;
    for (std::size_t k = 0; k < runs.times.size(); ++k) {
        const double se = std::hypot(driven.samples[k].se_var_x, runs.free_run.samples[k].se_msd);
        worst_z = std::max(worst_z,
                           std::abs(driven.samples[k].var_x - runs.free_run.samples[k].msd) / se);
    }

    McConfig det = mc;
    det.n_traj = 1;
    const EnsembleStats path =
        simulate_ensemble(kOsc, {0.0, 0.0}, {0.0, sinusoid}, det, runs.times, kUnits);
    double scale = 0.0, worst_dev = 0.0;
    std::vector<double> conv(runs.times.size());
    for (std::size_t k = 0; k < runs.times.size(); ++k) {
        conv[k] = mean_path_convolution(runs.times[k], kOsc, {0.0, 0.0}, sinusoid);
        scale = std::max(scale, std::abs(conv[k]));
    }
    for (std::size_t k = 0; k < runs.times.size(); ++k) {
        worst_dev = std::max(worst_dev, std::abs(path.samples[k].mean_x - conv[k]) / scale);
    }

    report(6, "deterministic drive adds no decoherence",
           worst_z <= 3.0 && worst_dev < 1e-2,
           fmt("spread max |z| %.2f, mean-path dev %.2e", worst_z, worst_dev), timer.seconds());
}

// criterion 7: attenuation regime laws
void criterion_attenuation_laws() {
    Timer timer;
    const CatParams cat{4.0, 1.0};
    bool pass = true;
    std::string failure;

    pass = pass && attenuation_engineered(0.0, cat, 0.0).a == 1.0 &&
           attenuation_scaled(0.0, kOsc, cat, 1.0).a == 1.0 &&
           attenuation_asymptotic(0.0, kOsc, cat, 1.0, AsymptoticKind::small_time).a == 1.0;
    if (!pass) failure = "a(0) != 1";

    const double plateau = std::exp(-cat.d * cat.d / (8.0 * cat.sigma * cat.sigma));
    double prev = 0.0;
    for (int i = 0; i <= 2000 && pass; ++i) {
        const double t = 20.0 * i / 2000.0;
        const AttenuationPoint p = attenuation_engineered(t, cat, msd_driven_nodissip(t, kOsc, 1.0));
        if (p.exponent - prev < -1e-12 || p.a < plateau) {
            pass = false;
            failure = fmt("monotonicity/plateau violated at t=%.3f", t);
        }
        prev = p.exponent;
    }

    if (pass) {
        const double t_small = 0.025;  // 2 omega0 t = 0.05
        const double scaled = attenuation_scaled(t_small, kOsc, cat, 1.0).a;
        const double cubic =
            attenuation_asymptotic(t_small, kOsc, cat, 1.0, AsymptoticKind::small_time).a;
        if (std::abs(cubic - scaled) / scaled >= 1e-3) {
            pass = false;
            failure = "small-time law mismatch";
        }
    }
    for (int k = 1; k <= 3 && pass; ++k) {
        const double t = k * std::numbers::pi;
        const double scaled = attenuation_scaled(t, kOsc, cat, 1.0).a;
        const double law = attenuation_asymptotic(t, kOsc, cat, 1.0, AsymptoticKind::long_time).a;
        if (std::abs(scaled - law) > 1e-15 * law) {
            pass = false;
            failure = "end-of-cycle law mismatch";
        }
    }
    if (pass) {
        for (double s_d : {0.3, 2.0, 9.0}) {
            const double e1 = attenuation_engineered(1.0, {4.0, 1.0}, s_d).exponent;
            const double e2 = attenuation_engineered(1.0, {6.0, 1.0}, s_d).exponent;
            if (std::abs(e1 / e2 - 16.0 / 36.0) > 1e-12 * (16.0 / 36.0)) {
                pass = false;
                failure = "separation scaling violated";
            }
        }
    }
    report(7, "attenuation regime laws", pass, pass ? "all laws hold" : failure, timer.seconds());
}

// criterion 8: decoherence-time separation scaling in the long-time regime
void criterion_tau_d_scaling() {
    Timer timer;
    const double g = 5e-4;
    const DecoherenceTimes t16 = decoherence_time(kOsc, {16.0, 1.0}, g);
    const DecoherenceTimes t32 = decoherence_time(kOsc, {32.0, 1.0}, g);
    const double ratio = t16.tau_d / t32.tau_d;
    const bool tau0_exact = tau0(kOsc, {4.0, 1.0}, 1.0) == 1.0;
    report(8, "decoherence-time inverse-square separation scaling",
           ratio >= 3.8 && ratio <= 4.2 && tau0_exact, fmt("ratio %.4f", ratio), timer.seconds());
}

// criterion 9: thermal quadrature limits
void criterion_thermal_limits() {
    Timer timer;
    const double plateau = msd_thermal(100.0, kOsc, {0.5, 100.0}, kUnits);
    const double plateau_err = std::abs(plateau - 200.0) / 200.0;

    const double weak = msd_thermal(std::numbers::pi, kOsc, {0.01, 0.0}, kUnits);
    const double weak_err = std::abs(weak - 2.0) / 2.0;

    report(9, "thermal spreading limits", plateau_err < 1e-3 && weak_err < 0.02,
           fmt("plateau rel %.2e, weak-coupling rel %.2e", plateau_err, weak_err),
           timer.seconds());
}

// criterion 10: the validation command is byte-identical across runs and
// worker counts
void criterion_determinism() {
    Timer timer;
    RunSettings s;
    s.n_traj = 2000;
    s.seed = 42;
    s.threads = 1;
    const RunOutput first = cmd_mc_validate(s);
    const RunOutput repeat = cmd_mc_validate(s);
    s.threads = 4;
    const RunOutput parallel = cmd_mc_validate(s);
    const bool identical = first.csv == repeat.csv && first.manifest == repeat.manifest &&
                           first.csv == parallel.csv && first.manifest == parallel.manifest;
    report(10, "mc-validate output determinism", identical,
           identical ? "byte-identical across runs and 1 vs 4 workers" : "outputs differ",
           timer.seconds());
}

}  // namespace

int main() {
    criterion_closed_vs_quadrature();
    criterion_dissipationless_limit();

    Timer ensembles;
    const McRuns runs = run_reference_ensembles();
    const double ensemble_seconds = ensembles.seconds();
    criterion_monte_carlo_msd(runs, ensemble_seconds);
    criterion_energy_growth(runs, ensemble_seconds);
    criterion_work_rate();
    criterion_nonrandom_force(runs);

    criterion_attenuation_laws();
    criterion_tau_d_scaling();
    criterion_thermal_limits();
    criterion_determinism();

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures;
}
