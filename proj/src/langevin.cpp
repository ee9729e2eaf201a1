#include "decosim/langevin.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "decosim/response.hpp"
#include "decosim/rng.hpp"

namespace decosim {

namespace {

// trajectories are accumulated in fixed blocks of consecutive indices; the
// block partials are then combined pairwise in index order, so the reduction
// tree never depends on thread scheduling
constexpr std::int64_t kBlockSize = 512;

// per-sample slots in a block accumulator
enum Slot { kX1, kX2, kX3, kX4, kY2, kY4, kE1, kE2, kW1, kW2, kSlotCount };

struct Stepping {
    std::vector<int> n_sub;     // substeps per sample interval
    std::vector<double> h;      // substep width per interval
    std::vector<double> t_start;
};

Stepping plan_steps(const std::vector<double>& samples, double dt) {
    Stepping plan;
    plan.n_sub.resize(samples.size());
    plan.h.resize(samples.size());
    plan.t_start.resize(samples.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double span = samples[k] - prev;
        plan.t_start[k] = prev;
        if (span <= 0.0) {
            plan.n_sub[k] = 0;
            plan.h[k] = 0.0;
        } else {
            const int n = std::max(1, static_cast<int>(std::ceil(span / dt - 1e-12)));
            plan.n_sub[k] = n;
            plan.h[k] = span / n;
        }
        prev = samples[k];
    }
    return plan;
}

struct FitDesign {
    std::vector<std::size_t> indices;
    std::vector<double> coeff;  // OLS slope coefficients
    double lo = 0.0, hi = 0.0;
};

FitDesign plan_fit(const std::vector<double>& samples, double lo, double hi) {
    FitDesign fit;
    fit.lo = lo;
    fit.hi = hi;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k] > lo && samples[k] <= hi) fit.indices.push_back(k);
    }
    if (fit.indices.size() < 2) {
        fit.indices.clear();
        return fit;
    }
    double mean_t = 0.0;
    for (std::size_t k : fit.indices) mean_t += samples[k];
    mean_t /= static_cast<double>(fit.indices.size());
    double stt = 0.0;
    for (std::size_t k : fit.indices) {
        const double d = samples[k] - mean_t;
        stt += d * d;
    }
    fit.coeff.reserve(fit.indices.size());
    for (std::size_t k : fit.indices) fit.coeff.push_back((samples[k] - mean_t) / stt);
    return fit;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(double s1, double s2, double n) {
    MeanSe r;
    r.mean = s1 / n;
    if (n > 1.5) r.se = std::sqrt(std::max(0.0, s2 / n - r.mean * r.mean) / n);
    return r;
}

}  // namespace

void validate_mc(const McConfig& mc, const OscillatorParams& osc, const BathParams& bath,
                 const std::vector<double>& sample_times) {
    if (mc.n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
    if (!(mc.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (mc.dt * osc.omega0 > 0.01) throw std::invalid_argument("dt * omega0 must be <= 0.01");
    if (mc.dt * bath.gamma > 0.01) throw std::invalid_argument("dt * gamma must be <= 0.01");
    if (sample_times.empty()) throw std::invalid_argument("sample times must be nonempty");
    double prev = -1.0;
    for (double t : sample_times) {
        if (t < 0.0) throw std::invalid_argument("sample times must be >= 0");
        if (t <= prev) throw std::invalid_argument("sample times must be strictly increasing");
        prev = t;
    }
    if (!(sample_times.back() > 0.0)) {
        throw std::invalid_argument("at least one sample time must be > 0");
    }
    if (mc.initial == InitialCondition::thermal_gaussian &&
        !(bath.temperature > 0.0 && osc.omega0 > 0.0)) {
        throw std::invalid_argument("thermal-gaussian start requires temperature > 0 and omega0 > 0");
    }
    if (!(mc.fit_t_min < mc.fit_t_max)) {
        throw std::invalid_argument("fit_t_min must be < fit_t_max");
    }
}

EnsembleStats simulate_ensemble(const OscillatorParams& osc, const BathParams& bath,
                                const DriveParams& drive, const McConfig& mc,
                                const std::vector<double>& sample_times, const Units& units) {
    validate_mc(mc, osc, bath, sample_times);

    const std::size_t n_samples = sample_times.size();
    const Stepping plan = plan_steps(sample_times, mc.dt);
    const FitDesign fit = plan_fit(sample_times, mc.fit_t_min, mc.fit_t_max);

    const double m = osc.m;
    const double inv_m = 1.0 / m;
    const double w0sq = osc.omega0 * osc.omega0;
    const double gamma = bath.gamma;
    const double kT = units.kB * bath.temperature;
    const double thermal_q = 2.0 * m * gamma * kT;
    const double g = drive.g;
    const bool has_drive = drive.deterministic.kind != DriveKind::none;
    const bool separate_thermal = mc.track_thermal_work && g > 0.0 && thermal_q > 0.0;
    const bool work_enabled = gamma > 0.0 && (g == 0.0 || mc.track_thermal_work);
    const double equil = mc.work_equil_time >= 0.0
                             ? mc.work_equil_time
                             : (gamma > 0.0 ? 10.0 / gamma : 0.0);

    // per-interval noise amplitudes
    std::vector<double> sd_thermal(n_samples), sd_engineered(n_samples), sd_combined(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        sd_thermal[k] = std::sqrt(thermal_q * plan.h[k]);
        sd_engineered[k] = std::sqrt(g * plan.h[k]);
        sd_combined[k] = std::sqrt((g + thermal_q) * plan.h[k]);
    }

    // steps and integrated time past the equilibration prefix (identical for
    // every trajectory)
    std::int64_t work_steps = 0;
    double work_time = 0.0;
    if (work_enabled) {
        for (std::size_t k = 0; k < n_samples; ++k) {
            for (int j = 0; j < plan.n_sub[k]; ++j) {
                if (plan.t_start[k] + j * plan.h[k] >= equil) {
                    ++work_steps;
                    work_time += plan.h[k];
                }
            }
        }
    }

    const std::int64_t n_blocks = (mc.n_traj + kBlockSize - 1) / kBlockSize;
    const std::size_t acc_size = n_samples * kSlotCount + 4;  // + slope, slope^2, wavg, wavg^2
    std::vector<std::vector<double>> blocks(static_cast<std::size_t>(n_blocks),
                                            std::vector<double>(acc_size, 0.0));

    std::atomic<std::int64_t> next_block{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::string error_message;

    const auto run_block = [&](std::int64_t b) {
        std::vector<double>& acc = blocks[static_cast<std::size_t>(b)];
        const std::int64_t begin = b * kBlockSize;
        const std::int64_t end = std::min(mc.n_traj, begin + kBlockSize);
        std::vector<double> energies(n_samples, 0.0);

        for (std::int64_t traj = begin; traj < end; ++traj) {
            GaussianStream gauss(SplitMix64::for_stream(mc.master_seed,
                                                        static_cast<std::uint64_t>(traj)));
            double x = 0.0, v = 0.0;
            if (mc.initial == InitialCondition::thermal_gaussian) {
                x = std::sqrt(kT / (m * w0sq)) * gauss.next();
                v = std::sqrt(kT / m) * gauss.next();
            }
            const double x0 = x;
            double work_sum = 0.0;

            for (std::size_t k = 0; k < n_samples; ++k) {
                const double h = plan.h[k];
                double interval_work = 0.0;
                for (int j = 0; j < plan.n_sub[k]; ++j) {
                    const double t_step = plan.t_start[k] + j * h;
                    double impulse_thermal = 0.0;
                    double impulse;
                    if (separate_thermal) {
                        impulse_thermal = sd_thermal[k] * gauss.next();
                        impulse = impulse_thermal + sd_engineered[k] * gauss.next();
                    } else {
                        impulse = sd_combined[k] * gauss.next();
                        if (g == 0.0) impulse_thermal = impulse;
                    }
                    double accel = -gamma * v - w0sq * x;
                    if (has_drive) accel += drive.deterministic(t_step) * inv_m;
                    const double v_new = v + h * accel + impulse * inv_m;
                    if (work_enabled) {
                        const double dw = impulse_thermal * 0.5 * (v + v_new);
                        interval_work += dw;
                        if (t_step >= equil) work_sum += dw;
                    }
                    v = v_new;
                    x += h * v;
                }

                const double y = x - x0;
                const double energy = 0.5 * m * v * v + 0.5 * m * w0sq * x * x;
                if (!std::isfinite(x) || !std::isfinite(v) || !std::isfinite(energy)) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) {
                        error_message = "non-finite state in trajectory " + std::to_string(traj) +
                                        " before t = " + std::to_string(sample_times[k]);
                    }
                    return;
                }
                energies[k] = energy;
                const double span = plan.n_sub[k] * h;
                const double rate = span > 0.0 ? interval_work / span : 0.0;
                double* s = acc.data() + k * kSlotCount;
                const double x2 = x * x;
                s[kX1] += x;
                s[kX2] += x2;
                s[kX3] += x2 * x;
                s[kX4] += x2 * x2;
                s[kY2] += y * y;
                s[kY4] += y * y * y * y;
                s[kE1] += energy;
                s[kE2] += energy * energy;
                s[kW1] += rate;
                s[kW2] += rate * rate;
            }

            if (!fit.indices.empty()) {
                double slope = 0.0;
                for (std::size_t i = 0; i < fit.indices.size(); ++i) {
                    slope += fit.coeff[i] * energies[fit.indices[i]];
                }
                acc[n_samples * kSlotCount + 0] += slope;
                acc[n_samples * kSlotCount + 1] += slope * slope;
            }
            if (work_enabled && work_time > 0.0) {
                const double wavg = work_sum / work_time;
                acc[n_samples * kSlotCount + 2] += wavg;
                acc[n_samples * kSlotCount + 3] += wavg * wavg;
            }
        }
    };

    const auto worker = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::int64_t b = next_block.fetch_add(1);
            if (b >= n_blocks) return;
            run_block(b);
        }
    };

    int n_threads = mc.n_threads > 0 ? mc.n_threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_blocks)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(error_message);

    // fixed-order pairwise reduction of the block partials
    for (std::int64_t gap = 1; gap < n_blocks; gap *= 2) {
        for (std::int64_t i = 0; i + gap < n_blocks; i += 2 * gap) {
            std::vector<double>& dst = blocks[static_cast<std::size_t>(i)];
            const std::vector<double>& src = blocks[static_cast<std::size_t>(i + gap)];
            for (std::size_t j = 0; j < acc_size; ++j) dst[j] += src[j];
        }
    }
    const std::vector<double>& total = blocks[0];
    const double n = static_cast<double>(mc.n_traj);

    EnsembleStats stats;
    stats.n_traj = mc.n_traj;
    stats.samples.resize(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double* s = total.data() + k * kSlotCount;
        SampleStats& out = stats.samples[k];
        out.t = sample_times[k];

        const MeanSe x = mean_se(s[kX1], s[kX2], n);
        out.mean_x = x.mean;
        out.se_x = x.se;

        const double var = std::max(0.0, s[kX2] / n - x.mean * x.mean);
        out.var_x = mc.n_traj > 1 ? var * n / (n - 1.0) : 0.0;
        if (mc.n_traj > 1) {
            const double m4 = s[kX4] / n - 4.0 * x.mean * s[kX3] / n +
                              6.0 * x.mean * x.mean * s[kX2] / n - 3.0 * std::pow(x.mean, 4);
            out.se_var_x = std::sqrt(std::max(0.0, m4 - var * var) / n);
        }

        const MeanSe msd = mean_se(s[kY2], s[kY4], n);
        out.msd = msd.mean;
        out.se_msd = msd.se;

        const MeanSe energy = mean_se(s[kE1], s[kE2], n);
        out.mean_energy = energy.mean;
        out.se_energy = energy.se;

        const MeanSe work = mean_se(s[kW1], s[kW2], n);
        out.work_rate = work.mean;
        out.se_work_rate = work.se;
    }

    if (!fit.indices.empty()) {
        const MeanSe slope = mean_se(total[n_samples * kSlotCount + 0],
                                     total[n_samples * kSlotCount + 1], n);
        stats.energy_slope = slope.mean;
        stats.energy_slope_se = slope.se;
        stats.fit_t_min = fit.lo;
        stats.fit_t_max = fit.hi;
        stats.fit_points = static_cast<int>(fit.indices.size());
    }
    if (work_enabled && work_time > 0.0) {
        const MeanSe wavg = mean_se(total[n_samples * kSlotCount + 2],
                                    total[n_samples * kSlotCount + 3], n);
        stats.work_rate_avg = wavg.mean;
        stats.work_rate_avg_se = wavg.se;
        stats.work_equil_time = equil;
        stats.work_steps_per_traj = work_steps;
    }
    return stats;
}

EnergyGrowth estimate_energy_growth(const EnsembleStats& stats, double t_min, double t_max) {
    std::vector<std::size_t> sel;
    for (std::size_t k = 0; k < stats.samples.size(); ++k) {
        const double t = stats.samples[k].t;
        if (t > t_min && t <= t_max) sel.push_back(k);
    }
    if (sel.size() < 3) throw std::invalid_argument("energy fit needs at least 3 samples");

    double mean_t = 0.0, mean_e = 0.0;
    for (std::size_t k : sel) {
        mean_t += stats.samples[k].t;
        mean_e += stats.samples[k].mean_energy;
    }
    mean_t /= static_cast<double>(sel.size());
    mean_e /= static_cast<double>(sel.size());

    double stt = 0.0, ste = 0.0, see = 0.0;
    for (std::size_t k : sel) {
        const double dt_ = stats.samples[k].t - mean_t;
        const double de = stats.samples[k].mean_energy - mean_e;
        stt += dt_ * dt_;
        ste += dt_ * de;
        see += de * de;
    }

    EnergyGrowth fit;
    fit.n_points = static_cast<int>(sel.size());
    fit.slope = ste / stt;
    const double ss_res = std::max(0.0, see - ste * ste / stt);
    fit.r_squared = see > 0.0 ? 1.0 - ss_res / see : 1.0;

    const bool matches_accumulated =
        stats.fit_points == fit.n_points && stats.samples[sel.front()].t > stats.fit_t_min &&
        stats.samples[sel.back()].t <= stats.fit_t_max;
    if (matches_accumulated) {
        fit.slope_se = stats.energy_slope_se;
    } else {
        double var = 0.0;
        for (std::size_t k : sel) {
            const double c = (stats.samples[k].t - mean_t) / stt;
            var += c * c * stats.samples[k].se_energy * stats.samples[k].se_energy;
        }
        fit.slope_se = std::sqrt(var);
    }
    return fit;
}

WorkRate estimate_work_rate(const EnsembleStats& stats, const BathParams& bath) {
    if (!(bath.gamma > 0.0)) throw std::domain_error("gamma must be > 0");
    if (stats.work_steps_per_traj <= 0) {
        throw std::runtime_error("insufficient post-equilibration samples for the work rate");
    }
    if (stats.work_equil_time + 1e-12 < 10.0 / bath.gamma) {
        throw std::runtime_error("equilibration prefix shorter than 10/gamma");
    }
    return {stats.work_rate_avg, stats.work_rate_avg_se};
}

VarianceDecomposition variance_decomposition(const OscillatorParams& osc, const BathParams& bath,
                                             const DriveParams& drive, const McConfig& mc,
                                             const std::vector<double>& sample_times,
                                             const Units& units) {
    const EnsembleStats stats = simulate_ensemble(osc, bath, drive, mc, sample_times, units);
    VarianceDecomposition out;
    out.t.reserve(stats.samples.size());
    for (const SampleStats& s : stats.samples) {
        out.t.push_back(s.t);
        out.mean_path.push_back(s.mean_x);
        out.mean_se.push_back(s.se_x);
        out.centered_msd.push_back(s.var_x);
        out.centered_se.push_back(s.se_var_x);
    }
    return out;
}

double mean_path_convolution(double t, const OscillatorParams& osc, const BathParams& bath,
                             const DeterministicDrive& drive, const QuadratureControls& ctl) {
    if (t < 0.0) throw std::domain_error("t must be >= 0");
    if (t == 0.0 || drive.kind == DriveKind::none) return 0.0;
    const auto integrand = [&](double s) { return green_closed(t - s, osc, bath) * drive(s); };
    return integrate(integrand, 0.0, t, ctl);
}

}  // namespace decosim
