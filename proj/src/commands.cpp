#include "decosim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "decosim/curve_table.hpp"
#include "decosim/decoherence.hpp"
#include "decosim/langevin.hpp"
#include "decosim/spreading.hpp"

namespace decosim {

namespace {

using nlohmann::json;

json base_manifest(const char* subcommand, const RunSettings& s) {
    json m;
    m["subcommand"] = subcommand;
    m["tool_version"] = kToolVersion;
    m["m"] = s.params.osc.m;
    m["omega0"] = s.params.osc.omega0;
    m["gamma"] = s.params.bath.gamma;
    m["temperature"] = s.params.bath.temperature;
    m["g"] = s.params.drive.g;
    m["d"] = s.params.cat.d;
    m["sigma"] = s.params.cat.sigma;
    m["t_max"] = s.params.grid.t_max;
    m["n_steps"] = s.params.grid.n_steps;
    m["hbar"] = s.params.units.hbar;
    m["kB"] = s.params.units.kB;
    m["seed"] = s.seed;
    m["n_traj"] = s.n_traj;
    m["dt"] = s.dt;
    return m;
}

RunOutput finish(json manifest, std::string csv, bool passed = true) {
    manifest["output_checksum_fnv1a64"] = fnv1a_hex(csv);
    manifest["all_checks_passed"] = passed;
    RunOutput out;
    out.csv = std::move(csv);
    out.manifest = manifest.dump(2) + "\n";
    out.checks_passed = passed;
    return out;
}

void require_dissipationless_regime(const RunSettings& s, const char* subcommand) {
    if (s.params.bath.gamma != 0.0 || s.params.bath.temperature != 0.0) {
        throw std::invalid_argument(std::string(subcommand) +
                                    " is defined in the dissipationless zero-temperature regime; "
                                    "set gamma=0 and temperature=0 explicitly");
    }
}

// one z-score row of the validation table
struct CheckRow {
    std::string check;
    std::string quantity;
    double estimate;
    double target;
    double stderr_;
    double z;
    bool pass;
};

CheckRow make_check(std::string check, std::string quantity, double estimate, double target,
                    double stderr_) {
    CheckRow row;
    row.check = std::move(check);
    row.quantity = std::move(quantity);
    row.estimate = estimate;
    row.target = target;
    row.stderr_ = stderr_;
    row.z = stderr_ > 0.0 ? (estimate - target) / stderr_ : (estimate == target ? 0.0 : INFINITY);
    row.pass = std::abs(row.z) <= 3.0;
    return row;
}

std::string checks_to_csv(const std::vector<CheckRow>& rows) {
    std::string out = "check,quantity,estimate,target,stderr,z,pass\n";
    for (const CheckRow& r : rows) {
        out += r.check + ',' + r.quantity + ',' + format_double(r.estimate) + ',' +
               format_double(r.target) + ',' + format_double(r.stderr_) + ',' +
               format_double(r.z) + ',' + (r.pass ? "1" : "0") + '\n';
    }
    return out;
}

}  // namespace

RunOutput cmd_spreading(const RunSettings& settings) {
    const ParameterSet p = validate(settings.params);
    if (!(p.osc.omega0 > 0.0)) {
        throw std::invalid_argument("spreading requires omega0 > 0");
    }
    const bool damped = p.bath.gamma > 0.0;
    const std::vector<double> times = p.grid.samples();

    std::vector<double> sd(times.size()), sd_quad(times.size()), s0(times.size()),
        total(times.size());
    double max_rel_discrepancy = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        sd[i] = damped ? msd_driven_closed(t, p.osc, p.bath, p.drive.g)
                       : msd_driven_nodissip(t, p.osc, p.drive.g);
        sd_quad[i] = msd_driven_quadrature(t, p.osc, p.bath, p.drive.g);
        s0[i] = damped ? msd_thermal(t, p.osc, p.bath, p.units) : 0.0;
        total[i] = sd[i] + s0[i];
        const double rel = std::abs(sd[i] - sd_quad[i]) / std::max(sd[i], 1e-300);
        max_rel_discrepancy = std::max(max_rel_discrepancy, rel);
    }

    CurveTable table(times);
    table.add_column(damped ? "s_d_closed" : "s_d_nodissip", std::move(sd));
    table.add_column("s_d_quad", std::move(sd_quad));
    table.add_column("s_0", std::move(s0));
    table.add_column("s_total", std::move(total));

    json manifest = base_manifest("spreading", settings);
    manifest["s_d_max_rel_discrepancy"] = max_rel_discrepancy;
    return finish(std::move(manifest), table.to_csv());
}

RunOutput cmd_attenuation(const RunSettings& settings) {
    const ParameterSet p = validate(settings.params);
    require_dissipationless_regime(settings, "attenuation");
    if (!(p.osc.omega0 > 0.0)) throw std::invalid_argument("attenuation requires omega0 > 0");
    if (!(p.drive.g > 0.0)) throw std::invalid_argument("attenuation requires g > 0");

    const std::vector<double> times = p.grid.samples();
    std::vector<double> exact(times.size()), scaled(times.size()), small(times.size()),
        longtime(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const double s_d = msd_driven_nodissip(t, p.osc, p.drive.g);
        exact[i] = attenuation_engineered(t, p.cat, s_d).a;
        scaled[i] = attenuation_scaled(t, p.osc, p.cat, p.drive.g).a;
        small[i] = attenuation_asymptotic(t, p.osc, p.cat, p.drive.g, AsymptoticKind::small_time).a;
        longtime[i] =
            attenuation_asymptotic(t, p.osc, p.cat, p.drive.g, AsymptoticKind::long_time).a;
    }

    CurveTable table(times);
    table.add_column("a_exact", std::move(exact));
    table.add_column("a_scaled", std::move(scaled));
    table.add_column("a_small_time", std::move(small));
    table.add_column("a_long_time", std::move(longtime));

    json manifest = base_manifest("attenuation", settings);
    manifest["tau0"] = tau0(p.osc, p.cat, p.drive.g);
    return finish(std::move(manifest), table.to_csv());
}

RunOutput cmd_tau_d(const RunSettings& settings) {
    const ParameterSet p = validate(settings.params);
    require_dissipationless_regime(settings, "tau-d");
    if (!(p.osc.omega0 > 0.0)) throw std::invalid_argument("tau-d requires omega0 > 0");
    if (!(p.drive.g > 0.0)) throw std::invalid_argument("tau-d requires g > 0");
    if (settings.scan_d.empty()) throw std::invalid_argument("tau-d requires a separation scan");

    std::string csv = "d,tau0,tau_d,status\n";
    for (double d : settings.scan_d) {
        if (!(d > 0.0)) throw std::invalid_argument("d must be > 0");
        CatParams cat = p.cat;
        cat.d = d;
        const DecoherenceTimes times = decoherence_time(p.osc, cat, p.drive.g);
        csv += format_double(d) + ',' + format_double(times.tau0) + ',' +
               format_double(times.tau_d) + ',' +
               (times.status == DecoherenceStatus::converged ? "converged" : "never_decoheres") +
               '\n';
    }

    json manifest = base_manifest("tau-d", settings);
    manifest["scan_d"] = settings.scan_d;
    return finish(std::move(manifest), std::move(csv));
}

RunOutput cmd_mc_validate(const RunSettings& settings) {
    const ParameterSet p = validate(settings.params);
    if (!(p.osc.omega0 > 0.0)) throw std::invalid_argument("mc-validate requires omega0 > 0");
    if (!(p.drive.g > 0.0)) throw std::invalid_argument("mc-validate requires g > 0");

    const OscillatorParams osc = p.osc;
    const Units units = p.units;
    const double w0 = osc.omega0;
    const double g = p.drive.g;

    // suite parameters; damping and temperature are fixed by the scenarios
    const BathParams bath_damped{0.5 * w0, 0.0};
    const BathParams bath_free{0.0, 0.0};
    const BathParams bath_thermal{0.5 * w0, 1.0 / units.kB};

    McConfig mc;
    mc.n_traj = settings.n_traj;
    mc.dt = settings.dt;
    mc.n_threads = settings.threads;

    std::vector<double> times;
    for (double t : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, std::numbers::pi, 3.5, 4.0, 4.5, 5.0}) {
        times.push_back(t / w0);
    }
    std::sort(times.begin(), times.end());
    const std::vector<double> check_times = {1.0 / w0, 2.0 / w0, std::numbers::pi / w0, 5.0 / w0};

    std::vector<CheckRow> rows;
    const auto label = [](double t) { return "t=" + format_double(t); };

    // damped MSD against the closed form
    mc.master_seed = settings.seed;
    const EnsembleStats damped =
        simulate_ensemble(osc, bath_damped, DriveParams{g, {}}, mc, times, units);
    for (double t : check_times) {
        const std::size_t k = static_cast<std::size_t>(
            std::find(times.begin(), times.end(), t) - times.begin());
        rows.push_back(make_check("msd_damped", label(t), damped.samples[k].msd,
                                  msd_driven_closed(t, osc, bath_damped, g),
                                  damped.samples[k].se_msd));
    }

    // dissipationless MSD and the linear energy growth
    mc.master_seed = settings.seed + 1;
    const EnsembleStats free_run =
        simulate_ensemble(osc, bath_free, DriveParams{g, {}}, mc, times, units);
    for (double t : check_times) {
        const std::size_t k = static_cast<std::size_t>(
            std::find(times.begin(), times.end(), t) - times.begin());
        rows.push_back(make_check("msd_free", label(t), free_run.samples[k].msd,
                                  msd_driven_nodissip(t, osc, g), free_run.samples[k].se_msd));
    }
    const EnergyGrowth growth = estimate_energy_growth(free_run);
    rows.push_back(make_check("energy_growth", "slope", growth.slope, 0.5 * g / osc.m,
                              growth.slope_se));
    rows.push_back(make_check("energy_growth", "r_squared", growth.r_squared, 1.0, 0.001 / 3.0));

    // fluctuation work rate in the classical thermal state
    McConfig mc_work = mc;
    mc_work.master_seed = settings.seed + 2;
    mc_work.n_traj = std::min<std::int64_t>(settings.n_traj, 2000);
    mc_work.initial = InitialCondition::thermal_gaussian;
    mc_work.track_thermal_work = true;
    const double t_work = 30.0 / bath_thermal.gamma;
    const std::vector<double> work_times = {0.5 * t_work, t_work};
    const EnsembleStats thermal =
        simulate_ensemble(osc, bath_thermal, DriveParams{0.0, {}}, mc_work, work_times, units);
    const WorkRate rate = estimate_work_rate(thermal, bath_thermal);
    rows.push_back(make_check("work_rate", "P_F", rate.power,
                              units.kB * bath_thermal.temperature * bath_thermal.gamma,
                              rate.power_se));

    // a deterministic drive must shift the mean without adding spread
    DeterministicDrive sinusoid{DriveKind::sinusoid, 1.0, 0.7 * w0, 0.0};
    mc.master_seed = settings.seed + 3;
    const EnsembleStats driven =
        simulate_ensemble(osc, bath_free, DriveParams{g, sinusoid}, mc, times, units);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double se = std::hypot(driven.samples[k].se_var_x, free_run.samples[k].se_msd);
        rows.push_back(make_check("drive_no_spread", label(times[k]), driven.samples[k].var_x,
                                  free_run.samples[k].msd, se));
    }

    McConfig mc_det = mc;
    mc_det.master_seed = settings.seed + 4;
    mc_det.n_traj = 1;
    const EnsembleStats det =
        simulate_ensemble(osc, bath_free, DriveParams{0.0, sinusoid}, mc_det, times, units);
    double scale = 0.0, max_dev = 0.0;
    std::vector<double> conv(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        conv[k] = mean_path_convolution(times[k], osc, bath_free, sinusoid);
        scale = std::max(scale, std::abs(conv[k]));
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        max_dev = std::max(max_dev, std::abs(det.samples[k].mean_x - conv[k]) / scale);
    }
    rows.push_back(make_check("mean_path_convolution", "max_rel_dev", max_dev, 0.0, 1e-2 / 3.0));

    bool all_passed = true;
    for (const CheckRow& r : rows) all_passed = all_passed && r.pass;

    json manifest = base_manifest("mc-validate", settings);
    manifest["suite_gamma"] = bath_damped.gamma;
    manifest["suite_kT"] = units.kB * bath_thermal.temperature;
    manifest["suite_drive"] = {{"kind", "sinusoid"},
                               {"amplitude", sinusoid.amplitude},
                               {"frequency", sinusoid.frequency},
                               {"phase", sinusoid.phase}};
    return finish(std::move(manifest), checks_to_csv(rows), all_passed);
}

void write_output(const RunOutput& output, const std::string& out_path) {
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + out_path);
    csv << output.csv;
    csv.close();
    if (!csv) throw std::runtime_error("failed writing " + out_path);

    const std::string manifest_path = out_path + ".manifest.json";
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw std::runtime_error("cannot write " + manifest_path);
    manifest << output.manifest;
    manifest.close();
    if (!manifest) throw std::runtime_error("failed writing " + manifest_path);
}

}  // namespace decosim
