#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "decosim/commands.hpp"

namespace {

using decosim::RunOutput;
using decosim::RunSettings;

struct CliValues {
    std::optional<double> m, omega0, gamma, temperature, g, d, sigma, t_max, hbar, kB, dt;
    std::optional<std::int64_t> n_steps, n_traj;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> config, out, scan_d;
};

void add_common_options(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--config", v.config, "key=value config file");
    cmd->add_option("--out", v.out, "output CSV path (manifest written alongside)");
    cmd->add_option("--m", v.m, "particle mass");
    cmd->add_option("--omega0", v.omega0, "oscillator frequency (0 = free particle)");
    cmd->add_option("--gamma", v.gamma, "Ohmic damping rate");
    cmd->add_option("--temperature", v.temperature, "bath temperature");
    cmd->add_option("--g", v.g, "engineered white-noise strength");
    cmd->add_option("--d", v.d, "packet separation");
    cmd->add_option("--sigma", v.sigma, "initial packet width");
    cmd->add_option("--t-max", v.t_max, "grid end time");
    cmd->add_option("--n-steps", v.n_steps, "grid step count");
    cmd->add_option("--hbar", v.hbar, "action scale");
    cmd->add_option("--kB", v.kB, "Boltzmann scale");
    cmd->add_option("--seed", v.seed, "master RNG seed");
    cmd->add_option("--n-traj", v.n_traj, "Monte Carlo trajectory count");
    cmd->add_option("--dt", v.dt, "Monte Carlo step size");
    cmd->add_option("--threads", v.threads, "worker threads (0 = hardware)");
    cmd->add_option("--scan-d", v.scan_d, "comma-separated separation scan");
}

RunSettings resolve(const CliValues& v, const std::string& default_out) {
    RunSettings s;
    if (v.config) decosim::apply_config(decosim::parse_config_file(*v.config), s);
    if (v.m) s.params.osc.m = *v.m;
    if (v.omega0) s.params.osc.omega0 = *v.omega0;
    if (v.gamma) s.params.bath.gamma = *v.gamma;
    if (v.temperature) s.params.bath.temperature = *v.temperature;
    if (v.g) s.params.drive.g = *v.g;
    if (v.d) s.params.cat.d = *v.d;
    if (v.sigma) s.params.cat.sigma = *v.sigma;
    if (v.t_max) s.params.grid.t_max = *v.t_max;
    if (v.n_steps) s.params.grid.n_steps = *v.n_steps;
    if (v.hbar) s.params.units.hbar = *v.hbar;
    if (v.kB) s.params.units.kB = *v.kB;
    if (v.seed) s.seed = *v.seed;
    if (v.n_traj) s.n_traj = *v.n_traj;
    if (v.dt) s.dt = *v.dt;
    if (v.threads) s.threads = *v.threads;
    if (v.scan_d) s.scan_d = decosim::parse_scan_list(*v.scan_d);
    s.out_path = v.out.value_or(default_out);
    return s;
}

int run(const RunOutput& output, const RunSettings& settings) {
    decosim::write_output(output, settings.out_path);
    std::printf("wrote %s and %s.manifest.json\n", settings.out_path.c_str(),
                settings.out_path.c_str());
    return output.checks_passed ? 0 : 1;
}

void print_check_lines(const std::string& csv) {
    std::size_t pos = csv.find('\n');
    while (pos != std::string::npos && pos + 1 < csv.size()) {
        const std::size_t end = csv.find('\n', pos + 1);
        const std::string line = csv.substr(pos + 1, end - pos - 1);
        if (!line.empty()) {
            const bool pass = line.back() == '1';
            const std::size_t second_comma = line.find(',', line.find(',') + 1);
            std::printf("[%s] %s\n", pass ? "PASS" : "FAIL",
                        line.substr(0, second_comma).c_str());
        }
        pos = end;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"damped-oscillator wave-packet spreading and cat-state decoherence"};
    app.require_subcommand(1);

    CliValues spreading_v, attenuation_v, tau_d_v, mc_v;
    CLI::App* spreading = app.add_subcommand("spreading", "mean-square displacement curves");
    add_common_options(spreading, spreading_v);
    CLI::App* attenuation = app.add_subcommand("attenuation", "attenuation coefficient curves");
    add_common_options(attenuation, attenuation_v);
    CLI::App* tau_d = app.add_subcommand("tau-d", "decoherence times over a separation scan");
    add_common_options(tau_d, tau_d_v);
    CLI::App* mc = app.add_subcommand("mc-validate", "Monte Carlo validation suite");
    add_common_options(mc, mc_v);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spreading->parsed()) {
            const RunSettings s = resolve(spreading_v, "spreading.csv");
            return run(decosim::cmd_spreading(s), s);
        }
        if (attenuation->parsed()) {
            const RunSettings s = resolve(attenuation_v, "attenuation.csv");
            return run(decosim::cmd_attenuation(s), s);
        }
        if (tau_d->parsed()) {
            const RunSettings s = resolve(tau_d_v, "tau_d.csv");
            return run(decosim::cmd_tau_d(s), s);
        }
        const RunSettings s = resolve(mc_v, "mc_validate.csv");
        const RunOutput output = decosim::cmd_mc_validate(s);
        print_check_lines(output.csv);
        return run(output, s);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
