#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "decosim/model.hpp"

namespace decosim {

// Everything a run needs beyond the physical parameters. The default noise
// strength is 1 so the drive-dependent subcommands work out of the box.
struct RunSettings {
    ParameterSet params{{}, {}, {}, {1.0, {}}, {}, {}};
    std::uint64_t seed = 42;
    std::int64_t n_traj = 100000;
    double dt = 1e-3;
    int threads = 0;  // 0: hardware concurrency; never affects output bytes
    std::vector<double> scan_d;
    std::string out_path;
};

// key=value lines, '#' comments, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Applies the recognized keys (m, omega0, gamma, temperature, g, d, sigma,
// t_max, n_steps, hbar, kB, seed) to the settings; unknown keys or malformed
// values throw std::invalid_argument.
void apply_config(const std::map<std::string, std::string>& config, RunSettings& settings);

std::vector<double> parse_scan_list(const std::string& text);

}  // namespace decosim
