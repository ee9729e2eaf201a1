#pragma once

#include <string>

#include "decosim/config.hpp"

namespace decosim {

inline constexpr const char* kToolVersion = "0.1.0";

// A finished run: the CSV payload, the JSON manifest that accompanies it,
// and whether every embedded check passed (always true for the plain
// table-producing commands).
struct RunOutput {
    std::string csv;
    std::string manifest;
    bool checks_passed = true;
};

// t, s_d (closed or dissipationless), s_d_quad, s_0, s_total over the grid.
RunOutput cmd_spreading(const RunSettings& settings);

// t, a_exact, a_scaled, a_small_time, a_long_time; requires the
// dissipationless zero-temperature regime to be stated explicitly
// (gamma = 0, temperature = 0).
RunOutput cmd_attenuation(const RunSettings& settings);

// d, tau0, tau_d, status for each separation in the scan list.
RunOutput cmd_tau_d(const RunSettings& settings);

// Runs the Monte Carlo validation suites and emits one z-score row per
// check; checks_passed iff every |z| <= 3.
RunOutput cmd_mc_validate(const RunSettings& settings);

// Writes the CSV to out_path and the manifest next to it (out_path +
// ".manifest.json").
void write_output(const RunOutput& output, const std::string& out_path);

}  // namespace decosim
