// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopnet/engine.hpp"

namespace coopnet::cli {

// Configuration or command-line problems; mapped to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario file contents. Grammar: one `key = value` per line, `#` starts a
// comment line, blank lines ignored. Values named sigma2_* and relay_powers
// accept a `dB` suffix that converts to linear scale; lists are
// comma-separated. Unknown and duplicate keys are rejected.
struct ScenarioConfig {
    std::vector<Scheme> schemes;                  // key: schemes
    std::optional<int> relay_count;               // key: M
    std::optional<int> decode_threshold;          // key: K
    std::optional<int> rx_antennas;               // key: Nr
    int block_length = 200;                       // key: N
    std::vector<double> rates;                    // key: rate (scalar or list)
    std::optional<double> snr_start_db;           // key: snr_db_start
    std::optional<double> snr_stop_db;            // key: snr_db_stop
    double snr_step_db = 5.0;                     // key: snr_db_step
    std::uint64_t trials = 100000;                // key: trials
    std::uint64_t seed = 1;                       // key: seed
    double target_pout = 0.01;                    // key: target_pout
    double sigma2_sr = 1.0;                       // key: sigma2_sr
    double sigma2_d = 1.0;                        // key: sigma2_d
    std::vector<double> relay_powers;             // key: relay_powers
    double rate_tolerance = 0.02;                 // key: rate_tolerance
    double delta_r = 2.0;                         // key: delta_r
    std::optional<std::string> out;               // key: out
};

ScenarioConfig parse_config(const std::string& text);

struct CliOptions {
    std::string subcommand;
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> plot_script;
    std::optional<std::string> trace_path;
    int workers = 1;
};

CliOptions parse_args(int argc, const char* const* argv);

// Full dispatch; returns the process exit code:
//   0 success, 1 configuration error, 2 runtime failure (bracketing,
//   enumeration cap, monotonicity abort, I/O).
// Seed precedence: --seed, then COOPNET_SEED, then the config seed.
int run_cli(int argc, const char* const* argv);

}  // namespace coopnet::cli
