#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lame/report.hpp"
#include "lame/spectral.hpp"

namespace lame {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Process exit contract: pass, configuration error, solver failure,
// verification failure.
enum ExitCode : int {
    kExitPass = 0,
    kExitConfig = 2,
    kExitSolver = 3,
    kExitFalsified = 4,
};

struct AsymptoticsRequest {
    std::string regime = "semiclassical";
    std::vector<int> degrees;      // semiclassical degree list
    std::vector<int> pole_counts;  // thermodynamic pole counts
    int degree = 1;                // fixed degree in the thermodynamic sweep
};

struct JacobiRequest {
    std::vector<int> degrees;             // default 2..50
    std::vector<double> alphas;           // default {-0.5, 0, 0.5, 1, 2}
    std::vector<double> betas;            // default same
    std::vector<double> arcsine_offsets;  // default {0, +-0.5, +-1, +-5}
};

struct ClassicalRequest {
    int config_count = 200;   // random pole configurations
    int max_poles = 6;
    int poly_count = 100;     // random polynomials for the derivative chain
    int poly_max_degree = 8;
};

struct RunConfig {
    std::string command;
    std::optional<LameInstance> instance;
    std::vector<std::pair<std::string, double>> policy_overrides;  // echoed in order
    NumericPolicy policy;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;  // empty writes to stdout only
    // Verify-time negative control: every eigenpolynomial zero is shifted by
    // this offset before the checks run.
    double corrupt_zero_offset = 0.0;
    AsymptoticsRequest asymptotics;
    JacobiRequest jacobi;
    ClassicalRequest classical;
};

// Command-line values that take precedence over the config file.
struct CliOverrides {
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> out_path;
};

// Parses the JSON config text (empty text means all defaults) and resolves
// precedence: flags, then config values, then the LAME_CHOQUET_SEED
// environment variable for the seed, then built-in defaults. Unknown keys
// anywhere are a hard error. Throws ConfigError.
RunConfig parse_run_config(const std::string& command, const std::string& config_text,
                           const CliOverrides& overrides = {});

struct RunOutcome {
    Report report;
    int exit_code = kExitPass;
    std::string rendered;  // report in the configured format
};

// Dispatches one command. Configuration problems throw ConfigError; solver
// and verification failures are encoded in the exit code.
RunOutcome run_command(const RunConfig& config);

}  // namespace lame
