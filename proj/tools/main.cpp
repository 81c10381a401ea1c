#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lame/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lame::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lame::ConfigError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw lame::ConfigError("cannot write output file '" + path + "'");
}

int run(const std::string& command, const std::string& config_path,
        const lame::CliOverrides& overrides) {
    const std::string config_text = config_path.empty() ? std::string() : read_file(config_path);
    const lame::RunConfig config = lame::parse_run_config(command, config_text, overrides);
    const lame::RunOutcome outcome = lame::run_command(config);
    write_output(config.out_path, outcome.rendered);
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified spectral order checks for higher Lame operators"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> format;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--format", format, "Output format: json or csv");
        cmd->add_option("--out", out_path, "Write the report to this file instead of stdout");
        cmd->add_option("--seed", seed, "Random seed (overrides config and environment)");
        cmd->add_option("--jobs", jobs, "Worker threads for row-parallel sweeps");
    };

    CLI::App* solve = app.add_subcommand("solve", "Enumerate the spectral pairs of an instance");
    CLI::App* verify =
        app.add_subcommand("verify", "Certify the order relations on every spectral pair");
    CLI::App* asym = app.add_subcommand("asymptotics", "Large-degree and many-pole sweeps");
    CLI::App* jac = app.add_subcommand("jacobi", "Jacobi endpoint, refined and arcsine checks");
    CLI::App* cls = app.add_subcommand("classical", "Randomized zero-dominance checks");
    for (CLI::App* cmd : {solve, verify, asym, jac, cls}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    lame::CliOverrides overrides;
    overrides.format = format;
    overrides.seed = seed;
    overrides.jobs = jobs;
    overrides.out_path = out_path;

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, config_path, overrides);
    } catch (const lame::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return lame::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return lame::kExitSolver;
    }
}
