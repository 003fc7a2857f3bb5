// hermite-mc: command-line runner for Monte Carlo experiments in Hermite spaces.
//
//   hermite-mc <error-study|tractability|nmc-table|kernel-eval> [--config PATH]
//              [--out PATH] [--format json|csv] [--seed U64] [--threads N]
//
// The config is a JSON document read from PATH, or from standard input when
// PATH is "-" or absent. Exit codes: 0 ok, 2 config error, 3 numeric
// failure, 4 completed with warnings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hermite_mc/commands.hpp"
#include "hermite_mc/config.hpp"

namespace {

std::string read_all(std::istream& in)
{
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::optional<unsigned> threads_from_env()
{
    const char* env = std::getenv("HERMITE_MC_THREADS");
    if (env == nullptr || *env == '\0') {
        return std::nullopt;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v > 4096) {
        throw hermite_mc::ConfigError("HERMITE_MC_THREADS must be an integer in [0, 4096]");
    }
    return static_cast<unsigned>(v);
}

} // namespace

int main(int argc, char** argv)
{
    using namespace hermite_mc;

    CLI::App app{"Monte Carlo integration in Hermite spaces"};
    app.set_help_all_flag("--help-all");
    std::string config_path = "-";
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;

    app.add_option("--config", config_path, "JSON config file, '-' for standard input");
    app.add_option("--out", out_path, "output file (default: config 'output', else standard output)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "master seed, overrides the config");
    app.add_option("--threads", threads, "worker threads, 0 = auto (env HERMITE_MC_THREADS)");
    app.require_subcommand(1, 1);
    for (const char* name : {"error-study", "tractability", "nmc-table", "kernel-eval"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    ExperimentConfig config;
    CommandOptions options;
    try {
        std::string text;
        if (config_path == "-") {
            text = read_all(std::cin);
        } else {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) {
                throw ConfigError("cannot read config file '" + config_path + "'");
            }
            text = read_all(in);
        }
        config = parse_config(text);
        if (seed) {
            config.seed = *seed;
        }
        if (!format.empty()) {
            options.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        } else if (config.format) {
            options.format = *config.format;
        }
        if (!threads) {
            threads = threads_from_env();
        }
        options.threads = threads.value_or(1);
        if (out_path.empty() && config.output) {
            out_path = *config.output;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    if (out_path.empty() || out_path == "-") {
        return run_command(command, config, options, std::cout, std::cerr);
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return kExitConfig;
    }
    return run_command(command, config, options, out, std::cerr);
}
