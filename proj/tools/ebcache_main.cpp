#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "ebcache/commands.hpp"

namespace {

int verbosity_from_env() {
    const char* env = std::getenv("EBCACHE_LOG");
    if (!env) return 1;
    std::string v = env;
    if (v == "quiet" || v == "0" || v == "off") return 0;
    if (v == "debug" || v == "2") return 2;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"efficient-betweenness caching toolkit"};
    app.require_subcommand(1);

    ebcache::CliOptions opts;
    opts.verbosity = verbosity_from_env();

    const struct {
        const char* name;
        const char* help;
        bool config_required;
    } commands[] = {
        {"analyze", "compute betweenness/EB metrics for a plan", true},
        {"optimize", "solve the caching/delivery problem with the configured strategy", true},
        {"simulate", "run the slotted relay-queue simulation", true},
        {"sweep", "run a command pipeline over a parameter grid", true},
        {"fixture-fig1", "verify and print the five-node worked example", false},
    };
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        CLI::Option* config = sub->add_option("--config", opts.config_path, "experiment config JSON");
        if (cmd.config_required) config->required();
        sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", opts.seed, "master seed (overrides config)");
        sub->add_option("--format", opts.format, "report format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--parallel", opts.parallel, "worker threads for sweep points")
            ->check(CLI::PositiveNumber);
        sub->callback([&opts, name = std::string(cmd.name)]() { opts.command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return ebcache::run_command(opts);
}
