#include "pfopt/cli/commands.hpp"
#include "pfopt/cli/config.hpp"
#include "pfopt/cli/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

namespace {

struct CommonArgs {
    std::string config_path;
    long long seed = -1;
    std::string out;
    unsigned threads = 0;
};

void attach(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config or manifest file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", args.seed, "Override the config seed");
    cmd->add_option("--out", args.out, "Override the output directory");
    cmd->add_option("--threads", args.threads,
                    "Worker threads (0: PFOPT_THREADS or hardware default)");
}

int fail(int code, const std::string& kind, const std::string& message) {
    pfopt::cli::Json err;
    err["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularized portfolio optimization toolkit"};
    app.require_subcommand(1);

    const std::vector<std::string> commands{"solve", "frontier", "simulate", "backtest",
                                            "compare-solvers"};
    const std::vector<std::string> descriptions{
        "Solve one penalized mean-variance instance",
        "Sweep a penalty path on a returns panel",
        "Run a simulation design with the oracle risk triple",
        "Rolling-window out-of-sample backtest",
        "Coordinate-descent vs splitting-solver comparison harness"};
    std::vector<CommonArgs> args(commands.size());
    for (std::size_t i = 0; i < commands.size(); ++i)
        attach(app.add_subcommand(commands[i], descriptions[i]), args[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (!app.get_subcommand(commands[i])->parsed()) continue;
        try {
            pfopt::cli::RunConfig config =
                pfopt::cli::load_config(args[i].config_path, commands[i]);
            if (args[i].seed >= 0) config.seed = static_cast<std::uint64_t>(args[i].seed);
            if (!args[i].out.empty()) config.out = args[i].out;
            if (args[i].threads > 0) config.threads = args[i].threads;
            return pfopt::cli::run_command(config);
        } catch (const pfopt::cli::ConfigError& e) {
            return fail(2, "config", e.what());
        } catch (const pfopt::cli::DataError& e) {
            return fail(3, "data", e.what());
        } catch (const pfopt::cli::SolverEscalation& e) {
            return fail(4, "solver", e.what());
        } catch (const std::exception& e) {
            return fail(1, "internal", e.what());
        }
    }
    return 2;
}
