// Command-line front-end: logpot <command> --job <file> [--out <dir>]
// [--seed N] [--threads N].  Exit codes: 0 success, 2 job parse error,
// 3 solver/module failure, 4 selftest invariant violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "logpot/jobs.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral toolbox for logarithmic potentials on an interval"};
    app.require_subcommand(1);

    std::string job_path;
    std::string out_dir;
    long long seed = -1;
    int threads = 0;

    const std::vector<std::string> commands = {"solve",   "energy", "poincare", "deficit",
                                               "perturb", "sample", "selftest"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--job", job_path, "job document (JSON)");
        sub->add_option("--out", out_dir, "output directory for report.json and CSV tables");
        sub->add_option("--seed", seed, "override the gas sampler seed");
        sub->add_option("--threads", threads, "worker thread count (default: LOGPOT_THREADS or 1)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    logpot::JobSpec spec;
    try {
        if (!job_path.empty()) {
            spec = logpot::load_job(job_path);
            if (spec.command != command) {
                std::cerr << "error: job document command '" << spec.command
                          << "' does not match subcommand '" << command << "'\n";
                return 2;
            }
        } else if (command == "selftest") {
            spec.command = "selftest";
        } else {
            std::cerr << "error: --job is required for '" << command << "'\n";
            return 2;
        }
    } catch (const logpot::JobError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (seed >= 0)
        spec.gas.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty())
        spec.out_dir = out_dir;
    if (threads > 0)
        spec.threads = threads;
    else if (const char* env = std::getenv("LOGPOT_THREADS"))
        spec.threads = std::max(1, std::atoi(env));

    return logpot::run_job(spec, std::cout);
}
