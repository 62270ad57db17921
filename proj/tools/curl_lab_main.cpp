// curl-lab: config-driven experiment runner for the CURL toolkit.
//
//   curl-lab solve|online|validate <config>... [--out DIR] [--seed U64] [--jobs N]
//
// Exit codes: 0 success, 2 config error, 3 runtime error.

#include <atomic>
#include <cstdint>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "curl/config.hpp"
#include "curl/experiment.hpp"
#include "curl/kernels.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
    std::vector<std::string> configs;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned jobs = 1;
};

int run_one(const std::string& command, const std::string& path, const Options& opt,
            std::mutex& io_mutex) {
    curl::ExperimentConfig config;
    try {
        config = curl::parse_config_file(path);
        if (!opt.out_dir.empty()) config.out_dir = opt.out_dir;
        if (opt.seed_set) config.seed = opt.seed;
        config.validate();
    } catch (const std::exception& e) {
        std::lock_guard lock(io_mutex);
        std::cerr << path << ": " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        if (command == "validate") {
            std::lock_guard lock(io_mutex);
            std::cout << "# " << path << '\n';
            curl::print_resolved(config, std::cout);
            return kExitOk;
        }
        if (command == "solve") {
            if (config.mode != curl::ExperimentConfig::Mode::offline)
                throw curl::ConfigError(0, "solve requires mode = offline");
            curl::run_solve_job(config);
        } else {
            if (config.mode != curl::ExperimentConfig::Mode::online)
                throw curl::ConfigError(0, "online requires mode = online");
            curl::run_online_job(config);
        }
        std::lock_guard lock(io_mutex);
        std::cout << path << ": done -> " << config.out_dir << '\n';
        return kExitOk;
    } catch (const curl::ConfigError& e) {
        std::lock_guard lock(io_mutex);
        std::cerr << path << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::lock_guard lock(io_mutex);
        std::cerr << path << ": " << e.what() << '\n';
        return kExitRuntime;
    }
}

int run_command(const std::string& command, const Options& opt) {
    std::mutex io_mutex;
    std::atomic<int> worst{kExitOk};
    std::atomic<std::size_t> next{0};
    const unsigned workers =
        std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(opt.configs.size())));

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= opt.configs.size()) return;
            const int rc = run_one(command, opt.configs[i], opt, io_mutex);
            int prev = worst.load();
            while (rc > prev && !worst.compare_exchange_weak(prev, rc)) {
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return worst.load();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curl-lab: finite-horizon CURL experiments (offline MD solve and "
                 "online greedy learning on noisy gridworlds)"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", opt.configs, "config file(s)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "override [output] dir");
        sub->add_option("--seed", opt.seed, "override solver seed")
            ->each([&](const std::string&) { opt.seed_set = true; });
        sub->add_option("--jobs", opt.jobs, "worker threads across config files")
            ->check(CLI::PositiveNumber);
    };
    add_common(app.add_subcommand("solve", "run an offline MD-CURL job"));
    add_common(app.add_subcommand("online", "run an online greedy job"));
    add_common(app.add_subcommand("validate", "check a config and echo effective parameters"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    return run_command(app.get_subcommands().front()->get_name(), opt);
}
