#include "curl/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "curl/flow.hpp"
#include "curl/io.hpp"
#include "curl/solver.hpp"

namespace curl {

namespace {

std::shared_ptr<const CurlObjective> build_objective(const ExperimentConfig& config,
                                                     const MdpShape& shape) {
    switch (config.objective) {
        case ExperimentConfig::ObjectiveKind::entropy:
            return entropy_objective(shape);
        case ExperimentConfig::ObjectiveKind::multi:
            return multi_objective(shape, TargetSet{config.targets});
        case ExperimentConfig::ObjectiveKind::linear: {
            StepTable reward = io::read_step_table(config.reward_file);
            if (!(reward.shape() == shape))
                throw ConfigError(0, "reward_file shape does not match the environment");
            return linear_objective(std::move(reward));
        }
    }
    throw ConfigError(0, "unknown objective kind");
}

OnlineConfig to_online_config(const ExperimentConfig& config, double tau) {
    OnlineConfig online;
    online.episodes = config.episodes;
    online.agents_per_episode = config.agents;
    online.tau = tau;
    online.exploration = config.exploration;
    online.estimator = config.estimator;
    online.comparator_iterations = config.comparator_iterations;
    online.seed = config.seed;
    return online;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

void write_regret_csv(const std::filesystem::path& path, const RegretReport& report) {
    auto out = open_out(path);
    const bool split = !report.r_mdp_pi.empty();
    out << "t,realized_loss,comparator_loss,cum_regret";
    if (split) out << ",r_mdp_pi,r_policy,r_mdp_star";
    out << '\n';
    for (Index t = 0; t < report.realized_loss.size(); ++t) {
        out << (t + 1) << ',' << io::format_value(report.realized_loss[t]) << ','
            << io::format_value(report.comparator_loss[t]) << ','
            << io::format_value(report.cum_regret[t]);
        if (split)
            out << ',' << io::format_value(report.r_mdp_pi[t]) << ','
                << io::format_value(report.r_policy[t]) << ','
                << io::format_value(report.r_mdp_star[t]);
        out << '\n';
    }
}

} // namespace

ResolvedExperiment resolve_experiment(const ExperimentConfig& config) {
    config.validate();
    NoiseDynamics dynamics =
        config.noise_probs
            ? four_room_gridworld(config.grid_side, config.horizon, *config.noise_probs)
            : four_room_gridworld(config.grid_side, config.horizon, config.noise_up_prob);
    const MdpShape shape = dynamics.shape();
    auto objective = build_objective(config, shape);
    const double big_l = lipschitz_big_l(*objective, shape);

    double tau = 0.0;
    double b = 0.0;
    if (config.mode == ExperimentConfig::Mode::offline) {
        tau = config.tau ? *config.tau : default_learning_rate(shape, config.iterations, big_l);
    } else {
        b = online_b(shape, config.episodes, config.exploration);
        tau = config.tau ? *config.tau : b / (big_l * std::sqrt(static_cast<double>(config.episodes)));
    }
    return ResolvedExperiment{shape, std::move(dynamics),
                              gridworld_initial_distribution(config.grid_side),
                              std::move(objective), tau, b};
}

void run_solve_job(const ExperimentConfig& config) {
    if (config.mode != ExperimentConfig::Mode::offline)
        throw ConfigError(0, "solve requires mode = offline");
    ResolvedExperiment exp = resolve_experiment(config);
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);

    SolverConfig solver;
    solver.iterations = config.iterations;
    solver.learning_rate = exp.tau;
    const TransitionKernel kernel = kernel_from_dynamics(exp.dynamics);
    const SolveReport report = md_curl_solve(*exp.objective, kernel, exp.mu0, solver);

    {
        auto out = open_out(dir / "objective.csv");
        out << "k,objective\n";
        for (Index k = 0; k < report.objective_values.size(); ++k)
            out << k << ',' << io::format_value(report.objective_values[k]) << '\n';
    }
    io::write_policy((dir / "policy_final.txt").string(), report.final_policy);
    const OccupancyMeasure final_mu =
        occupancy_from_policy(report.final_policy, kernel, exp.mu0);
    io::write_occupancy((dir / "occupancy_final.txt").string(), final_mu);
    for (Index n : config.rho_steps) {
        char name[32];
        std::snprintf(name, sizeof(name), "rho_n%02zu.txt", n);
        io::write_rho_grid((dir / name).string(), final_mu, n, config.grid_side);
    }
}

void run_online_job(const ExperimentConfig& config) {
    if (config.mode != ExperimentConfig::Mode::online)
        throw ConfigError(0, "online requires mode = online");
    ResolvedExperiment exp = resolve_experiment(config);
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);

    std::vector<EstimatorMode> variants =
        config.variants.empty() ? std::vector<EstimatorMode>{config.estimator} : config.variants;

    std::vector<std::pair<std::string, RegretReport>> results;
    for (EstimatorMode mode : variants) {
        OnlineConfig online = to_online_config(config, exp.tau);
        online.estimator = mode;
        const std::string name = to_string(mode);
        if (config.snapshot_every > 0) {
            online.episode_hook = [&](Index t, const KernelEstimate& est) {
                if (t % config.snapshot_every != 0) return;
                char fname[64];
                std::snprintf(fname, sizeof(fname), "estimate_%s_t%04zu.txt", name.c_str(), t);
                io::write_kernel((dir / fname).string(), est.kernel());
            };
        }
        if (config.dump_trajectories > 0) {
            online.batch_hook = [&](Index t, const TrajectoryBatch& batch) {
                if (t > config.dump_trajectories) return;
                char fname[64];
                std::snprintf(fname, sizeof(fname), "trajectories_%s_t%04zu.txt", name.c_str(), t);
                io::write_trajectories((dir / fname).string(), batch);
            };
        }
        RegretReport report = run_online(exp.dynamics, exp.mu0, *exp.objective, online);
        write_regret_csv(dir / ("regret_" + name + ".csv"), report);
        results.emplace_back(name, std::move(report));
    }

    auto out = open_out(dir / "comparison.csv");
    out << "t";
    for (const auto& [name, report] : results)
        out << ",realized_" << name << ",cum_regret_" << name;
    out << '\n';
    for (Index t = 0; t < config.episodes; ++t) {
        out << (t + 1);
        for (const auto& [name, report] : results)
            out << ',' << io::format_value(report.realized_loss[t]) << ','
                << io::format_value(report.cum_regret[t]);
        out << '\n';
    }
}

void print_resolved(const ExperimentConfig& config, std::ostream& out) {
    ResolvedExperiment exp = resolve_experiment(config);
    out << "mode = " << to_string(config.mode) << '\n';
    out << "grid_side = " << config.grid_side << '\n';
    out << "horizon = " << config.horizon << '\n';
    if (config.noise_probs) {
        out << "noise_probs =";
        for (double p : *config.noise_probs) out << ' ' << p;
        out << '\n';
    } else {
        out << "noise_up_prob = " << config.noise_up_prob << '\n';
    }
    out << "objective = " << to_string(config.objective) << '\n';
    if (!config.targets.empty()) {
        out << "targets =";
        for (Index t : config.targets) out << ' ' << t;
        out << '\n';
    }
    out << "lipschitz_l = " << exp.objective->lipschitz_l() << '\n';
    if (config.mode == ExperimentConfig::Mode::offline) {
        out << "iterations = " << config.iterations << '\n';
    } else {
        out << "episodes = " << config.episodes << '\n';
        out << "agents = " << config.agents << '\n';
        out << "estimator = " << to_string(config.estimator) << '\n';
        out << "comparator_iterations = " << config.comparator_iterations << '\n';
        out << "b = " << io::format_value(exp.b) << '\n';
    }
    out << "tau = " << io::format_value(exp.tau) << (config.tau ? "" : " (auto)") << '\n';
    out << "seed = " << config.seed << '\n';
    out << "out_dir = " << config.out_dir << '\n';
}

} // namespace curl
