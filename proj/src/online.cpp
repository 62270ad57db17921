#include "curl/online.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "curl/flow.hpp"
#include "curl/rng.hpp"
#include "curl/simulate.hpp"
#include "curl/solver.hpp"

namespace curl {

double ExplorationSchedule::alpha(Index t, Index episodes) const {
    switch (kind) {
        case Kind::decaying:
            return std::min(0.4, 1.0 / static_cast<double>(t));
        case Kind::constant_over_horizon:
            return 1.0 / static_cast<double>(episodes);
        case Kind::fixed:
            return fixed_value;
    }
    return fixed_value;
}

void OnlineConfig::validate() const {
    if (episodes < 1) throw ParameterError("OnlineConfig: episodes must be >= 1");
    if (agents_per_episode < 1) throw ParameterError("OnlineConfig: agents must be >= 1");
    if (tau && !(*tau > 0.0)) throw ParameterError("OnlineConfig: tau must be > 0");
    if (comparator_iterations < 1)
        throw ParameterError("OnlineConfig: comparator iterations must be >= 1");
    for (Index t = 1; t <= episodes; ++t) {
        const double a = exploration.alpha(t, episodes);
        if (!(a > 0.0 && a < 0.5))
            throw ParameterError("OnlineConfig: alpha_" + std::to_string(t) + " = " +
                                 std::to_string(a) + " outside (0, 0.5)");
    }
}

Policy explore_mix(const Policy& policy, double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw ParameterError("explore_mix: alpha outside [0, 0.5)");
    const MdpShape& shape = policy.shape();
    Policy mixed(shape);
    const double floor = alpha / static_cast<double>(shape.num_actions);
    auto src = policy.data();
    auto dst = mixed.data();
    for (Index i = 0; i < src.size(); ++i) dst[i] = (1.0 - alpha) * src[i] + floor;
    return mixed;
}

Policy greedy_step(const Policy& policy, double alpha, const CurlObjective& objective,
                   const TransitionKernel& estimate_prev, const TransitionKernel& estimate_next,
                   const InitialDistribution& mu0, double tau) {
    const OccupancyMeasure mu = occupancy_from_policy(policy, estimate_prev, mu0);
    const GradientField grad = objective.gradient(mu);
    const Policy mixed = explore_mix(policy, alpha);
    const QTilde q = regularized_q_backup(grad, estimate_next, mixed, tau);
    return exponential_twist_update(mixed, q, tau);
}

Policy best_stationary_policy(const CurlObjective& objective, const TransitionKernel& kernel,
                              const InitialDistribution& mu0, Index comparator_iterations,
                              std::optional<double> tau) {
    SolverConfig config;
    config.iterations = comparator_iterations;
    config.learning_rate = tau;
    SolveReport report = md_curl_solve(objective, kernel, mu0, config);
    return std::move(report.best_policy);
}

double online_b(const MdpShape& shape, Index episodes, const ExplorationSchedule& schedule) {
    const double n = static_cast<double>(shape.horizon);
    const double num_actions = static_cast<double>(shape.num_actions);
    double acc = n * std::log(num_actions);
    for (Index t = 1; t <= episodes; ++t) {
        const double a = schedule.alpha(t, episodes);
        const double inv_t = 1.0 / static_cast<double>(t);
        acc += 2.0 * (n * a + n * n * inv_t * std::log(num_actions / a) +
                      n * n * (inv_t + a) * (inv_t + a));
    }
    return std::sqrt(acc);
}

double default_online_tau(const MdpShape& shape, const OnlineConfig& config, double big_l) {
    if (!(big_l > 0.0)) throw ParameterError("default_online_tau: L must be > 0");
    const double b = online_b(shape, config.episodes, config.exploration);
    return b / (big_l * std::sqrt(static_cast<double>(config.episodes)));
}

namespace {

/// Average of a revealed objective sequence; the regret comparator minimizes
/// it, which is the same as minimizing the sum.
class MeanObjective final : public CurlObjective {
public:
    explicit MeanObjective(std::vector<std::shared_ptr<const CurlObjective>> parts)
        : parts_(std::move(parts)) {}

    double value(const OccupancyMeasure& mu) const override {
        double acc = 0.0;
        for (const auto& f : parts_) acc += f->value(mu);
        return acc / static_cast<double>(parts_.size());
    }

    GradientField gradient(const OccupancyMeasure& mu) const override {
        GradientField grad = parts_.front()->gradient(mu);
        for (Index i = 1; i < parts_.size(); ++i) {
            const GradientField g = parts_[i]->gradient(mu);
            auto dst = grad.data();
            auto src = g.data();
            for (Index k = 0; k < dst.size(); ++k) dst[k] += src[k];
        }
        const double inv = 1.0 / static_cast<double>(parts_.size());
        for (double& v : grad.data()) v *= inv;
        return grad;
    }

    double lipschitz_l() const override {
        double m = 0.0;
        for (const auto& f : parts_) m = std::max(m, f->lipschitz_l());
        return m;
    }

private:
    std::vector<std::shared_ptr<const CurlObjective>> parts_;
};

KernelEstimate make_estimate(EstimatorMode mode, const NoiseDynamics& dynamics,
                             const TransitionKernel& truth) {
    switch (mode) {
        case EstimatorMode::noise_based: return KernelEstimate::noise_based(dynamics);
        case EstimatorMode::count_based: return KernelEstimate::count_based(dynamics.shape());
        case EstimatorMode::never_learn: return KernelEstimate::never_learn(dynamics);
        case EstimatorMode::known_dynamics: return KernelEstimate::known_dynamics(truth);
    }
    throw ParameterError("run_online: unknown estimator mode");
}

RegretReport run_online_impl(const NoiseDynamics& dynamics, const InitialDistribution& mu0,
                             const ObjectiveSequence& objectives,
                             const CurlObjective* fixed_objective, const OnlineConfig& config) {
    config.validate();
    const MdpShape& shape = dynamics.shape();
    const Index T = config.episodes;
    const TransitionKernel truth = kernel_from_dynamics(dynamics);

    RegretReport report{{}, {}, {}, {}, {}, {}, {}, {}, 0.0, Policy::uniform(shape)};

    // The comparator needs the whole objective sequence; with a fixed
    // objective it is available up front and the diagnostic split can be
    // recorded inline.
    const bool fixed = fixed_objective != nullptr;
    std::optional<OccupancyMeasure> comparator_mu;
    if (fixed) {
        report.tau_used = config.tau ? *config.tau
                                     : default_online_tau(shape, config,
                                                          lipschitz_big_l(*fixed_objective, shape));
        report.comparator_policy = best_stationary_policy(
            *fixed_objective, truth, mu0, config.comparator_iterations, report.tau_used);
        comparator_mu = occupancy_from_policy(report.comparator_policy, truth, mu0);
    }

    KernelEstimate estimate = make_estimate(config.estimator, dynamics, truth);
    const bool track_shift = config.estimator == EstimatorMode::noise_based;

    Policy policy = Policy::uniform(shape);
    std::vector<std::shared_ptr<const CurlObjective>> revealed;
    double tau = report.tau_used;

    for (Index t = 1; t <= T; ++t) {
        report.deployed_policy_min.push_back(policy.min_entry());

        const std::uint64_t episode_seed = SplitMix64::for_stream(config.seed, t).next_u64();
        const TrajectoryBatch batch =
            simulate_trajectories(policy, dynamics, mu0, config.agents_per_episode, episode_seed);
        if (config.batch_hook) config.batch_hook(t, batch);

        const TransitionKernel estimate_prev = estimate.kernel();
        switch (config.estimator) {
            case EstimatorMode::noise_based: update_noise_estimate(estimate, batch, t); break;
            case EstimatorMode::count_based: update_count_estimate(estimate, batch); break;
            default: break; // frozen modes
        }
        if (config.episode_hook) config.episode_hook(t, estimate);

        // The episode's objective is revealed only after the trajectories.
        std::shared_ptr<const CurlObjective> revealed_objective;
        const CurlObjective* objective = fixed_objective;
        if (!fixed) {
            revealed_objective = objectives(t);
            revealed.push_back(revealed_objective);
            objective = revealed_objective.get();
            tau = config.tau ? *config.tau
                             : default_online_tau(shape, config,
                                                  lipschitz_big_l(*revealed.front(), shape));
            report.tau_used = tau;
        }

        const OccupancyMeasure mu_true = occupancy_from_policy(policy, truth, mu0);
        report.realized_loss.push_back(objective->value(mu_true));

        if (fixed) {
            report.comparator_loss.push_back(fixed_objective->value(*comparator_mu));
            if (config.diagnostics) {
                const OccupancyMeasure mu_est_prev =
                    occupancy_from_policy(policy, estimate_prev, mu0);
                const OccupancyMeasure mu_star_next =
                    occupancy_from_policy(report.comparator_policy, estimate.kernel(), mu0);
                const double f_pi_prev = objective->value(mu_est_prev);
                const double f_star_next = objective->value(mu_star_next);
                report.r_mdp_pi.push_back(report.realized_loss.back() - f_pi_prev);
                report.r_policy.push_back(f_pi_prev - f_star_next);
                report.r_mdp_star.push_back(f_star_next - report.comparator_loss.back());
            }
        }

        if (track_shift) {
            const OccupancyMeasure before = occupancy_from_policy(policy, estimate_prev, mu0);
            const OccupancyMeasure after = occupancy_from_policy(policy, estimate.kernel(), mu0);
            report.model_shift.push_back(norm_inf_1(after, before));
        }

        const double alpha = config.exploration.alpha(t, T);
        policy = greedy_step(policy, alpha, *objective, estimate_prev, estimate.kernel(), mu0, tau);
    }

    if (!fixed) {
        const MeanObjective mean(revealed);
        report.comparator_policy =
            best_stationary_policy(mean, truth, mu0, config.comparator_iterations, tau);
        const OccupancyMeasure mu_star = occupancy_from_policy(report.comparator_policy, truth, mu0);
        for (Index t = 1; t <= T; ++t)
            report.comparator_loss.push_back(revealed[t - 1]->value(mu_star));
    }

    double acc = 0.0;
    for (Index t = 0; t < T; ++t) {
        acc += report.realized_loss[t] - report.comparator_loss[t];
        report.cum_regret.push_back(acc);
    }
    return report;
}

} // namespace

RegretReport run_online(const NoiseDynamics& dynamics, const InitialDistribution& mu0,
                        const CurlObjective& objective, const OnlineConfig& config) {
    return run_online_impl(dynamics, mu0, nullptr, &objective, config);
}

RegretReport run_online(const NoiseDynamics& dynamics, const InitialDistribution& mu0,
                        const ObjectiveSequence& objectives, const OnlineConfig& config) {
    return run_online_impl(dynamics, mu0, objectives, nullptr, config);
}

} // namespace curl
