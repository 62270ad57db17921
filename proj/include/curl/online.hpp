#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "curl/estimator.hpp"
#include "curl/gridworld.hpp"
#include "curl/objectives.hpp"
#include "curl/types.hpp"

namespace curl {

/// Exploration mixing coefficients alpha_t, constrained to (0, 1/2).
struct ExplorationSchedule {
    enum class Kind { decaying, constant_over_horizon, fixed };
    Kind kind{Kind::decaying};
    double fixed_value{0.0};

    static ExplorationSchedule decaying() { return {Kind::decaying, 0.0}; }
    static ExplorationSchedule constant_over_horizon() { return {Kind::constant_over_horizon, 0.0}; }
    static ExplorationSchedule fixed(double alpha) { return {Kind::fixed, alpha}; }

    /// alpha_t for 1-based episode t of a T-episode run.
    double alpha(Index t, Index episodes) const;
};

struct OnlineConfig {
    Index episodes{};           // T
    Index agents_per_episode{}; // M
    /// Fixed learning rate; when absent default_online_tau is used.
    std::optional<double> tau{};
    ExplorationSchedule exploration{};
    EstimatorMode estimator{EstimatorMode::noise_based};
    /// Iterations of the offline solve that produces the regret comparator.
    Index comparator_iterations{1000};
    std::uint64_t seed{0};
    /// Record the three-way regret split (costs one extra flow per episode).
    bool diagnostics{true};
    /// Invoked after each episode's estimator update (estimator snapshots).
    std::function<void(Index episode, const KernelEstimate&)> episode_hook{};
    /// Invoked with each episode's raw trajectories (trajectory logging).
    std::function<void(Index episode, const TrajectoryBatch&)> batch_hook{};

    void validate() const;
};

struct RegretReport {
    /// Per episode t = 1..T, all losses evaluated by exact occupancy flows.
    std::vector<double> realized_loss;   // F^t(mu^{pi^t, p})
    std::vector<double> comparator_loss; // F^t(mu^{pi*, p})
    std::vector<double> cum_regret;      // running sum of the difference
    // Diagnostic split (empty when not recorded); the three terms sum to the
    // per-episode regret increment exactly.
    std::vector<double> r_mdp_pi;
    std::vector<double> r_policy;
    std::vector<double> r_mdp_star;
    /// ||mu^{pi^t, p-hat^{t+1}} - mu^{pi^t, p-hat^t}||_{inf,1} per episode
    /// (noise-based runs; the 2N/t bound applies to it).
    std::vector<double> model_shift;
    /// Smallest entry of the policy deployed at episode t.
    std::vector<double> deployed_policy_min;
    double tau_used{};
    Policy comparator_policy;

    double total_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
};

/// (1 - alpha) * policy + alpha / |A|; every entry ends up >= alpha/|A|.
Policy explore_mix(const Policy& policy, double alpha);

/// One mirror-descent step against the estimated model: the current occupancy
/// is computed under the previous estimate, the mixed policy anchors both the
/// backward recursion and the twist, and the refreshed estimate drives the
/// recursion.
Policy greedy_step(const Policy& policy, double alpha, const CurlObjective& objective,
                   const TransitionKernel& estimate_prev, const TransitionKernel& estimate_next,
                   const InitialDistribution& mu0, double tau);

/// Regret comparator: the best iterate of an offline solve under the true
/// kernel. `tau` overrides the solve's learning rate (online runs pass their
/// own, so the comparator is at least as converged as the learner).
Policy best_stationary_policy(const CurlObjective& objective, const TransitionKernel& kernel,
                              const InitialDistribution& mu0, Index comparator_iterations,
                              std::optional<double> tau = {});

/// The b constant of the online rate: direct summation of
///   sum_t 2 [N a_t + (N^2/t) log(|A|/a_t) + N^2 (1/t + a_t)^2] + N log|A|,
/// square-rooted.
double online_b(const MdpShape& shape, Index episodes, const ExplorationSchedule& schedule);

/// b / (L sqrt(T)).
double default_online_tau(const MdpShape& shape, const OnlineConfig& config, double big_l);

/// Full online run under the true dynamics with a fixed objective: simulate,
/// estimate, reveal, step — losses and regret all evaluated by exact flows.
RegretReport run_online(const NoiseDynamics& dynamics, const InitialDistribution& mu0,
                        const CurlObjective& objective, const OnlineConfig& config);

/// Objective revealed only at the end of each episode. The comparator is
/// solved post hoc on the averaged sequence; the diagnostic split is not
/// recorded in this mode.
using ObjectiveSequence = std::function<std::shared_ptr<const CurlObjective>(Index episode)>;
RegretReport run_online(const NoiseDynamics& dynamics, const InitialDistribution& mu0,
                        const ObjectiveSequence& objectives, const OnlineConfig& config);

} // namespace curl
